"""Bundled data: Nikulin's 75 triples and known (b2, b3) from the literature."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

__all__ = [
    "DataError",
    "NikulinCatalog",
    "LiteratureEntry",
    "LiteratureCatalog",
    "load_nikulin",
    "load_literature",
    "default_nikulin_path",
    "default_literature_path",
    "NIKULIN_COUNT",
]

NIKULIN_COUNT = 75


class DataError(ValueError):
    """A data file is missing or malformed."""


def _data_file(name: str) -> Path:
    return Path(str(resources.files("k3g2").joinpath("data", name)))


def default_nikulin_path() -> Path:
    return _data_file("nikulin75.txt")


def default_literature_path() -> Path:
    return _data_file("literature.json")


@dataclass(frozen=True)
class NikulinCatalog:
    triples: frozenset[tuple[int, int, int]]
    path: str = ""

    def problems(self) -> list[str]:
        """Violations of the count and bounds; empty when the file is sound."""
        out = []
        if len(self.triples) != NIKULIN_COUNT:
            out.append(f"expected {NIKULIN_COUNT} triples, found {len(self.triples)}")
        for r, a, d in sorted(self.triples):
            if not (1 <= r <= 20 and 0 <= a <= 11 and r - a >= 0 and d in (0, 1)):
                out.append(f"triple ({r},{a},{d}) violates 1<=r<=20, 0<=a<=11, r-a>=0")
        return out

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((r, a) for r, a, _ in self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(sorted(self.triples))


def load_nikulin(path: str | Path | None = None) -> NikulinCatalog:
    path = Path(path) if path is not None else default_nikulin_path()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read Nikulin data file {path}: {exc.strerror}") from None
    triples = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise DataError(f"{path}:{lineno}: expected 'r a delta', got {line!r}")
        try:
            triples.add(tuple(int(p) for p in parts))
        except ValueError:
            raise DataError(f"{path}:{lineno}: non-integer entry in {line!r}") from None
    return NikulinCatalog(frozenset(triples), str(path))


@dataclass(frozen=True, order=True)
class LiteratureEntry:
    case: str
    b2: int
    b3: int
    source: str


@dataclass(frozen=True)
class LiteratureCatalog:
    entries: tuple[LiteratureEntry, ...]

    def pairs(self, case: str) -> frozenset[tuple[int, int]]:
        return frozenset((e.b2, e.b3) for e in self.entries if e.case == case)

    def sources(self, case: str, b2: int, b3: int) -> list[str]:
        return sorted(e.source for e in self.entries if (e.case, e.b2, e.b3) == (case, b2, b3))


def load_literature(path: str | Path | None = None) -> LiteratureCatalog:
    path = Path(path) if path is not None else default_literature_path()
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        entries = tuple(
            sorted(LiteratureEntry(str(e["case"]), int(e["b2"]), int(e["b3"]), str(e["source"])) for e in doc["entries"])
        )
    except OSError as exc:
        raise DataError(f"cannot read literature file {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise DataError(f"malformed literature file {path}: {exc}") from None
    return LiteratureCatalog(entries)
