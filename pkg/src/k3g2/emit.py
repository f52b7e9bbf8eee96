"""CSV, JSON and Markdown rendering of table artifacts."""

from __future__ import annotations

import csv
import io
import json

from .tables import TableArtifact

__all__ = ["FORMATS", "render", "render_many", "parse_json"]

FORMATS = ("csv", "json", "md")


def _csv(t: TableArtifact) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(t.columns)
    w.writerows(t.rows)
    return buf.getvalue()


def _md_cell(x) -> str:
    return str(x).replace("|", "\\|")


def _md(t: TableArtifact) -> str:
    lines = [f"### {t.name}", ""]
    lines.append("| " + " | ".join(t.columns) + " |")
    lines.append("|" + "|".join("---" for _ in t.columns) + "|")
    for row in t.rows:
        lines.append("| " + " | ".join(_md_cell(x) for x in row) + " |")
    if t.notes:
        lines.append("")
        lines += [f"_{n}_" for n in t.notes]
    return "\n".join(lines) + "\n"


def render(t: TableArtifact, fmt: str) -> str:
    if fmt == "csv":
        return _csv(t)
    if fmt == "json":
        return json.dumps(t.to_dict(), sort_keys=True, ensure_ascii=False, indent=1) + "\n"
    if fmt == "md":
        return _md(t)
    raise ValueError(f"unknown format {fmt!r}")


def render_many(tables: list[TableArtifact], fmt: str) -> str:
    if fmt == "json":
        doc = {"tables": [t.to_dict() for t in tables]}
        return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + "\n"
    return "\n".join(render(t, fmt) for t in tables)


def parse_json(text: str) -> list[TableArtifact]:
    doc = json.loads(text)
    if "tables" in doc:
        return [TableArtifact.from_dict(d) for d in doc["tables"]]
    return [TableArtifact.from_dict(doc)]
