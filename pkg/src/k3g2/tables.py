"""Betti-number tables for the four torus actions, and literature diffs.

Sources of involution data:

* simple: pairs of commuting simple involutions (``pairs.classify_pairs``)
  whose product is again hyperbolic;
* nikulin: single involutions from the bundled Nikulin list, used where the
  twisted-connected-sum matching criterion supplies the partner.

Tables keyed on sums (r_i + r_j, a_i + a_j) evaluate the closed formula on
the sum, as the formulas only depend on it; every row records whether some
source actually realises it with nonempty fixed loci.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .catalog import LiteratureCatalog, NikulinCatalog
from .g2 import InvariantInput, admissible, closed_form, outcome
from .involutions import rho_prime_matrix
from .pairs import (
    InvolutionPair,
    classify_pairs,
    enumerate_prime_pairs,
    invariant_tuple,
    kovalev_lee_admissible,
    pair_category,
    product_is_hyperbolic,
    simple_triples,
)
from .torus import ConstructionCase, builtin_action, fixed_set

__all__ = [
    "TableArtifact",
    "hyperbolic_pairs",
    "case1_sources",
    "case1_values",
    "case1_unmatched_simple",
    "case2_rows",
    "case3_values",
    "d4_sources",
    "d4_values",
    "betti_table",
    "literature_diff",
    "sum_sets",
    "pairs_table",
    "prime_pairs_table",
    "tuples_table",
    "simple_triples_table",
    "fixed_sets_table",
]


@dataclass(frozen=True)
class TableArtifact:
    """Named table with sorted rows of ints and strings."""

    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"{self.name}: row {row} does not match columns {self.columns}")
        object.__setattr__(self, "rows", tuple(sorted(tuple(r) for r in self.rows)))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TableArtifact":
        return cls(d["name"], tuple(d["columns"]), tuple(tuple(r) for r in d["rows"]), tuple(d.get("notes", ())))


def hyperbolic_pairs(threads: int = 1) -> list[InvolutionPair]:
    return [p for p in classify_pairs(threads) if product_is_hyperbolic(p)]


def _restriction_ok(r: int, a: int) -> bool:
    # matching criterion with the smallest partner block, r1 = 1, r1 + a1 = 2
    return kovalev_lee_admissible(1, 1, r, a)


# ------------------------------------------------------------------ case 1


def case1_sources(nikulin: NikulinCatalog | None, threads: int = 1) -> dict[tuple[int, int, int], set[str]]:
    """Invariants (r2, a2, d2) feeding case 1, with their sources."""
    out: dict[tuple[int, int, int], set[str]] = defaultdict(set)
    for p in hyperbolic_pairs(threads):
        out[p.inv2.triple].add("simple")
    if nikulin is not None:
        for t in nikulin:
            if _restriction_ok(t[0], t[1]):
                out[t].add("nikulin")
    return dict(out)


def case1_unmatched_simple(threads: int = 1) -> set[tuple[int, int]]:
    """(r2, a2) of simple involutions that fail the matching restriction."""
    return {t[:2] for t in case1_sources(None, threads) if not _restriction_ok(t[0], t[1])}


def case1_values(nikulin: NikulinCatalog | None, threads: int = 1) -> set[tuple[int, int]]:
    vals = set()
    for t in case1_sources(nikulin, threads):
        inp = InvariantInput.from_triples(None, t)
        if admissible(ConstructionCase.CASE1, inp)[0]:
            vals.add(outcome(ConstructionCase.CASE1, inp).betti)
    return vals


def _grouped(vals: set[tuple[int, int]]) -> tuple[tuple, ...]:
    by_b2: dict[int, list[int]] = defaultdict(list)
    for b2, b3 in sorted(vals):
        by_b2[b2].append(b3)
    return tuple((b2, " ".join(map(str, b3s)), len(b3s)) for b2, b3s in by_b2.items())


# ------------------------------------------------------------------ case 2


def sum_sets(threads: int = 1) -> tuple[set, set]:
    """{(r1+r2, a1+a2)} and {(r2+r3, a2+a3)} over the simple pairs."""
    ps = hyperbolic_pairs(threads)
    s12 = {(p.inv1.r + p.inv2.r, p.inv1.a + p.inv2.a) for p in ps}
    s23 = {(p.inv2.r + p.inv3.r, p.inv2.a + p.inv3.a) for p in ps}
    return s12, s23


def _realised(case: ConstructionCase, inp: InvariantInput) -> bool:
    if not admissible(case, inp)[0]:
        return False
    return not outcome(case, inp).barely


def case2_rows(threads: int = 1) -> tuple[list[tuple], dict]:
    """Rows (b2, b3, sum_r, sum_a, realised) for the sums not covered by the
    matching criterion, plus census counts."""
    by_sum: dict[tuple[int, int], list[InvolutionPair]] = defaultdict(list)
    for p in hyperbolic_pairs(threads):
        by_sum[(p.inv1.r + p.inv2.r, p.inv1.a + p.inv2.a)].append(p)
    rows = []
    matched = 0
    for (R, A), ps in by_sum.items():
        if kovalev_lee_admissible(R, A, 0, 0):
            matched += 1
            continue
        b2, b3 = 4 + R - A, 115 - R - 3 * A
        real = any(
            _realised(ConstructionCase.CASE2, InvariantInput.from_triples(p.inv1.triple, p.inv2.triple)) for p in ps
        )
        rows.append((b2, b3, R, A, "yes" if real else "no"))
    return sorted(rows), {"sums": len(by_sum), "matched": matched, "remaining": len(rows)}


# ------------------------------------------------------------------ case 3


def case3_values(threads: int = 1) -> dict[str, set]:
    """Case-3 b3 values.

    ``tuples``: over enumerated tuples with (r1, a1) = (10, 10), rho^1 taken
    as the empty-locus triple (10, 10, 0) since tuples carry no delta.
    ``barely``: the barely branch, restricted to pairs meeting trivially.
    ``pairs``: the G2 branch on pairs whose rho^1 really is (10, 10, 0) and
    meets rho^2 trivially (diagnostic).
    """
    out: dict[str, set] = {"tuples": set(), "barely_tuples": set(), "barely": set(), "pairs": set()}
    for p in hyperbolic_pairs(threads):
        if (p.inv1.r, p.inv1.a) != (10, 10):
            continue
        inp = InvariantInput.from_triples((10, 10, 0), p.inv2.triple, p.inv3.triple, str(invariant_tuple(p)))
        if not admissible(ConstructionCase.CASE3, inp)[0]:
            continue
        o = outcome(ConstructionCase.CASE3, inp)
        trivial = p.common_fixed_rank == 0
        if o.barely:
            out["barely_tuples"].add(o.betti)
            if trivial:
                out["barely"].add(o.betti)
        else:
            out["tuples"].add(o.betti)
            if trivial and p.inv1.delta == 0:
                out["pairs"].add(o.betti)
    return out


# --------------------------------------------------------------------- D4


def d4_sources(nikulin: NikulinCatalog | None, threads: int = 1) -> dict[tuple, set[str]]:
    """Pairs of triples (rho^2, rho^1 rho^2) feeding the D4 action."""
    out: dict[tuple, set[str]] = defaultdict(set)
    for p in hyperbolic_pairs(threads):
        out[(p.inv2.triple, p.inv3.triple)].add("simple")
    if nikulin is not None:
        for s in nikulin:
            for t in nikulin:
                if kovalev_lee_admissible(s[0], s[1], t[0], t[1]):
                    out[(s, t)].add("nikulin")
    return dict(out)


def d4_values(nikulin: NikulinCatalog | None, threads: int = 1) -> dict[tuple[int, int], bool]:
    """(b2, b3) -> whether some source realises it with both loci nonempty."""
    out: dict[tuple[int, int], bool] = {}
    for s, t in d4_sources(nikulin, threads):
        inp = InvariantInput.from_triples(None, s, t)
        val = closed_form(ConstructionCase.D4, inp)
        out[val] = out.get(val, False) or _realised(ConstructionCase.D4, inp)
    return out


# --------------------------------------------------------------- assembly


def betti_table(case: ConstructionCase | str, nikulin: NikulinCatalog | None, threads: int = 1) -> TableArtifact:
    """The (b2, b3) table of a case; ``nikulin=None`` means simple pairs only."""
    case = ConstructionCase.parse(case)
    mode = "simple" if nikulin is None else "simple+nikulin"
    if case is ConstructionCase.CASE1:
        return TableArtifact("case1", ("b2", "b3", "count"), _grouped(case1_values(nikulin, threads)), (f"sources: {mode}",))
    if case is ConstructionCase.CASE2:
        rows, counts = case2_rows(threads)
        notes = (f"sums {counts['sums']}, matched {counts['matched']}, remaining {counts['remaining']}",)
        return TableArtifact("case2", ("b2", "b3", "sum_r", "sum_a", "realised"), tuple(rows), notes)
    if case is ConstructionCase.CASE3:
        v = case3_values(threads)
        rows = [(b2, b3, "g2") for b2, b3 in v["tuples"]] + [(b2, b3, "barely") for b2, b3 in v["barely"]]
        return TableArtifact("case3", ("b2", "b3", "branch"), tuple(rows))
    vals = d4_values(nikulin, threads)
    rows = tuple((b2, b3, "yes" if r else "no") for (b2, b3), r in vals.items())
    return TableArtifact("d4", ("b2", "b3", "realised"), rows, (f"sources: {mode}", f"{len(rows)} pairs"))


def literature_diff(table: TableArtifact, catalog: LiteratureCatalog, case: str) -> TableArtifact:
    """Rows (b2, b3) of ``table`` not found in the literature catalog."""
    known = catalog.pairs(case)
    produced = {(r[0], r[1]) for r in table.rows}
    remaining = sorted(produced - known)
    return TableArtifact(
        f"{table.name}-remaining",
        ("b2", "b3"),
        tuple(remaining),
        (f"produced {len(produced)}, known {len(produced & known)}, remaining {len(remaining)}",),
    )


# ------------------------------------------------------------ censuses


def _matrix_cell(m) -> str:
    return "/".join(" ".join(str(x) for x in row) for row in m.tolist())


def pairs_table(threads: int = 1) -> TableArtifact:
    rows = []
    for i, p in enumerate(classify_pairs(threads), start=1):
        rows.append(
            (i, p.rho1.label, p.rho2.label, p.category,
             str(p.inv1), str(p.inv2), str(p.inv3),
             p.common_fixed_rank, "yes" if product_is_hyperbolic(p) else "no",
             _matrix_cell(rho_prime_matrix(p.rho1.prime)), _matrix_cell(rho_prime_matrix(p.rho2.prime)))
        )
    cols = ("index", "rho1", "rho2", "category", "inv1", "inv2", "inv3",
            "common_fixed_rank", "hyperbolic_product", "rho1_on_3H", "rho2_on_3H")
    return TableArtifact("pairs", cols, tuple(rows), (f"{len(rows)} pairs",))


def prime_pairs_table() -> TableArtifact:
    counts: dict[str, int] = defaultdict(int)
    rows = []
    for s, t in enumerate_prime_pairs():
        cat = pair_category((s, t))
        counts[cat] += 1
        rows.append((s.label, t.label, cat))
    summary = " + ".join(f"{counts[c]}" for c in sorted(counts))
    return TableArtifact("prime-pairs", ("rho1", "rho2", "category"), tuple(rows),
                         (f"{summary} = {len(rows)} classes",))


def tuples_table(threads: int = 1) -> TableArtifact:
    counts: dict[tuple, int] = defaultdict(int)
    for p in hyperbolic_pairs(threads):
        counts[invariant_tuple(p).key] += 1
    rows = tuple(k + (n,) for k, n in counts.items())
    return TableArtifact("tuples", ("r1", "a1", "r2", "a2", "r3", "a3", "pairs"), rows,
                         (f"{len(rows)} distinct tuples",))


def simple_triples_table() -> TableArtifact:
    rows = tuple(sorted(simple_triples()))
    return TableArtifact("simple-triples", ("r", "a", "delta"), rows, (f"{len(rows)} triples",))


def fixed_sets_table(case: ConstructionCase | str) -> TableArtifact:
    act = builtin_action(case)
    rows = []
    for e in act.elements:
        if not e.rho:
            continue
        fs = fixed_set(e.map)
        if fs.empty:
            rows.append((e.label, str(e.map), "empty", "", ""))
        for c in fs.components:
            rows.append((e.label, str(e.map), c.dimension,
                         " ".join(str(x) for x in c.base_point),
                         "; ".join(" ".join(map(str, d)) for d in c.directions)))
    return TableArtifact(f"fixed-sets-{act.case.label}", ("element", "map", "dimension", "base_point", "directions"),
                         tuple(rows), (f"group order {act.group.order}",))
