"""Self-verification: every published count and table, checked against the
computed ones.

Each check returns a ``CriterionResult``; nothing is relaxed to make a check
pass, the detail string says what differs.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

from . import kernels
from .catalog import LiteratureCatalog, NikulinCatalog
from .g2 import InvariantInput, admissible, orbifold_betti, outcome
from .involutions import (
    K3,
    THREE_H,
    TWO_MINUS_E8,
    RhoDoublePrimeSpec,
    RhoPrimeSpec,
    delta_brute_force,
    delta_from_generators,
    fixed_sublattice_of,
    invariants_of_matrix,
    rho_double_prime_matrix,
    rho_prime_matrix,
)
from .lattice import IntMatrix, smith_normal_form
from .pairs import (
    classify_pairs,
    double_prime_tuples,
    enumerate_double_prime_pairs,
    enumerate_prime_pairs,
    invariant_tuples,
    pair_category,
    prime_tuples,
    simple_triples,
)
from .tables import (
    betti_table,
    case1_sources,
    case1_unmatched_simple,
    case1_values,
    case2_rows,
    case3_values,
    d4_values,
    literature_diff,
    sum_sets,
    TableArtifact,
)
from .torus import ConstructionCase, builtin_action, fixed_set, grid_fixed_set

__all__ = ["CriterionResult", "published", "run_criteria", "report_table", "EXTERNAL", "SKIP_EXTERNAL_SET"]

EXTERNAL = frozenset({7, 10})           # need the Nikulin data file
SKIP_EXTERNAL_SET = (1, 2, 3, 4, 5, 6, 8, 9)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    status: str          # "pass", "fail" or "skipped"
    detail: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@functools.lru_cache(maxsize=1)
def published() -> dict:
    text = resources.files("k3g2").joinpath("data", "published_tables.json").read_text(encoding="utf-8")
    return json.loads(text)


def _diff(got: set, want: set) -> str:
    missing, extra = sorted(want - got), sorted(got - want)
    return f"missing {missing}, extra {extra}"


# ------------------------------------------------------------------ 1..3


def check_invariant_tables(threads: int = 1) -> tuple[bool, str]:
    want_prime = [
        (RhoPrimeSpec.diagonal(1, 2, 2), (2, 0, 0)),
        (RhoPrimeSpec.diagonal(1, 2, 4), (3, 1, 1)),
        (RhoPrimeSpec.diagonal(1, 4, 4), (4, 2, 1)),
        (RhoPrimeSpec.diagonal(3, 2, 2), (1, 1, 1)),
        (RhoPrimeSpec.diagonal(3, 2, 4), (2, 2, 1)),
        (RhoPrimeSpec.diagonal(3, 4, 4), (3, 3, 1)),
        (RhoPrimeSpec.swap((1, 2), 1, 2), (2, 2, 0)),
        (RhoPrimeSpec.swap((1, 2), 1, 4), (3, 3, 1)),
    ]
    want_dprime = [(1, (16, 0, 0)), (2, (8, 0, 0)), (4, (0, 0, 0)), (5, (8, 8, 0))]
    bad = []
    for spec, want in want_prime:
        got = invariants_of_matrix(rho_prime_matrix(spec), THREE_H).triple
        if got != want:
            bad.append(f"{spec.label}: {got} != {want}")
    for j, want in want_dprime:
        got = invariants_of_matrix(rho_double_prime_matrix(RhoDoublePrimeSpec(j)), TWO_MINUS_E8).triple
        if got != want:
            bad.append(f"rho''_{j}: {got} != {want}")
    return not bad, "; ".join(bad) or "8 rho' and 4 rho'' types match"


def check_census(threads: int = 1) -> tuple[bool, str]:
    ref = published()
    counts: dict[str, int] = {}
    for pair in enumerate_prime_pairs():
        cat = pair_category(pair)
        counts[cat] = counts.get(cat, 0) + 1
    sub = (counts.get("diagonal/diagonal", 0), counts.get("swap/diagonal", 0),
           counts.get("diagonal/swap", 0), counts.get("swap/swap", 0))
    dpp = {(s.index, t.index) for s, t in enumerate_double_prime_pairs()}
    n_pairs = len(classify_pairs(threads))
    pt, dt = prime_tuples(), double_prime_tuples()
    tuples = {t.key for t in invariant_tuples(threads)}
    sums = {tuple(a + b for a, b in zip(p, d)) for p in pt for d in dt}
    checks = [
        (sub == (27, 8, 8, 16), f"rho' classes {'+'.join(map(str, sub))} = {sum(sub)}"),
        (dpp == {tuple(x) for x in ref["double_prime_pairs"]}, f"{len(dpp)} rho'' classes"),
        (n_pairs == 531, f"{n_pairs} pairs"),
        (pt == {tuple(x) for x in ref["prime_tuples"]}, f"{len(pt)} rho' tuples"),
        (dt == {tuple(x) for x in ref["double_prime_tuples"]}, f"{len(dt)} rho'' tuples"),
        (len(tuples) == 342 and tuples == sums, f"{len(tuples)} invariant tuples"),
    ]
    return all(ok for ok, _ in checks), ", ".join(msg + ("" if ok else " (mismatch)") for ok, msg in checks)


def check_simple_triples(threads: int = 1) -> tuple[bool, str]:
    got = simple_triples()
    need = {(1, 1, 1), (10, 10, 0), (11, 11, 1), (2, 0, 0)}
    ok = len(got) == 28 and need <= got
    return ok, f"{len(got)} triples, missing examples {sorted(need - got)}"


# ---------------------------------------------------------------------- 4


@functools.lru_cache(maxsize=None)
def _matrix_props(m: IntMatrix) -> dict[str, bool]:
    ident = IntMatrix.identity(m.nrows)
    fixed = fixed_sublattice_of(m, K3)
    snf = smith_normal_form(fixed.basis)
    gram = fixed.gram
    return {
        "involution": m @ m == ident,
        "isometry": m.T @ K3 @ m == K3,
        "primitive": all(d == 1 for d in snf.diagonal[: fixed.rank]),
        "delta": fixed.rank == 0 or delta_brute_force(gram) == delta_from_generators(gram),
    }


def structural_failures(threads: int = 1) -> dict[str, int]:
    """Number of pairs violating each structural property."""
    fails = {k: 0 for k in ("involution", "isometry", "commuting", "trivial_intersection",
                            "primitive", "hyperbolic", "rank_sum", "delta")}
    for p in classify_pairs(threads):
        props = [_matrix_props(x.matrix) for x in (p.rho1, p.rho2, p.rho3)]
        for key in ("involution", "isometry", "primitive", "delta"):
            if not all(d[key] for d in props):
                fails[key] += 1
        if not kernels.commutes(p.rho1.matrix, p.rho2.matrix):
            fails["commuting"] += 1
        if p.common_fixed_rank != 0:
            fails["trivial_intersection"] += 1
        if not (p.inv1.hyperbolic and p.inv2.hyperbolic):
            fails["hyperbolic"] += 1
        if p.rank_sum != 22:
            fails["rank_sum"] += 1
    return fails


def check_structure(threads: int = 1) -> tuple[bool, str]:
    fails = structural_failures(threads)
    n = len(classify_pairs(threads))
    bad = {k: v for k, v in fails.items() if v}
    if not bad:
        return True, f"all properties hold on {n} pairs"
    return False, f"{n} pairs; violations: " + ", ".join(f"{k} {v}" for k, v in bad.items())


# ---------------------------------------------------------------------- 5


def _F(x) -> Fraction:
    return Fraction(x)


def _family(points, axis) -> set:
    """Components as (base point, direction) for circles along ``axis``."""
    d = tuple(int(i == axis) for i in range(3))
    return {(tuple(_F(c) for c in p), (d,)) for p in points}


def _components(f) -> set:
    return {(c.base_point, c.directions) for c in fixed_set(f).components}


def _eps(*offsets):
    """Points with offset + e/2 (e in {0,1}) in the given coordinates and 0
    in the free one (marked None)."""
    out = []
    for e1 in (0, 1):
        for e2 in (0, 1):
            shift = iter((Fraction(e1, 2), Fraction(e2, 2)))
            out.append(tuple(Fraction(0) if o is None else (o + next(shift)) % 1 for o in offsets))
    return out


def torus_failures() -> list[str]:
    bad = []
    c1 = builtin_action(ConstructionCase.CASE1)
    for lab in ("psi1", "psi3"):
        if not fixed_set(c1.element(lab).map).empty:
            bad.append(f"case 1 {lab} not empty")
    if _components(c1.element("psi2").map) != _family(_eps(Fraction(0), None, Fraction(0)), 1):
        bad.append("case 1 psi2 circles")
    c2 = builtin_action(ConstructionCase.CASE2)
    f1, f2 = fixed_set(c2.element("psi1").map), fixed_set(c2.element("psi2").map)
    if len(f1) != 4 or {c.base_point[2] for c in f1.components} != {Fraction(0), Fraction(1, 2)}:
        bad.append("case 2 psi1 circles")
    if len(f2) != 4 or {c.base_point[2] for c in f2.components} != {Fraction(1, 4), Fraction(3, 4)}:
        bad.append("case 2 psi2 circles")
    if f1.grid_points(16) & f2.grid_points(16):
        bad.append("case 2 loci meet")
    if not fixed_set(c2.element("psi3").map).empty:
        bad.append("case 2 psi3 not empty")
    c3 = builtin_action(ConstructionCase.CASE3)
    for lab in ("psi1", "psi2", "psi3"):
        fs = fixed_set(c3.element(lab).map)
        if len(fs) != 4 or fs.dimension != 1:
            bad.append(f"case 3 {lab} is not 4 circles")
    d4 = builtin_action(ConstructionCase.D4)
    if d4.group.order != 8 or not d4.group.is_dihedral() or d4.group.is_abelian():
        bad.append("D4 group structure")
    for j in (1, 2, 3):
        if not fixed_set(d4.element(f"gamma_{j}0").map).empty:
            bad.append(f"gamma_{j}0 not empty")
    q, e8 = Fraction(1, 4), Fraction(1, 8)
    families = {
        "gamma_01": _family(_eps(Fraction(0), None, Fraction(0)), 1),
        "gamma_11": _family(_eps(e8, e8, None), 2),
        "gamma_21": _family(_eps(q, None, Fraction(0)), 1),
        "gamma_31": _family(_eps(3 * e8, e8, None), 2),
    }
    for lab, want in families.items():
        if _components(d4.element(lab).map) != want:
            bad.append(f"{lab} circles")
    for case in ConstructionCase:
        for e in builtin_action(case).elements:
            fs = fixed_set(e.map)
            pts, pieces = grid_fixed_set(e.map)
            if fs.grid_points() != pts or len(fs) != pieces:
                bad.append(f"{case.label} {e.label}: grid oracle disagrees")
    return bad


def check_torus(threads: int = 1) -> tuple[bool, str]:
    bad = torus_failures()
    return not bad, "; ".join(bad) or "all fixed sets match, grid oracle agrees"


# ---------------------------------------------------------------------- 6


def check_orbifold(threads: int = 1) -> tuple[bool, str]:
    got = {c.label: orbifold_betti(c) for c in ConstructionCase}
    ok = all(v == (0, 0, 23) for v in got.values())
    return ok, ", ".join(f"{k} {v}" for k, v in got.items())


# ------------------------------------------------------------------ 7..10


def _grouped_ref(key: str) -> set[tuple[int, int]]:
    return {(int(b2), b3) for b2, b3s in published()[key].items() for b3 in b3s}


def check_case1(nikulin: NikulinCatalog, threads: int = 1) -> tuple[bool, str]:
    got = case1_values(nikulin, threads)
    want = _grouped_ref("case1")
    unmatched = case1_unmatched_simple(threads)
    want_unmatched = {tuple(x) for x in published()["case1_unmatched"]}
    has_1010 = (10, 10, 1) in case1_sources(nikulin, threads)
    ok = got == want and unmatched == want_unmatched and has_1010
    detail = f"{len(got)} values vs {len(want)}; {_diff(got, want)}; unmatched simple pairs {sorted(unmatched)}"
    return ok, detail + ("" if has_1010 else "; (10,10,1) absent")


def check_case2(threads: int = 1) -> tuple[bool, str]:
    ex = outcome(ConstructionCase.CASE2, InvariantInput.from_triples((1, 1, 1), (11, 11, 1)))
    rows, counts = case2_rows(threads)
    got = {tuple(r[:4]) for r in rows}
    want = {tuple(r) for r in published()["case2"]}
    ok = ex.betti == (4, 67) and ex.pi1 == "trivial" and (counts["sums"], counts["matched"], counts["remaining"]) == (60, 31, 29) and got == want
    unreal = [r[:4] for r in rows if r[4] == "no"]
    return ok, (f"example {ex.betti}; sums {counts['sums']}, matched {counts['matched']}, remaining "
                f"{counts['remaining']}; {_diff(got, want)}; rows without nonempty loci {unreal}")


def check_case3(threads: int = 1) -> tuple[bool, str]:
    v = case3_values(threads)
    vals = v["tuples"]
    base = ((10, 10, 0),)
    rejects = {
        "(10,8,0)": InvariantInput.from_triples(*base, (10, 8, 0), (2, 0, 0)),
        "r-a>=4": InvariantInput.from_triples(*base, (6, 2, 1), (6, 4, 1)),
        "r+a=22": InvariantInput.from_triples(*base, (12, 10, 1), (0, 0, 0)),
    }
    not_rejected = [k for k, inp in rejects.items() if admissible(ConstructionCase.CASE3, inp)[0]]
    ok = vals == {(0, 63), (0, 71), (0, 79)} and v["barely"] == {(0, 71)} and not not_rejected
    return ok, (f"values {sorted(vals)}; barely {sorted(v['barely'])} (without the trivial-intersection "
                f"hypothesis {sorted(v['barely_tuples'])}); pairs with true (10,10,0) give {sorted(v['pairs'])}; "
                f"not rejected {not_rejected}")


def check_d4(nikulin: NikulinCatalog, literature: LiteratureCatalog, threads: int = 1) -> tuple[bool, str]:
    got = set(d4_values(nikulin, threads))
    want = _grouped_ref("d4")
    d4_left = literature_diff(betti_table(ConstructionCase.D4, nikulin, threads), literature, "d4")
    c2_left = {r for r in literature_diff(betti_table(ConstructionCase.CASE2, nikulin, threads), literature, "2").rows}
    want_c2 = {tuple(x) for x in published()["case2_remaining"]}
    s12, s23 = sum_sets(threads)
    ok = got == want and len(d4_left.rows) == published()["d4_remaining_count"] and c2_left == want_c2
    return ok, (f"{len(got)} pairs vs {len(want)}; {_diff(got, want)}; D4 remaining {len(d4_left.rows)}; "
                f"case 2 remaining {sorted(c2_left)}; sum sets equal {s12 == s23}")


# --------------------------------------------------------------------- 11


def check_data(nikulin: NikulinCatalog | None) -> tuple[bool, str]:
    if nikulin is None:
        return True, "data file not consulted"
    problems = nikulin.problems()
    return not problems, "; ".join(problems) or f"{len(nikulin)} triples within bounds"


_NAMES = {
    1: "invariant tables",
    2: "pair census",
    3: "simple-triple census",
    4: "structural properties",
    5: "torus fixed sets",
    6: "orbifold Betti numbers",
    7: "case-1 table",
    8: "case-2 table",
    9: "case-3 values",
    10: "D4 table and literature diffs",
    11: "data validation",
}


def run_criteria(
    nikulin: NikulinCatalog | None,
    literature: LiteratureCatalog | None,
    threads: int = 1,
    skip_external: bool = False,
    only: set[int] | None = None,
) -> list[CriterionResult]:
    """Run the checks. ``skip_external`` leaves out those needing the data file."""
    checks: dict[int, Callable[[], tuple[bool, str]]] = {
        1: lambda: check_invariant_tables(threads),
        2: lambda: check_census(threads),
        3: lambda: check_simple_triples(threads),
        4: lambda: check_structure(threads),
        5: lambda: check_torus(threads),
        6: lambda: check_orbifold(threads),
        7: lambda: check_case1(nikulin, threads),
        8: lambda: check_case2(threads),
        9: lambda: check_case3(threads),
        10: lambda: check_d4(nikulin, literature, threads),
    }
    out: list[CriterionResult] = []
    for n in sorted(checks):
        if only is not None and n not in only:
            continue
        if skip_external and n in EXTERNAL:
            out.append(CriterionResult(n, _NAMES[n], "skipped", "needs the Nikulin data file"))
            continue
        ok, detail = checks[n]()
        out.append(CriterionResult(n, _NAMES[n], "pass" if ok else "fail", detail))
    if only is None or 11 in only:
        data_ok, data_detail = check_data(None if skip_external else nikulin)
        by_n = {r.number: r for r in out}
        subset = [by_n[n] if n in by_n else CriterionResult(n, _NAMES[n], *_status(checks[n]())) for n in SKIP_EXTERNAL_SET]
        failing = [r.number for r in subset if not r.passed]
        ok = data_ok and not failing
        detail = f"{data_detail}; skip-external set " + (f"fails at {failing}" if failing else "passes")
        out.append(CriterionResult(11, _NAMES[11], "pass" if ok else "fail", detail))
    return out


def _status(res: tuple[bool, str]) -> tuple[str, str]:
    ok, detail = res
    return ("pass" if ok else "fail"), detail


def report_table(results: list[CriterionResult]) -> TableArtifact:
    rows = tuple((r.number, r.name, r.status, r.detail) for r in results)
    failed = [r.number for r in results if r.status == "fail"]
    note = "all criteria pass" if not failed else "failing: " + ", ".join(map(str, failed))
    return TableArtifact("verification", ("criterion", "name", "status", "detail"), rows, (note,))
