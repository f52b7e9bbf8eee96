"""Betti numbers of resolved (S x T^3)/Gamma for the four torus actions.

Two independent routes are implemented and cross-checked in ``outcome``:
the closed formulas in (r_i, a_i), and orbifold Betti numbers from
character averaging plus the contribution of the resolved singular locus.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .torus import ConstructionCase, builtin_action, fixed_set

__all__ = [
    "ConstructionCase",
    "InvalidTriple",
    "EmptyLocus",
    "Inadmissible",
    "LocusKind",
    "FixedLocusTopology",
    "LocusComponent",
    "SingularLocusModel",
    "InvariantInput",
    "G2Outcome",
    "fixed_locus_topology",
    "fixed_locus_betti",
    "orbifold_betti",
    "singular_locus",
    "resolve_betti",
    "admissible",
    "outcome",
    "closed_form",
]


class InvalidTriple(ValueError):
    pass


class EmptyLocus(ValueError):
    pass


class Inadmissible(ValueError):
    def __init__(self, reason: str):
        super().__init__(f"Inadmissible: {reason}")
        self.reason = reason


class LocusKind(enum.Enum):
    EMPTY = "Empty"
    TWO_ELLIPTIC = "TwoElliptic"
    GENERIC = "Generic"


@dataclass(frozen=True)
class FixedLocusTopology:
    kind: LocusKind
    genus: int = 0
    rational_count: int = 0

    @property
    def empty(self) -> bool:
        return self.kind is LocusKind.EMPTY

    @property
    def curve_genera(self) -> tuple[int, ...]:
        if self.kind is LocusKind.EMPTY:
            return ()
        if self.kind is LocusKind.TWO_ELLIPTIC:
            return (1, 1)
        return (self.genus,) + (0,) * self.rational_count

    def has_equal_genus_pair(self) -> bool:
        g = self.curve_genera
        return len(set(g)) != len(g)

    def __str__(self) -> str:
        if self.kind is LocusKind.GENERIC:
            return f"C_{self.genus}+{self.rational_count}E"
        return self.kind.value


def fixed_locus_topology(r: int, a: int, delta: int) -> FixedLocusTopology:
    """Fixed curves of a non-symplectic involution with invariants (r, a, delta)."""
    if (r, a, delta) == (10, 10, 0):
        return FixedLocusTopology(LocusKind.EMPTY)
    if (r, a, delta) == (10, 8, 0):
        return FixedLocusTopology(LocusKind.TWO_ELLIPTIC)
    if (22 - r - a) % 2 or (r - a) % 2 or r - a < 0 or 22 - r - a < 0:
        raise InvalidTriple(f"InvalidTriple: ({r},{a},{delta}) gives non-integral genus or curve count")
    return FixedLocusTopology(LocusKind.GENERIC, (22 - r - a) // 2, (r - a) // 2)


def fixed_locus_betti(t: FixedLocusTopology) -> tuple[int, int]:
    """(b0, b1) of the fixed curves."""
    if t.kind is LocusKind.EMPTY:
        raise EmptyLocus("EmptyLocus: the fixed locus has no components")
    if t.kind is LocusKind.TWO_ELLIPTIC:
        return 2, 4
    return t.rational_count + 1, 2 * t.genus


@dataclass(frozen=True)
class InvariantInput:
    """Invariants of rho^1, rho^2, rho^3; entries the formulas do not use may be None."""

    r1: int | None = None
    a1: int | None = None
    d1: int | None = None
    r2: int | None = None
    a2: int | None = None
    d2: int | None = None
    r3: int | None = None
    a3: int | None = None
    d3: int | None = None
    source: str = field(default="", compare=False)

    @classmethod
    def from_triples(cls, t1=None, t2=None, t3=None, source: str = "") -> "InvariantInput":
        kw = {}
        for i, t in enumerate((t1, t2, t3), start=1):
            if t is None:
                continue
            t = tuple(t)
            kw[f"r{i}"], kw[f"a{i}"] = t[0], t[1]
            if len(t) > 2:
                kw[f"d{i}"] = t[2]
        return cls(source=source, **kw)

    def triple(self, i: int) -> tuple[int | None, int | None, int | None]:
        return getattr(self, f"r{i}"), getattr(self, f"a{i}"), getattr(self, f"d{i}")

    def topology(self, i: int) -> FixedLocusTopology:
        r, a, d = self.triple(i)
        if r is None or a is None:
            raise Inadmissible(f"invariants of rho^{i} are required")
        if (r, a) in ((10, 10), (10, 8)) and d is None:
            # delta decides between the exceptional and the generic case
            raise Inadmissible(f"delta of rho^{i} is required for ({r},{a})")
        return fixed_locus_topology(r, a, d if d is not None else 1)

    @property
    def rank_excess(self) -> int | None:
        """(r1 + r2 + r3 - 22) / 2 when all ranks are known: the rank of the
        common fixed lattice of the pair."""
        if None in (self.r1, self.r2, self.r3):
            return None
        s = self.r1 + self.r2 + self.r3 - 22
        if s % 2:
            raise InvalidTriple(f"rank sum {s + 22} has the wrong parity")
        return s // 2


@dataclass(frozen=True)
class LocusComponent:
    surface: FixedLocusTopology
    copies: int
    twisted: bool
    source: str          # which rho^i supplies the curves


@dataclass(frozen=True)
class SingularLocusModel:
    components: tuple[LocusComponent, ...]
    b0: int
    b1: int


@dataclass(frozen=True)
class G2Outcome:
    case: ConstructionCase
    b1: int
    b2: int
    b3: int
    pi1: str
    holonomy: str
    barely: bool = False
    source: str = ""

    @property
    def betti(self) -> tuple[int, int]:
        return self.b2, self.b3


# ---------------------------------------------------------------- orbifold


def _exterior_traces(A) -> tuple[int, int, int, int]:
    """Traces of A on Lambda^k R^3, k = 0..3."""
    n = 3
    t1 = sum(A[i, i] for i in range(n))
    t2 = sum(A[i, i] * A[j, j] - A[i, j] * A[j, i] for i, j in combinations(range(n), 2))
    return 1, t1, t2, A.det()


_EIGEN = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _character(eps: tuple[int, int], rho: int) -> int:
    # value of the eigen-character V_{eps1,eps2} on rho^0..rho^3
    e1, e2 = eps
    return {0: 1, 1: e1, 2: e2, 3: e1 * e2}[rho]


@functools.lru_cache(maxsize=None)
def _multiplicities(case: ConstructionCase) -> dict:
    """For each eigen-character chi of Gamma on H^2(S) and each q, the
    multiplicity of the trivial representation in chi (x) H^q(T^3),
    obtained by averaging characters over the group."""
    act = builtin_action(case)
    n = act.group.order
    out = {}
    for eps in _EIGEN:
        for q in range(4):
            total = sum(_character(eps, e.rho) * _exterior_traces(e.map.linear)[q] for e in act.elements)
            m = Fraction(total, n)
            if m.denominator != 1:
                raise AssertionError("character average is not an integer")
            out[eps, q] = int(m)
    return out


def _eigen_dims(inp: InvariantInput | None, common: int) -> dict:
    """Dimensions of V_{eps1,eps2} on H^2(S).

    V_{1,1} has the rank of the common fixed lattice.  The other three are
    recovered from two known ranks; when fewer are known only their sum
    22 - common is fixed, which is all the averaging needs as long as the
    three characters have equal multiplicities (checked by the caller).
    """
    r = {}
    if inp is not None:
        r = {i: getattr(inp, f"r{i}") for i in (1, 2, 3) if getattr(inp, f"r{i}") is not None}
    rest = 22 - common
    dims = {(1, 1): common}
    if 1 in r and 2 in r:
        dims[(1, -1)], dims[(-1, 1)] = r[1] - common, r[2] - common
    elif 2 in r and 3 in r:
        dims[(-1, 1)], dims[(-1, -1)] = r[2] - common, r[3] - common
    elif 1 in r and 3 in r:
        dims[(1, -1)], dims[(-1, -1)] = r[1] - common, r[3] - common
    else:
        return {**dims, "undetermined": rest}
    missing = [e for e in _EIGEN[1:] if e not in dims][0]
    dims[missing] = rest - sum(v for k, v in dims.items() if k != (1, 1))
    return dims


def orbifold_betti(case: ConstructionCase | str, inp: InvariantInput | None = None, common_fixed_rank: int = 0) -> tuple[int, int, int]:
    """(b1, b2, b3) of (S x T^3)/Gamma from invariant harmonic forms.

    H^0(S) and H^4(S) carry the trivial character, H^2(S) splits into the
    eigenspaces V_{eps1,eps2}.  ``common_fixed_rank`` is dim V_{1,1}; the
    tables assume it vanishes.
    """
    case = ConstructionCase.parse(case)
    mult = _multiplicities(case)
    dims = _eigen_dims(inp, common_fixed_rank)
    out = []
    for k in (1, 2, 3):
        b = mult[(1, 1), k] if k <= 3 else 0
        if k - 4 >= 0:
            b += mult[(1, 1), k - 4]
        q = k - 2
        if 0 <= q <= 3:
            if "undetermined" in dims:
                ms = {mult[e, q] for e in _EIGEN[1:]}
                if len(ms) != 1:
                    raise ValueError("eigenspace split needed but ranks are missing")
                b += dims[(1, 1)] * mult[(1, 1), q] + dims["undetermined"] * ms.pop()
            else:
                b += sum(dims[e] * mult[e, q] for e in _EIGEN)
        out.append(b)
    return tuple(out)


# ----------------------------------------------------------- singular locus


def _case3_reason(inp: InvariantInput, i: int) -> str | None:
    r, a, d = inp.triple(i)
    if (r, a, d) == (10, 8, 0):
        return f"rho^{i} has invariants (10,8,0): TwoElliptic excluded"
    if r - a >= 4:
        return f"rho^{i}: r - a = {r - a} >= 4 (two or more rational curves)"
    if r + a == 22 and r != a:
        return f"rho^{i}: r + a = 22 with r != a (two rational curves)"
    return None


def admissible(case: ConstructionCase | str, inp: InvariantInput) -> tuple[bool, str]:
    """Whether the case rules accept ``inp``; the reason names the first
    violated condition."""
    case = ConstructionCase.parse(case)
    try:
        if case is ConstructionCase.CASE1:
            if inp.topology(2).empty:
                return False, "Fix(rho^2) is empty"
        elif case is ConstructionCase.CASE2:
            t1, t2 = inp.topology(1), inp.topology(2)
            if t1.empty and t2.empty:
                return False, "Fix(rho^1) and Fix(rho^2) are both empty"
        elif case is ConstructionCase.CASE3:
            if not inp.topology(1).empty:
                return False, "Fix(rho^1) must be empty, i.e. (r1,a1,d1) = (10,10,0)"
            t2, t3 = inp.topology(2), inp.topology(3)
            if t2.empty and t3.empty:
                return False, "Fix(rho^2) and Fix(rho^3) are both empty"
            for i, t in ((2, t2), (3, t3)):
                if t.empty:
                    continue
                reason = _case3_reason(inp, i)
                if reason:
                    return False, reason
                if t.has_equal_genus_pair():
                    return False, f"Fix(rho^{i}) contains two curves of equal genus"
        else:
            if inp.topology(2).empty:
                return False, "Fix(rho^2) is empty"
            if inp.topology(3).empty:
                return False, "Fix(rho^1 rho^2) is empty"
    except (Inadmissible, InvalidTriple) as exc:
        return False, getattr(exc, "reason", str(exc))
    return True, ""


def _require(case, inp):
    ok, reason = admissible(case, inp)
    if not ok:
        raise Inadmissible(reason)


def singular_locus(case: ConstructionCase | str, inp: InvariantInput) -> SingularLocusModel:
    """Components of the singular set of (S x T^3)/Gamma and its (possibly
    twisted) Betti numbers b0, b1."""
    case = ConstructionCase.parse(case)
    _require(case, inp)
    comps: list[LocusComponent] = []
    b0 = b1 = 0
    if case is ConstructionCase.CASE1:
        plan = [(2, 2)]                       # two copies of Fix(rho^2) x S^1
    elif case is ConstructionCase.CASE2:
        plan = [(1, 2), (2, 2)]
    elif case is ConstructionCase.D4:
        plan = [(2, 4), (3, 4)]
    else:
        plan = []
    for i, copies in plan:
        t = inp.topology(i)
        if t.empty:
            continue
        c0, c1 = fixed_locus_betti(t)
        comps.append(LocusComponent(t, copies, False, f"rho^{i}"))
        # b^0(Sigma x S^1) = b^0(Sigma), b^1 = b^0 + b^1(Sigma)
        b0 += copies * c0
        b1 += copies * (c0 + c1)
    if case is ConstructionCase.CASE3:
        for i in (2, 3):
            t = inp.topology(i)
            if t.empty:
                continue
            comps.append(LocusComponent(t, 4, True, f"rho^{i}"))
            # each curve of genus g gives g + 1 twisted 1-forms, no twisted 0-forms
            b1 += 4 * sum(g + 1 for g in t.curve_genera)
    return SingularLocusModel(tuple(comps), b0, b1)


def resolve_betti(orbifold: Sequence[int], locus: SingularLocusModel) -> tuple[int, int, int]:
    """b^k(M) = b^k(orbifold) + b^{k-2}(L)."""
    b1, b2, b3 = orbifold
    return b1, b2 + locus.b0, b3 + locus.b1


# -------------------------------------------------------------- closed form


def closed_form(case: ConstructionCase | str, inp: InvariantInput) -> tuple[int, int]:
    """(b2, b3) from the case formulas."""
    case = ConstructionCase.parse(case)
    if case is ConstructionCase.CASE1:
        return inp.r2 - inp.a2 + 2, 69 - inp.r2 - 3 * inp.a2
    if case is ConstructionCase.CASE2:
        t1, t2 = inp.topology(1), inp.topology(2)
        if t1.empty or t2.empty:
            r, a = (inp.r2, inp.a2) if t1.empty else (inp.r1, inp.a1)
            return r - a + 2, 69 - r - 3 * a
        R, A = inp.r1 + inp.r2, inp.a1 + inp.a2
        return 4 + R - A, 115 - R - 3 * A
    if case is ConstructionCase.CASE3:
        t2, t3 = inp.topology(2), inp.topology(3)
        if t2.empty:
            return 0, 71 - 4 * inp.a3
        if t3.empty:
            return 0, 71 - 4 * inp.a2
        return 0, 119 - 4 * (inp.a2 + inp.a3)
    R, A = inp.r2 + inp.r3, inp.a2 + inp.a3
    return 8 + 2 * R - 2 * A, 207 - 2 * R - 6 * A


def _labels(case: ConstructionCase, inp: InvariantInput) -> tuple[str, str, bool]:
    if case is ConstructionCase.CASE1:
        return "Z⋊Z2", "SU(3)⋊Z2", True
    if case is ConstructionCase.CASE2:
        if inp.topology(1).empty or inp.topology(2).empty:
            return "Z⋊Z2", "SU(3)⋊Z2", True
        return "trivial", "G2", False
    if case is ConstructionCase.CASE3:
        if inp.topology(2).empty or inp.topology(3).empty:
            return "Z⋊Z2", "SU(3)⋊Z2", True
        return "trivial", "G2", False
    return "trivial", "G2", False


def outcome(case: ConstructionCase | str, inp: InvariantInput) -> G2Outcome:
    case = ConstructionCase.parse(case)
    _require(case, inp)
    orb = orbifold_betti(case, inp)
    b1, b2, b3 = resolve_betti(orb, singular_locus(case, inp))
    expect = closed_form(case, inp)
    if (b2, b3) != expect:
        raise AssertionError(f"{case.label}: composition gives {(b2, b3)}, closed form {expect} for {inp}")
    pi1, hol, barely = _labels(case, inp)
    if b1 != 0:
        raise AssertionError("b1 must vanish")
    return G2Outcome(case, b1, b2, b3, pi1, hol, barely, inp.source)


def torus_locus_counts(case: ConstructionCase | str) -> dict[str, int]:
    """Number of fixed circles of each group element on T^3."""
    act = builtin_action(ConstructionCase.parse(case))
    return {e.label: len(fixed_set(e.map)) for e in act.elements if e.rho}
