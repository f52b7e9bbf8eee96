"""Affine isometries of the flat torus R^3/Z^3 and their fixed sets.

Maps are x -> A x + v with A an integral rotation and v rational, reduced
mod Z^3.  Everything is exact; fixed sets come from the Smith form of A - I.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .lattice import IntMatrix, smith_normal_form

__all__ = [
    "ConstructionCase",
    "AffineTorusMap",
    "FixedComponent",
    "TorusFixedSet",
    "FiniteActionGroup",
    "NotFinite",
    "BuiltinAction",
    "compose",
    "inverse",
    "fixed_set",
    "grid_fixed_set",
    "generate_group",
    "builtin_action",
    "GRID",
]

GRID = 8          # all builtin translations have denominators dividing 8
GROUP_CAP = 10_000


class ConstructionCase(enum.Enum):
    CASE1 = "1"
    CASE2 = "2"
    CASE3 = "3"
    D4 = "d4"

    @classmethod
    def parse(cls, text: str | "ConstructionCase") -> "ConstructionCase":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().removeprefix("case")
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown construction case {text!r} (expected 1, 2, 3 or d4)")

    @property
    def label(self) -> str:
        return "D4" if self is ConstructionCase.D4 else f"Case{self.value}"


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _vec(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(_mod1(Fraction(x)) for x in v)


@dataclass(frozen=True, order=True)
class AffineTorusMap:
    linear: IntMatrix
    translation: tuple[Fraction, ...]

    def __init__(self, linear, translation):
        A = linear if isinstance(linear, IntMatrix) else IntMatrix(linear)
        object.__setattr__(self, "linear", A)
        object.__setattr__(self, "translation", _vec(translation))
        self._check()

    def _check(self) -> None:
        A = self.linear
        if A.shape != (3, 3) or len(self.translation) != 3:
            raise ValueError("torus maps act on R^3/Z^3")
        if any(x not in (-1, 0, 1) for x in A.flat()):
            raise ValueError("linear part must have entries in {-1, 0, 1}")
        if A.T @ A != IntMatrix.identity(3) or A.det() != 1:
            raise ValueError("linear part must lie in SO(3)")
        if any(GRID % t.denominator for t in self.translation):
            raise ValueError("translation denominators must divide 8")

    @classmethod
    def identity(cls) -> "AffineTorusMap":
        return cls(IntMatrix.identity(3), (0, 0, 0))

    @classmethod
    def signed(cls, signs: Sequence[int], translation: Sequence) -> "AffineTorusMap":
        """x^i -> signs[i] x^i + translation[i]."""
        return cls(IntMatrix.diag(signs), [Fraction(t) for t in translation])

    def __call__(self, x: Sequence) -> tuple[Fraction, ...]:
        return _vec(a + b for a, b in zip(self.linear.apply([Fraction(t) for t in x]), self.translation))

    def is_identity(self) -> bool:
        return self.linear == IntMatrix.identity(3) and not any(self.translation)

    def __str__(self) -> str:
        out = []
        for i in range(3):
            terms = []
            for j in range(3):
                c = self.linear[i, j]
                if c:
                    terms.append(("-" if c < 0 else "+") + f"x{j + 1}")
            t = self.translation[i]
            s = "".join(terms).lstrip("+")
            out.append(s + (f"+{t}" if t else ""))
        return "(" + ", ".join(out) + ")"


def compose(f: AffineTorusMap, g: AffineTorusMap) -> AffineTorusMap:
    """f after g."""
    v = [a + b for a, b in zip(f.linear.apply(g.translation), f.translation)]
    return AffineTorusMap(f.linear @ g.linear, v)


def inverse(f: AffineTorusMap) -> AffineTorusMap:
    At = f.linear.T
    return AffineTorusMap(At, [-x for x in At.apply(f.translation)])


@dataclass(frozen=True, order=True)
class FixedComponent:
    base_point: tuple[Fraction, ...]
    directions: tuple[tuple[int, ...], ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def to_dict(self) -> dict:
        return {
            "base_point": [str(x) for x in self.base_point],
            "directions": [list(d) for d in self.directions],
        }


@dataclass(frozen=True)
class TorusFixedSet:
    dimension: int | None          # None when empty
    components: tuple[FixedComponent, ...] = field(default=())

    @property
    def empty(self) -> bool:
        return not self.components

    def __len__(self) -> int:
        return len(self.components)

    def grid_points(self, n: int = GRID) -> frozenset[tuple[Fraction, ...]]:
        """Points of the (1/n)-grid lying on the fixed set."""
        out = set()
        for c in self.components:
            for p in _grid_points_on(c, n):
                out.add(p)
        return frozenset(out)


def _primitive(d: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in d:
        g = gcd(g, x)
    d = [x // g for x in d]
    first = next(x for x in d if x)
    return tuple(-x for x in d) if first < 0 else tuple(d)


def _canonical_line_point(p: tuple[Fraction, ...], d: tuple[int, ...]) -> tuple[Fraction, ...]:
    # slide along d until the first coordinate moved by d is an integer
    j = next(i for i, x in enumerate(d) if x)
    best = None
    for k in range(abs(d[j])):
        t = (k - p[j]) / d[j]
        q = _vec(a + t * b for a, b in zip(p, d))
        if best is None or q < best:
            best = q
    return best


def _grid_points_on(c: FixedComponent, n: int) -> Iterable[tuple[Fraction, ...]]:
    if c.dimension == 0:
        if all((x * n).denominator == 1 for x in c.base_point):
            yield c.base_point
        return
    if c.dimension == 3:
        for p in itertools.product(range(n), repeat=3):
            yield tuple(Fraction(x, n) for x in p)
        return
    if c.dimension != 1:
        raise NotImplementedError("grid sampling implemented for dimensions 0, 1, 3")
    d = c.directions[0]
    period = n * max(abs(x) for x in d)
    for k in range(period):
        q = _vec(a + Fraction(k, period) * b for a, b in zip(c.base_point, d))
        if all((x * n).denominator == 1 for x in q):
            yield q


def fixed_set(f: AffineTorusMap) -> TorusFixedSet:
    """Solve (A - I) x = -v mod Z^3.

    With A - I = U D V, put y = V x; then D y = -U^{-1} v mod Z^3, which
    splits into one congruence per diagonal entry.
    """
    B = f.linear - IntMatrix.identity(3)
    snf = smith_normal_form(B)
    w = [-x for x in snf.U_inv.apply(f.translation)]
    diag = snf.diagonal
    rank = snf.rank
    for i in range(rank, 3):
        if _mod1(w[i]) != 0:
            return TorusFixedSet(None, ())
    choices = []
    for i in range(rank):
        d = diag[i]
        choices.append([(w[i] + k) / d for k in range(d)])
    Vinv = snf.V_inv
    free = [_primitive(Vinv.column(i)) for i in range(rank, 3)]
    comps = set()
    for ys in itertools.product(*choices):
        y = list(ys) + [Fraction(0)] * (3 - rank)
        p = _vec(Vinv.apply(y))
        if len(free) == 1:
            p = _canonical_line_point(p, free[0])
        elif len(free) == 3:
            p = (Fraction(0),) * 3
        comps.add(FixedComponent(p, tuple(sorted(free))))
    return TorusFixedSet(3 - rank, tuple(sorted(comps)))


def grid_fixed_set(f: AffineTorusMap, n: int = GRID) -> tuple[frozenset, int]:
    """Brute-force oracle on the (1/n)-grid.

    Returns the fixed grid points and the number of connected pieces they
    form, joining two neighbouring fixed points (26-neighbourhood) when the
    midpoint between them is fixed as well.
    """
    pts = [tuple(Fraction(x, n) for x in p) for p in itertools.product(range(n), repeat=3)]
    fixed = [p for p in pts if f(p) == p]
    index = {p: i for i, p in enumerate(fixed)}
    parent = list(range(len(fixed)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    h = Fraction(1, n)
    for p in fixed:
        for step in itertools.product((-1, 0, 1), repeat=3):
            if not any(step):
                continue
            q = _vec(a + s * h for a, s in zip(p, step))
            if q not in index:
                continue
            mid = _vec(a + s * h / 2 for a, s in zip(p, step))
            if f(mid) == mid:
                a, b = find(index[p]), find(index[q])
                if a != b:
                    parent[a] = b
    pieces = len({find(i) for i in range(len(fixed))})
    return frozenset(fixed), pieces


class NotFinite(ValueError):
    pass


@dataclass(frozen=True)
class FiniteActionGroup:
    elements: tuple[AffineTorusMap, ...]
    table: tuple[tuple[int, ...], ...]       # table[i][j] = index of e_i e_j
    words: tuple[tuple[int, ...], ...]       # a generator word for each element

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, f: AffineTorusMap) -> int:
        return self.elements.index(f)

    def element_order(self, i: int) -> int:
        e = self.elements.index(AffineTorusMap.identity())
        k, j = 1, i
        while j != e:
            j = self.table[j][i]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n))

    def is_dihedral(self) -> bool:
        """Order 2m, non-abelian, with r of order m and an involution s outside
        <r> such that s r s = r^-1."""
        n = self.order
        if n < 6 or n % 2 or self.is_abelian():
            return False
        m = n // 2
        e = self.elements.index(AffineTorusMap.identity())
        for r in range(n):
            if self.element_order(r) != m:
                continue
            powers = {e}
            j = r
            while j != e:
                powers.add(j)
                j = self.table[j][r]
            rinv = next(k for k in range(n) if self.table[r][k] == e)
            for s in range(n):
                if s in powers or self.element_order(s) != 2:
                    continue
                if self.table[self.table[s][r]][s] == rinv:
                    return True
        return False


def generate_group(generators: Sequence[AffineTorusMap]) -> FiniteActionGroup:
    ident = AffineTorusMap.identity()
    elems = [ident]
    words: list[tuple[int, ...]] = [()]
    seen = {ident: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for gi, g in enumerate(generators):
                h = compose(elems[i], g)
                if h not in seen:
                    if len(elems) >= GROUP_CAP:
                        raise NotFinite("NotFinite: closure exceeded %d elements" % GROUP_CAP)
                    seen[h] = len(elems)
                    elems.append(h)
                    words.append(words[i] + (gi,))
                    nxt.append(seen[h])
        frontier = nxt
    table = tuple(tuple(seen[compose(a, b)] for b in elems) for a in elems)
    return FiniteActionGroup(tuple(elems), table, tuple(words))


# signs of (omega_1, omega_2, omega_3) under the three K3 involutions
RHO_SIGNS = {
    0: (1, 1, 1),
    1: (1, -1, -1),
    2: (-1, 1, -1),
    3: (-1, -1, 1),
}


@dataclass(frozen=True)
class GroupElement:
    label: str
    map: AffineTorusMap
    rho: int                     # 0 = identity on S, else the index of rho^i

    @property
    def omega_signs(self) -> tuple[int, int, int]:
        return RHO_SIGNS[self.rho]

    @property
    def dx_signs(self) -> tuple[int, ...] | None:
        A = self.map.linear
        if any(A[i, j] for i in range(3) for j in range(3) if i != j):
            return None
        return tuple(A[i, i] for i in range(3))


@dataclass(frozen=True)
class BuiltinAction:
    case: ConstructionCase
    psi1: AffineTorusMap
    psi2: AffineTorusMap
    group: FiniteActionGroup
    elements: tuple[GroupElement, ...]

    def element(self, label: str) -> GroupElement:
        for e in self.elements:
            if e.label == label:
                return e
        raise KeyError(label)


_GENERATORS = {
    ConstructionCase.CASE1: (((1, -1, -1), (Fraction(1, 2), 0, Fraction(1, 2))), ((-1, 1, -1), (0, 0, 0))),
    ConstructionCase.CASE2: (((1, -1, -1), (0, 0, 0)), ((-1, 1, -1), (0, 0, Fraction(1, 2)))),
    ConstructionCase.CASE3: (((1, -1, -1), (0, 0, 0)), ((-1, 1, -1), (0, 0, 0))),
    ConstructionCase.D4: (((1, -1, -1), (Fraction(1, 4), Fraction(1, 4), 0)), ((-1, 1, -1), (0, 0, 0))),
}


def builtin_action(case: ConstructionCase | str) -> BuiltinAction:
    """The two torus generators of a construction case, the group they
    generate, and for every element its action on S (through the
    homomorphism psi^i -> rho^i)."""
    case = ConstructionCase.parse(case)
    (s1, t1), (s2, t2) = _GENERATORS[case]
    psi1, psi2 = AffineTorusMap.signed(s1, t1), AffineTorusMap.signed(s2, t2)
    group = generate_group([psi1, psi2])
    elements = []
    for f, word in zip(group.elements, group.words):
        bits = (word.count(0) % 2, word.count(1) % 2)
        rho = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}[bits]
        elements.append(GroupElement(_label(case, f, psi1, psi2), f, rho))
    # the assignment psi -> rho must be a homomorphism: check on the table
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            c = elements[group.table[i][j]]
            if c.rho != a.rho ^ b.rho:
                raise AssertionError(f"{case.label}: action on S is not a homomorphism")
    return BuiltinAction(case, psi1, psi2, group, tuple(elements))


def _label(case, f, psi1, psi2) -> str:
    if case is ConstructionCase.D4:
        p = AffineTorusMap.identity()
        for j in range(4):
            if f == p:
                return f"gamma_{j}0"
            if f == compose(p, psi2):
                return f"gamma_{j}1"
            p = compose(p, psi1)
        raise AssertionError("element outside <psi1, psi2>")
    names = {AffineTorusMap.identity(): "id", psi1: "psi1", psi2: "psi2", compose(psi1, psi2): "psi3"}
    return names[f]
