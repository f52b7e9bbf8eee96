"""Commuting pairs of simple involutions, up to simultaneous conjugation.

The conjugation group acting on 3H is generated by the block permutations
of H_1, H_2, H_3 and the block matrices diag(M_a, M_b, M_c); on 2(-E8) it is
generated by the exchange of the two E8 summands and diag(+-I_8, +-I_8).
Orbits are found by applying every group element, and each orbit is
represented by the member minimising a fixed sort key (see
``_prime_pair_key``).
"""

from __future__ import annotations

import functools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .involutions import (
    K3,
    SWAP_PAIRS,
    THREE_H,
    TWO_MINUS_E8,
    K3Involution,
    RhoDoublePrimeSpec,
    RhoPrimeSpec,
    TwoElementaryInvariants,
    all_double_prime_specs,
    all_prime_specs,
    build_involution,
    fixed_sublattice_of,
    invariants_of,
    invariants_of_matrix,
    m_matrix,
    rho_double_prime_matrix,
    rho_prime_matrix,
)
from .lattice import IntMatrix, integer_kernel_basis, signature_of

__all__ = [
    "ConjugationGroup",
    "InvolutionPair",
    "InvariantTuple",
    "prime_conjugation_group",
    "double_prime_conjugation_group",
    "prime_pair_candidates",
    "double_prime_pair_candidates",
    "reduce_orbits",
    "enumerate_prime_pairs",
    "enumerate_double_prime_pairs",
    "classify_pairs",
    "invariant_tuple",
    "prime_tuples",
    "double_prime_tuples",
    "simple_triples",
    "kovalev_lee_admissible",
    "pair_category",
    "common_fixed_rank",
    "product_is_hyperbolic",
    "invariant_tuples",
]

GROUP_CAP = 10_000


@dataclass(frozen=True)
class ConjugationGroup:
    generators: tuple[IntMatrix, ...]
    elements: tuple[IntMatrix, ...]

    @classmethod
    def generate(cls, generators: Sequence[IntMatrix]) -> "ConjugationGroup":
        n = generators[0].nrows
        ident = IntMatrix.identity(n)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = g @ x
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > GROUP_CAP:
                            raise ValueError("conjugation group is not finite (closure cap exceeded)")
            frontier = nxt
        return cls(tuple(generators), tuple(sorted(seen)))

    @property
    def order(self) -> int:
        return len(self.elements)

    @functools.cached_property
    def _stack(self) -> tuple[np.ndarray, np.ndarray]:
        g = np.array([e.tolist() for e in self.elements], dtype=np.int64)
        # isometries of finite order: inverse = g^(order-1); compute exactly via integer solve
        ginv = np.array([_inverse(e).tolist() for e in self.elements], dtype=np.int64)
        return g, ginv

    def conjugates(self, x: IntMatrix) -> np.ndarray:
        """``g x g^-1`` for every element g, as an (order, n, n) array."""
        g, ginv = self._stack
        return g @ np.array(x.tolist(), dtype=np.int64) @ ginv


def _inverse(g: IntMatrix) -> IntMatrix:
    # finite-order element: walk powers until identity
    ident = IntMatrix.identity(g.nrows)
    prev, cur = ident, g
    for _ in range(GROUP_CAP):
        if cur == ident:
            return prev
        prev, cur = cur, cur @ g
    raise ValueError("element of infinite order")


def _block_permutation(perm: Sequence[int]) -> IntMatrix:
    """Sends H_i to H_perm[i] (0-based)."""
    n = 2 * len(perm)
    rows = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        rows[2 * p][2 * i] = rows[2 * p + 1][2 * i + 1] = 1
    return IntMatrix(rows)


@functools.lru_cache(maxsize=None)
def prime_conjugation_group() -> ConjugationGroup:
    I2 = m_matrix(1)
    gens = [
        _block_permutation((1, 0, 2)),
        _block_permutation((0, 2, 1)),
        IntMatrix.block_diag(m_matrix(2), I2, I2),
        IntMatrix.block_diag(m_matrix(3), I2, I2),
    ]
    return ConjugationGroup.generate(gens)


@functools.lru_cache(maxsize=None)
def double_prime_conjugation_group() -> ConjugationGroup:
    I, Z = IntMatrix.identity(8), IntMatrix.zeros(8, 8)
    gens = [IntMatrix.from_blocks(((Z, I), (I, Z))), IntMatrix.from_blocks(((I, Z), (Z, -I)))]
    return ConjugationGroup.generate(gens)


def _spec_lookup(specs, to_matrix) -> dict[bytes, object]:
    return {np.array(to_matrix(s).tolist(), dtype=np.int64).tobytes(): s for s in specs}


@functools.lru_cache(maxsize=None)
def _prime_lookup():
    return _spec_lookup(all_prime_specs(), rho_prime_matrix)


@functools.lru_cache(maxsize=None)
def _double_prime_lookup():
    return _spec_lookup(all_double_prime_specs(), rho_double_prime_matrix)


def _positive_block(spec: RhoPrimeSpec) -> int:
    if spec.kind != "diagonal":
        return 0
    return next((i + 1 for i, b in enumerate(spec.blocks) if b in (1, 3)), 0)


def _swap_rank(spec: RhoPrimeSpec) -> int:
    return 0 if spec.swapped is None else SWAP_PAIRS.index(spec.swapped)


def _swap_k(spec: RhoPrimeSpec) -> int:
    return spec.blocks[0] if spec.kind == "swap" else 0


def _prime_pair_key(pair: tuple[RhoPrimeSpec, RhoPrimeSpec]):
    # normal form: swaps act on H_1,H_2 with k = 1 on the first swapping map;
    # for diagonal maps rho^1 fixes its positive vector in H_1, rho^2 in H_2
    s1, s2 = pair
    return (
        _swap_rank(s1), _swap_rank(s2),
        _positive_block(s1), _positive_block(s2),
        _swap_k(s1), _swap_k(s2),
        s1, s2,
    )


def _double_prime_pair_key(pair):
    return pair[0].index, pair[1].index


def _single_positive(matrix: IntMatrix, gram: IntMatrix) -> bool:
    fixed = fixed_sublattice_of(matrix, gram)
    return fixed.rank > 0 and signature_of(fixed.gram).positive == 1


def common_fixed_rank(a: IntMatrix, b: IntMatrix) -> int:
    ident = IntMatrix.identity(a.nrows)
    stacked = IntMatrix((a - ident).rows + (b - ident).rows)
    return integer_kernel_basis(stacked).ncols


def _common_fixed_trivial(a: IntMatrix, b: IntMatrix) -> bool:
    return common_fixed_rank(a, b) == 0


def prime_pair_candidates(mode: str = "relaxed") -> list[tuple[RhoPrimeSpec, RhoPrimeSpec]]:
    """Ordered commuting pairs on 3H in which each map fixes exactly one
    positive direction.

    ``mode="strict"`` additionally demands a zero common fixed lattice for
    every pair.  ``mode="relaxed"`` demands it only when both maps preserve
    each H_i; for pairs involving a summand exchange only the positive
    fixed directions are compared, which is how the published census of
    27 + 8 + 8 + 16 classes was obtained.
    """
    if mode not in ("relaxed", "strict"):
        raise ValueError(f"unknown enumeration mode {mode!r}")
    singles = [s for s in all_prime_specs() if _single_positive(rho_prime_matrix(s), THREE_H)]
    mats = {s: rho_prime_matrix(s) for s in singles}
    out = []
    for s in singles:
        for t in singles:
            if not kernels.commutes(mats[s], mats[t]):
                continue
            check = mode == "strict" or (s.kind == t.kind == "diagonal")
            if check and not _common_fixed_trivial(mats[s], mats[t]):
                continue
            out.append((s, t))
    return out


def double_prime_pair_candidates() -> list[tuple[RhoDoublePrimeSpec, RhoDoublePrimeSpec]]:
    specs = all_double_prime_specs()
    mats = {s: rho_double_prime_matrix(s) for s in specs}
    return [
        (s, t)
        for s in specs
        for t in specs
        if kernels.commutes(mats[s], mats[t]) and _common_fixed_trivial(mats[s], mats[t])
    ]


def reduce_orbits(pairs: Iterable[tuple], group: ConjugationGroup, to_matrix: Callable, lookup: dict, key: Callable) -> list[tuple]:
    """Canonical representatives of the pairs modulo simultaneous conjugation.

    Every orbit member must itself be one of the input pairs; this is
    asserted, since a missing member would mean the filter is not
    conjugation-invariant.
    """
    pairs = list(pairs)
    remaining = set(pairs)
    reps = []
    for p in pairs:
        if p not in remaining:
            continue
        c1 = group.conjugates(to_matrix(p[0]))
        c2 = group.conjugates(to_matrix(p[1]))
        orbit = {(lookup[x.tobytes()], lookup[y.tobytes()]) for x, y in zip(c1, c2)}
        if not orbit <= set(pairs):
            raise AssertionError(f"orbit of {p} leaves the candidate set")
        remaining -= orbit
        reps.append(min(orbit, key=key))
    return sorted(reps, key=key)


def pair_category(pair: tuple[RhoPrimeSpec, RhoPrimeSpec]) -> str:
    return "/".join("diagonal" if s.kind == "diagonal" else "swap" for s in pair)


@functools.lru_cache(maxsize=None)
def _enumerate_prime_pairs(mode: str) -> tuple:
    reps = reduce_orbits(
        prime_pair_candidates(mode), prime_conjugation_group(), rho_prime_matrix, _prime_lookup(), _prime_pair_key
    )
    order = {"diagonal/diagonal": 0, "swap/diagonal": 1, "diagonal/swap": 2, "swap/swap": 3}
    return tuple(sorted(reps, key=lambda p: (order[pair_category(p)], _prime_pair_key(p))))


def enumerate_prime_pairs(mode: str = "relaxed") -> list[tuple[RhoPrimeSpec, RhoPrimeSpec]]:
    """Classes of pairs on 3H, grouped diagonal/diagonal, swap/diagonal,
    diagonal/swap, swap/swap (27 + 8 + 8 + 16 in ``relaxed`` mode)."""
    return list(_enumerate_prime_pairs(mode))


@functools.lru_cache(maxsize=None)
def _enumerate_double_prime_pairs() -> tuple:
    return tuple(
        reduce_orbits(
            double_prime_pair_candidates(),
            double_prime_conjugation_group(),
            rho_double_prime_matrix,
            _double_prime_lookup(),
            _double_prime_pair_key,
        )
    )


def enumerate_double_prime_pairs() -> list[tuple[RhoDoublePrimeSpec, RhoDoublePrimeSpec]]:
    return list(_enumerate_double_prime_pairs())


@dataclass(frozen=True)
class InvariantTuple:
    r1: int
    a1: int
    r2: int
    a2: int
    r3: int
    a3: int
    deltas: tuple[int, int, int] | None = None

    @property
    def key(self) -> tuple[int, ...]:
        return self.r1, self.a1, self.r2, self.a2, self.r3, self.a3

    def __add__(self, other: "InvariantTuple") -> "InvariantTuple":
        return InvariantTuple(*(x + y for x, y in zip(self.key, other.key)))

    def __str__(self) -> str:
        return "({},{}|{},{}|{},{})".format(*self.key)


@dataclass(frozen=True)
class InvolutionPair:
    rho1: K3Involution
    rho2: K3Involution
    rho3: K3Involution
    inv1: TwoElementaryInvariants
    inv2: TwoElementaryInvariants
    inv3: TwoElementaryInvariants

    @property
    def invariants(self) -> tuple[TwoElementaryInvariants, ...]:
        return self.inv1, self.inv2, self.inv3

    @property
    def category(self) -> str:
        return pair_category((self.rho1.prime, self.rho2.prime))

    @property
    def common_fixed_rank(self) -> int:
        """Rank of the lattice fixed by both involutions (0 when they meet trivially)."""
        return common_fixed_rank(self.rho1.matrix, self.rho2.matrix)

    @property
    def rank_sum(self) -> int:
        return self.inv1.r + self.inv2.r + self.inv3.r


def _product_involution(a: K3Involution, b: K3Involution) -> K3Involution:
    prime = _prime_lookup()[np.array((rho_prime_matrix(a.prime) @ rho_prime_matrix(b.prime)).tolist(), dtype=np.int64).tobytes()]
    dprime = _double_prime_lookup()[
        np.array((rho_double_prime_matrix(a.double_prime) @ rho_double_prime_matrix(b.double_prime)).tolist(), dtype=np.int64).tobytes()
    ]
    inv = build_involution(prime, dprime)
    if inv.matrix != a.matrix @ b.matrix:
        raise AssertionError("product involution mismatch")
    return inv


@functools.lru_cache(maxsize=None)
def _involution(prime: RhoPrimeSpec, dprime: RhoDoublePrimeSpec) -> K3Involution:
    return build_involution(prime, dprime)


@functools.lru_cache(maxsize=None)
def _full_invariants(inv: K3Involution) -> TwoElementaryInvariants:
    return invariants_of(fixed_sublattice_of(inv.matrix, K3))


def _make_pair(p, d) -> InvolutionPair:
    rho1 = _involution(p[0], d[0])
    rho2 = _involution(p[1], d[1])
    rho3 = _product_involution(rho1, rho2)
    return InvolutionPair(rho1, rho2, rho3, _full_invariants(rho1), _full_invariants(rho2), _full_invariants(rho3))


@functools.lru_cache(maxsize=None)
def _classify(threads: int, mode: str) -> tuple[InvolutionPair, ...]:
    jobs = [(p, d) for p in enumerate_prime_pairs(mode) for d in enumerate_double_prime_pairs()]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return tuple(pool.map(lambda job: _make_pair(*job), jobs))
    return tuple(_make_pair(p, d) for p, d in jobs)


def classify_pairs(threads: int = 1, mode: str = "relaxed") -> list[InvolutionPair]:
    """All pair classes (531 in ``relaxed`` mode), ordered by (rho' pair, rho'' pair)."""
    return list(_classify(max(1, threads), mode))


def invariant_tuple(pair: InvolutionPair) -> InvariantTuple:
    i1, i2, i3 = pair.invariants
    return InvariantTuple(i1.r, i1.a, i2.r, i2.a, i3.r, i3.a, (i1.delta, i2.delta, i3.delta))


def product_is_hyperbolic(pair: InvolutionPair) -> bool:
    """True when rho^3 fixes exactly one positive direction as well.

    When rho^1 and rho^2 share their positive fixed direction the product
    fixes a positive 3-plane, and no triple of Kaehler forms with
    omega_i in the (-1)-eigenspaces of the other two involutions exists.
    """
    return pair.inv3.hyperbolic


def invariant_tuples(threads: int = 1, mode: str = "relaxed") -> set[InvariantTuple]:
    """Distinct (r_1,a_1|r_2,a_2|r_3,a_3) over pairs with hyperbolic product."""
    out = set()
    for pair in classify_pairs(threads, mode):
        if product_is_hyperbolic(pair):
            t = invariant_tuple(pair)
            out.add(InvariantTuple(*t.key))
    return out


def _partial_tuple(mats: Sequence[IntMatrix], gram: IntMatrix) -> tuple[int, ...]:
    out = []
    for m in mats:
        inv = invariants_of_matrix(m, gram)
        out += [inv.r, inv.a]
    return tuple(out)


def prime_tuples(mode: str = "relaxed") -> set[tuple[int, ...]]:
    """(r'_1,a'_1|r'_2,a'_2|r'_3,a'_3) over all pairs on 3H."""
    out = set()
    for s, t in enumerate_prime_pairs(mode):
        a, b = rho_prime_matrix(s), rho_prime_matrix(t)
        if _single_positive(a @ b, THREE_H):
            out.add(_partial_tuple((a, b, a @ b), THREE_H))
    return out


def double_prime_tuples() -> set[tuple[int, ...]]:
    out = set()
    for s, t in enumerate_double_prime_pairs():
        a, b = rho_double_prime_matrix(s), rho_double_prime_matrix(t)
        out.add(_partial_tuple((a, b, a @ b), TWO_MINUS_E8))
    return out


def simple_triples() -> set[tuple[int, int, int]]:
    """Invariants of every simple involution rho' (+) rho''."""
    out = set()
    for s in all_prime_specs():
        if not _single_positive(rho_prime_matrix(s), THREE_H):
            continue
        for d in all_double_prime_specs():
            inv = _full_invariants(_involution(s, d))
            if inv.hyperbolic:
                out.add(inv.triple)
    return out


def kovalev_lee_admissible(r1: int, a1: int, r2: int, a2: int) -> bool:
    """Matching criterion for twisted connected sums of two involution blocks."""
    return r1 + r2 <= 11 or r1 + r2 + a1 + a2 < 22
