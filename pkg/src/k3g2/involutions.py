"""Simple involutions of the K3 lattice and their (r, a, delta) invariants."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import kernels
from .lattice import (
    IntMatrix,
    discriminant_data,
    integer_kernel_basis,
    k3_gram,
    quadratic_norm,
    signature_of,
)

__all__ = [
    "NotTwoElementary",
    "RhoPrimeSpec",
    "RhoDoublePrimeSpec",
    "K3Involution",
    "FixedSublattice",
    "TwoElementaryInvariants",
    "m_matrix",
    "rho_prime_matrix",
    "rho_double_prime_matrix",
    "build_involution",
    "fixed_sublattice",
    "fixed_sublattice_of",
    "invariants_of",
    "invariants_of_matrix",
    "combine",
    "delta_brute_force",
    "delta_from_generators",
    "is_simple_nonsymplectic_candidate",
    "all_prime_specs",
    "all_double_prime_specs",
    "THREE_H",
    "TWO_MINUS_E8",
    "K3",
]

K3 = k3_gram().gram
THREE_H = IntMatrix([row[:6] for row in K3.rows[:6]])
TWO_MINUS_E8 = IntMatrix([row[6:] for row in K3.rows[6:]])

_M = {
    1: IntMatrix([[1, 0], [0, 1]]),
    2: IntMatrix([[-1, 0], [0, -1]]),
    3: IntMatrix([[0, 1], [1, 0]]),
    4: IntMatrix([[0, -1], [-1, 0]]),
}
SWAP_PAIRS = ((1, 2), (1, 3), (2, 3))


class NotTwoElementary(ValueError):
    pass


def m_matrix(i: int) -> IntMatrix:
    """One of the four isometries M_1..M_4 of the hyperbolic plane."""
    try:
        return _M[i]
    except KeyError:
        raise ValueError(f"M-matrix index must be in 1..4, got {i}") from None


@dataclass(frozen=True, order=True)
class RhoPrimeSpec:
    """Action on 3H = H_1 + H_2 + H_3.

    ``kind == "diagonal"``: ``blocks = (j, k, l)``, block M_j on H_1 etc.
    ``kind == "swap"``: ``swapped`` summands are exchanged through M_k, the
    remaining summand carries M_m; ``blocks = (k, m)``.
    """

    kind: str
    blocks: tuple[int, ...]
    swapped: tuple[int, int] | None = None

    @classmethod
    def diagonal(cls, j: int, k: int, l: int) -> "RhoPrimeSpec":
        for x in (j, k, l):
            m_matrix(x)
        return cls("diagonal", (j, k, l))

    @classmethod
    def swap(cls, pair: tuple[int, int], k: int, m: int) -> "RhoPrimeSpec":
        pair = tuple(sorted(pair))
        if pair not in SWAP_PAIRS:
            raise ValueError(f"invalid swapped pair {pair}")
        m_matrix(k), m_matrix(m)
        return cls("swap", (k, m), pair)

    @property
    def fixed_summand(self) -> int | None:
        if self.swapped is None:
            return None
        return ({1, 2, 3} - set(self.swapped)).pop()

    @property
    def label(self) -> str:
        if self.kind == "diagonal":
            return "rho'_{%d%d%d}" % self.blocks
        i, j = self.swapped
        return "rhohat'_{%d%d}[H%d<->H%d]" % (self.blocks + (i, j))

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "blocks": list(self.blocks)}
        if self.swapped:
            d["swapped"] = list(self.swapped)
        return d


@dataclass(frozen=True, order=True)
class RhoDoublePrimeSpec:
    """One of the six actions on 2(-E8), indexed 1..6."""

    index: int

    def __post_init__(self):
        if self.index not in range(1, 7):
            raise ValueError(f"rho'' index must be in 1..6, got {self.index}")

    @property
    def label(self) -> str:
        return f"rho''_{self.index}"


def rho_prime_matrix(spec: RhoPrimeSpec) -> IntMatrix:
    zero = IntMatrix.zeros(2, 2)
    grid = [[zero] * 3 for _ in range(3)]
    if spec.kind == "diagonal":
        for i, b in enumerate(spec.blocks):
            grid[i][i] = m_matrix(b)
    else:
        k, m = spec.blocks
        i, j = (x - 1 for x in spec.swapped)
        grid[i][j] = grid[j][i] = m_matrix(k)
        f = spec.fixed_summand - 1
        grid[f][f] = m_matrix(m)
    return IntMatrix.from_blocks(grid)


def rho_double_prime_matrix(spec: RhoDoublePrimeSpec) -> IntMatrix:
    I, Z = IntMatrix.identity(8), IntMatrix.zeros(8, 8)
    layout = {
        1: ((I, Z), (Z, I)),
        2: ((I, Z), (Z, -I)),
        3: ((-I, Z), (Z, I)),
        4: ((-I, Z), (Z, -I)),
        5: ((Z, I), (I, Z)),
        6: ((Z, -I), (-I, Z)),
    }[spec.index]
    return IntMatrix.from_blocks(layout)


def all_prime_specs() -> list[RhoPrimeSpec]:
    """All 64 diagonal and 48 swap specs on 3H."""
    out = [RhoPrimeSpec.diagonal(j, k, l) for j in range(1, 5) for k in range(1, 5) for l in range(1, 5)]
    out += [RhoPrimeSpec.swap(p, k, m) for p in SWAP_PAIRS for k in range(1, 5) for m in range(1, 5)]
    return out


def all_double_prime_specs() -> list[RhoDoublePrimeSpec]:
    return [RhoDoublePrimeSpec(t) for t in range(1, 7)]


@dataclass(frozen=True)
class K3Involution:
    matrix: IntMatrix
    prime: RhoPrimeSpec
    double_prime: RhoDoublePrimeSpec

    @property
    def label(self) -> str:
        return f"{self.prime.label} + {self.double_prime.label}"


def build_involution(prime: RhoPrimeSpec, double_prime: RhoDoublePrimeSpec) -> K3Involution:
    """Assemble rho = rho' (+) rho'' as a 22x22 matrix and check it."""
    mat = IntMatrix.block_diag(rho_prime_matrix(prime), rho_double_prime_matrix(double_prime))
    if not kernels.is_involutive_isometry(mat, K3):
        raise AssertionError(f"{prime.label} + {double_prime.label} is not an involutive isometry")
    return K3Involution(mat, prime, double_prime)


@dataclass(frozen=True)
class FixedSublattice:
    basis: IntMatrix  # columns span the fixed vectors
    gram: IntMatrix

    @property
    def rank(self) -> int:
        return self.gram.nrows


@functools.lru_cache(maxsize=None)
def fixed_sublattice_of(matrix: IntMatrix, gram: IntMatrix) -> FixedSublattice:
    """Kernel of ``matrix - I`` with the restricted form."""
    n = matrix.nrows
    basis = integer_kernel_basis(matrix - IntMatrix.identity(n))
    return FixedSublattice(basis, basis.T @ gram @ basis)


def fixed_sublattice(inv: K3Involution) -> FixedSublattice:
    return fixed_sublattice_of(inv.matrix, K3)


@dataclass(frozen=True, order=True)
class TwoElementaryInvariants:
    r: int
    a: int
    delta: int
    hyperbolic: bool = False

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.r, self.a, self.delta

    def __str__(self) -> str:
        return f"({self.r},{self.a},{self.delta})"


def delta_brute_force(gram: IntMatrix) -> int:
    """delta over every coset of L*/L (the group must be 2-elementary)."""
    disc = discriminant_data(gram)
    gens2 = [[int(2 * x) for x in g] for g in disc.generators]
    return int(kernels.count_odd_cosets(gens2, gram) > 0)


def delta_from_generators(gram: IntMatrix) -> int:
    """delta from the generators of L*/L alone.

    For an even 2-elementary lattice 2 b(x, y) is integral on the dual, so
    the norm is additive mod Z and generators suffice.
    """
    disc = discriminant_data(gram)
    return int(any(quadratic_norm(gram, g).denominator != 1 for g in disc.generators))


@functools.lru_cache(maxsize=None)
def _invariants_of_gram(gram: IntMatrix) -> TwoElementaryInvariants:
    r = gram.nrows
    if r == 0:
        return TwoElementaryInvariants(0, 0, 0, False)
    disc = discriminant_data(gram)
    if any(d != 2 for d in disc.invariant_factors):
        raise NotTwoElementary(f"NotTwoElementary: invariant factors {disc.invariant_factors}")
    sig = signature_of(gram)
    return TwoElementaryInvariants(
        r=r,
        a=len(disc.invariant_factors),
        delta=delta_brute_force(gram),
        hyperbolic=sig.positive == 1 and sig.zero == 0,
    )


def invariants_of(fixed: FixedSublattice) -> TwoElementaryInvariants:
    return _invariants_of_gram(fixed.gram)


def invariants_of_matrix(matrix: IntMatrix, gram: IntMatrix = K3) -> TwoElementaryInvariants:
    return invariants_of(fixed_sublattice_of(matrix, gram))


def combine(*parts: TwoElementaryInvariants) -> TwoElementaryInvariants:
    """Invariants of an orthogonal direct sum of 2-elementary lattices."""
    return TwoElementaryInvariants(
        r=sum(p.r for p in parts),
        a=sum(p.a for p in parts),
        delta=max((p.delta for p in parts), default=0),
    )


def is_simple_nonsymplectic_candidate(inv: K3Involution) -> bool:
    fixed = fixed_sublattice(inv)
    if fixed.rank == 0:
        return False
    try:
        return invariants_of(fixed).hyperbolic
    except NotTwoElementary:
        return False


def coset_norms_mod_one(gram: IntMatrix, shifts: int = 3) -> Iterator[tuple[Fraction, ...]]:
    """For each coset, the norms (mod 1) of several representatives.

    The representative ``x + l`` for a few lattice vectors ``l`` is tried;
    on an even lattice all of them must agree.
    """
    disc = discriminant_data(gram)
    r = gram.nrows
    lattice_shifts = [[int(i == j) * (s + 1) for j in range(r)] for s, i in zip(range(shifts), range(r))]
    for x in disc.coset_representatives():
        norms = [quadratic_norm(gram, x) % 1]
        for l in lattice_shifts:
            norms.append(quadratic_norm(gram, [a + b for a, b in zip(x, l)]) % 1)
        yield tuple(norms)
