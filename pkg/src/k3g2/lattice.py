"""Exact integer linear algebra and lattice invariants.

Everything here works over Python integers and :class:`fractions.Fraction`;
no floating point is used anywhere.  Matrices are small (at most 22x22), so
the algorithms are the textbook ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "IntMatrix",
    "GramLattice",
    "SmithDecomposition",
    "Signature",
    "DiscriminantData",
    "DegenerateForm",
    "smith_normal_form",
    "integer_kernel_basis",
    "signature_of",
    "discriminant_data",
    "hyperbolic_plane",
    "minus_e8",
    "rank_one",
    "rescale",
    "direct_sum",
    "k3_gram",
    "E8_CARTAN",
    "MAX_COSETS",
]

# full coset enumeration of L*/L is capped here (a <= 11 for every K3 fixed lattice)
MAX_COSETS = 2 ** 12


class DegenerateForm(ValueError):
    """Raised when a Gram matrix is singular but a nondegenerate one is needed."""


class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            ncols = 0
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        if not cols:
            return cls.zeros(nrows, 0)
        return cls(zip(*cols))

    @classmethod
    def block_diag(cls, *blocks: "IntMatrix") -> "IntMatrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls(out, ncols=m)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        rows = []
        for block_row in blocks:
            for i in range(block_row[0].nrows):
                rows.append([x for b in block_row for x in b.rows[i]])
        return cls(rows)

    # -- basic protocol -------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __lt__(self, other: "IntMatrix") -> bool:
        return (self.shape, self.rows) < (other.shape, other.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def flat(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.rows))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    # -- arithmetic -----------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows), ncols=self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows],
            ncols=other.ncols,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self.rows], ncols=self.ncols)

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product; works for int or Fraction entries in ``v``."""
        return [sum(a * x for a, x in zip(row, v)) for row in self.rows]

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``A = U @ D @ V`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    ``U_inv`` and ``V_inv`` are carried along because kernels and dual bases
    need them and inverting afterwards would be wasteful.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix = field(repr=False)
    V_inv: IntMatrix = field(repr=False)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero elementary divisors, including the trivial ones equal to 1."""
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Returns ``U, D, V`` with ``A = U D V``; the diagonal of ``D`` is
    nonnegative and each nonzero entry divides the next.
    """
    m, n = A.shape
    a = A.tolist()
    U = IntMatrix.identity(m).tolist()      # A = U D V, updated by inverse ops
    Uinv = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()
    Vinv = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        Uinv[i], Uinv[j] = Uinv[j], Uinv[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        Uinv[dst] = [x + c * y for x, y in zip(Uinv[dst], Uinv[src])]
        for row in U:
            row[src] -= c * row[dst]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        Uinv[i] = [-x for x in Uinv[i]]
        for row in U:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in Vinv:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for row in a:
            row[dst] += c * row[src]
        for row in Vinv:
            row[dst] += c * row[src]
        V[src] = [x - c * y for x, y in zip(V[src], V[dst])]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, -q)
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, -q)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and a[t][t] < 0:
            negate_row(t)
    return SmithDecomposition(
        U=IntMatrix(U, ncols=m),
        D=IntMatrix(a, ncols=n),
        V=IntMatrix(V, ncols=n),
        U_inv=IntMatrix(Uinv, ncols=m),
        V_inv=IntMatrix(Vinv, ncols=n),
    )


def integer_kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns of the result form a basis of ``{x in Z^n : A x = 0}``.

    The basis is primitive: it extends to a basis of ``Z^n``.
    """
    snf = smith_normal_form(A)
    n = A.ncols
    cols = [snf.V_inv.column(j) for j in range(snf.rank, n)]
    return IntMatrix.from_columns(cols, n)


@dataclass(frozen=True)
class Signature:
    positive: int
    zero: int
    negative: int

    @property
    def rank(self) -> int:
        return self.positive + self.zero + self.negative

    def astuple(self) -> tuple[int, int, int]:
        return self.positive, self.zero, self.negative


def signature_of(gram: IntMatrix) -> Signature:
    """Inertia of a symmetric matrix by exact congruence diagonalisation."""
    if not gram.is_symmetric():
        raise ValueError("signature of a non-symmetric matrix")
    n = gram.nrows
    a = [[Fraction(x) for x in r] for r in gram.rows]
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # e_i -> e_i + e_j gives diagonal entry 2 a_ij != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for k in active:
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return Signature(pos, n - pos - neg, neg)


@dataclass(frozen=True)
class DiscriminantData:
    """Structure of the discriminant group ``L*/L`` of a nondegenerate lattice.

    ``generators`` are dual vectors in lattice coordinates (rational); the
    i-th has order ``invariant_factors[i]`` in ``L*/L``.
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def coset_representatives(self) -> Iterator[tuple[Fraction, ...]]:
        """All ``sum c_i g_i`` with ``0 <= c_i < d_i``; capped at MAX_COSETS."""
        if self.order > MAX_COSETS:
            raise ValueError(f"discriminant group of order {self.order} exceeds enumeration cap")
        rank = len(self.generators[0]) if self.generators else 0
        for coeffs in itertools.product(*(range(d) for d in self.invariant_factors)):
            v = [Fraction(0)] * rank
            for c, g in zip(coeffs, self.generators):
                if c:
                    v = [x + c * y for x, y in zip(v, g)]
            yield tuple(v)


def discriminant_data(gram: IntMatrix) -> DiscriminantData:
    snf = smith_normal_form(gram)
    if snf.rank < gram.nrows:
        raise DegenerateForm("DegenerateForm: Gram matrix is singular")
    factors, gens = [], []
    for i, d in enumerate(snf.diagonal):
        if d > 1:
            factors.append(d)
            gens.append(tuple(Fraction(x, d) for x in snf.V_inv.column(i)))
    return DiscriminantData(tuple(factors), tuple(gens))


def quadratic_norm(gram: IntMatrix, v: Sequence) -> Fraction:
    """``v^T G v`` for a rational or integer coordinate vector."""
    Gv = gram.apply(v)
    return sum((x * y for x, y in zip(v, Gv)), Fraction(0))


# -- standard lattices ------------------------------------------------------

# Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))
E8_CARTAN = IntMatrix(
    [
        [2 if i == j else (-1 if (i + 1, j + 1) in _E8_EDGES or (j + 1, i + 1) in _E8_EDGES else 0) for j in range(8)]
        for i in range(8)
    ]
)


@dataclass(frozen=True)
class GramLattice:
    """A lattice given by its Gram matrix in a fixed basis."""

    gram: IntMatrix

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @property
    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def det(self) -> int:
        return self.gram.det()

    def signature(self) -> Signature:
        return signature_of(self.gram)


def hyperbolic_plane() -> GramLattice:
    return GramLattice(IntMatrix([[0, 1], [1, 0]]))


def minus_e8() -> GramLattice:
    return GramLattice(-E8_CARTAN)


def rank_one(k: int) -> GramLattice:
    """The lattice 1(k): one generator of norm ``k``."""
    return GramLattice(IntMatrix([[k]]))


def rescale(lattice: GramLattice, k: int) -> GramLattice:
    return GramLattice(lattice.gram.scale(k))


def direct_sum(*lattices: GramLattice) -> GramLattice:
    return GramLattice(IntMatrix.block_diag(*(L.gram for L in lattices)))


def k3_gram() -> GramLattice:
    """3H + 2(-E8) in the standard basis w_1..w_22."""
    H, E = hyperbolic_plane(), minus_e8()
    return direct_sum(H, H, H, E, E)
