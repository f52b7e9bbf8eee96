import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from k3g2.lattice import (
    IntMatrix,
    direct_sum,
    discriminant_data,
    hyperbolic_plane,
    integer_kernel_basis,
    k3_gram,
    minus_e8,
    rank_one,
    signature_of,
    smith_normal_form,
)
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def symmetric(max_n=4):
    def build(n):
        return st.lists(small, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(lambda xs: _sym(n, xs))

    return st.integers(1, max_n).flatmap(build)


def _sym(n, xs):
    it = iter(xs)
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = next(it)
    return a


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_smith_form_matches_sympy(rows):
    A = IntMatrix(rows)
    snf = smith_normal_form(A)
    assert snf.U @ snf.D @ snf.V == A
    assert abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1
    want = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    got = [abs(want[i, i]) for i in range(min(want.shape))]
    assert list(snf.diagonal) == got


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_kernel_basis_spans_kernel(rows):
    A = IntMatrix(rows)
    K = integer_kernel_basis(A)
    assert K.ncols == A.ncols - sympy.Matrix(rows).rank()
    if K.ncols:
        assert all(x == 0 for x in (A @ K).flat())
        assert all(d == 1 for d in smith_normal_form(K).invariant_factors)


@given(symmetric())
@settings(max_examples=150, deadline=None)
def test_signature_matches_eigenvalues(rows):
    sig = signature_of(IntMatrix(rows))
    M = sympy.Matrix(rows)
    charpoly = M.charpoly()
    roots = sympy.Poly(charpoly).all_roots()
    pos = sum(1 for r in roots if r > 0)
    neg = sum(1 for r in roots if r < 0)
    assert (sig.positive, sig.negative) == (pos, neg)


def test_k3_lattice():
    K3 = k3_gram()
    assert K3.rank == 22 and K3.is_even
    assert K3.det() == -1
    assert K3.signature().astuple() == (3, 0, 19)


def test_e8_unimodular():
    E = minus_e8()
    assert E.det() == 1
    assert E.signature().astuple() == (0, 0, 8)


def test_discriminant_of_rank_one():
    d = discriminant_data(rank_one(-2).gram)
    assert d.invariant_factors == (2,)
    assert discriminant_data(hyperbolic_plane().gram).invariant_factors == ()
    assert discriminant_data(direct_sum(rank_one(2), rank_one(-2)).gram).invariant_factors == (2, 2)
