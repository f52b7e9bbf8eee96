import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3g2.involutions import (
    K3,
    THREE_H,
    TWO_MINUS_E8,
    RhoDoublePrimeSpec,
    RhoPrimeSpec,
    all_double_prime_specs,
    all_prime_specs,
    build_involution,
    combine,
    delta_brute_force,
    delta_from_generators,
    fixed_sublattice,
    invariants_of,
    invariants_of_matrix,
    m_matrix,
    rho_double_prime_matrix,
    rho_prime_matrix,
)
from k3g2.lattice import IntMatrix
from k3g2.lattice import direct_sum, hyperbolic_plane, rank_one, rescale, minus_e8


def test_m_matrices_are_involutive_isometries_of_h():
    H = hyperbolic_plane().gram
    for i in range(1, 5):
        M = m_matrix(i)
        assert M @ M == IntMatrix.identity(2)
        assert M.T @ H @ M == H
    with pytest.raises(ValueError):
        m_matrix(5)


def test_spec_counts():
    specs = all_prime_specs()
    assert sum(s.kind == "diagonal" for s in specs) == 64
    assert sum(s.kind == "swap" for s in specs) == 48
    assert len(all_double_prime_specs()) == 6


@pytest.mark.parametrize(
    "blocks, want",
    [((1, 2, 2), (2, 0, 0)), ((1, 2, 4), (3, 1, 1)), ((1, 4, 4), (4, 2, 1)),
     ((3, 2, 2), (1, 1, 1)), ((3, 2, 4), (2, 2, 1)), ((3, 4, 4), (3, 3, 1))],
)
def test_diagonal_invariants(blocks, want):
    assert invariants_of_matrix(rho_prime_matrix(RhoPrimeSpec.diagonal(*blocks)), THREE_H).triple == want


def test_swap_invariants():
    assert invariants_of_matrix(rho_prime_matrix(RhoPrimeSpec.swap((1, 2), 1, 2)), THREE_H).triple == (2, 2, 0)
    assert invariants_of_matrix(rho_prime_matrix(RhoPrimeSpec.swap((1, 2), 1, 4)), THREE_H).triple == (3, 3, 1)


@pytest.mark.parametrize("j, want", [(1, (16, 0, 0)), (2, (8, 0, 0)), (3, (8, 0, 0)), (4, (0, 0, 0)), (5, (8, 8, 0)), (6, (8, 8, 0))])
def test_double_prime_invariants(j, want):
    assert invariants_of_matrix(rho_double_prime_matrix(RhoDoublePrimeSpec(j)), TWO_MINUS_E8).triple == want


def test_swap_fixed_lattice_is_h2():
    # isometric to H(2): the fixed lattice of the plain exchange has Gram [[0,2],[2,0]]
    inv = invariants_of_matrix(rho_prime_matrix(RhoPrimeSpec.swap((1, 2), 1, 2)), THREE_H)
    h2 = invariants_of_matrix(IntMatrix.identity(2), rescale(hyperbolic_plane(), 2).gram)
    assert inv.triple == h2.triple == (2, 2, 0)


def test_direct_sum_rule_matches_computation():
    parts = [rank_one(2), rank_one(-2), rescale(minus_e8(), 2)]
    whole = direct_sum(*parts)
    want = combine(*(invariants_of_matrix(IntMatrix.identity(p.rank), p.gram) for p in parts))
    got = invariants_of_matrix(IntMatrix.identity(whole.rank), whole.gram)
    assert got.triple == want.triple == (10, 10, 1)


@given(st.sampled_from(all_prime_specs()), st.sampled_from(all_double_prime_specs()))
@settings(max_examples=120, deadline=None)
def test_delta_brute_force_equals_generator_shortcut(p, d):
    inv = build_involution(p, d)
    fixed = fixed_sublattice(inv)
    if fixed.rank:
        assert delta_brute_force(fixed.gram) == delta_from_generators(fixed.gram)


@given(st.sampled_from(all_prime_specs()), st.sampled_from(all_double_prime_specs()))
@settings(max_examples=120, deadline=None)
def test_full_invariants_are_direct_sums(p, d):
    inv = build_involution(p, d)
    assert inv.matrix.T @ K3 @ inv.matrix == K3
    parts = combine(invariants_of_matrix(rho_prime_matrix(p), THREE_H),
                    invariants_of_matrix(rho_double_prime_matrix(d), TWO_MINUS_E8))
    assert invariants_of(fixed_sublattice(inv)).triple == parts.triple
