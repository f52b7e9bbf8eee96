import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3g2.involutions import RhoPrimeSpec, rho_prime_matrix
from k3g2.pairs import (
    classify_pairs,
    common_fixed_rank,
    double_prime_conjugation_group,
    enumerate_double_prime_pairs,
    enumerate_prime_pairs,
    invariant_tuples,
    kovalev_lee_admissible,
    pair_category,
    prime_conjugation_group,
    product_is_hyperbolic,
    simple_triples,
)


def test_group_orders():
    assert prime_conjugation_group().order == 384
    assert double_prime_conjugation_group().order == 8


def test_prime_pair_subcounts():
    counts = {}
    for p in enumerate_prime_pairs():
        counts[pair_category(p)] = counts.get(pair_category(p), 0) + 1
    assert counts == {"diagonal/diagonal": 27, "swap/diagonal": 8, "diagonal/swap": 8, "swap/swap": 16}


def test_strict_mode_keeps_only_trivially_meeting_pairs():
    strict = enumerate_prime_pairs("strict")
    assert len(strict) == 36
    assert len(classify_pairs(mode="strict")) == 324
    assert all(p.common_fixed_rank == 0 for p in classify_pairs(mode="strict"))


def test_double_prime_pairs():
    got = {(s.index, t.index) for s, t in enumerate_double_prime_pairs()}
    assert got == {(1, 4), (2, 3), (2, 4), (4, 1), (4, 2), (4, 4), (4, 5), (5, 4), (5, 6)}


def test_pair_and_tuple_counts():
    pairs = classify_pairs()
    assert len(pairs) == 531
    assert len(invariant_tuples()) == 342
    assert sum(not product_is_hyperbolic(p) for p in pairs) == 72


def test_classification_independent_of_threads():
    a = [(p.rho1.label, p.rho2.label) for p in classify_pairs(1)]
    b = [(p.rho1.label, p.rho2.label) for p in classify_pairs(4)]
    assert a == b


def test_rank_sum_tracks_common_fixed_lattice():
    for p in classify_pairs():
        assert p.rank_sum == 22 + 2 * p.common_fixed_rank


def test_shared_negative_vector_example():
    # the exchange rhohat'_12 and rho'_441 both fix (1,-1,1,-1,0,0)
    a = rho_prime_matrix(RhoPrimeSpec.swap((1, 2), 1, 2))
    b = rho_prime_matrix(RhoPrimeSpec.diagonal(4, 4, 1))
    v = [1, -1, 1, -1, 0, 0]
    assert a.apply(v) == v and b.apply(v) == v
    assert common_fixed_rank(a, b) >= 1


def test_simple_triples():
    got = simple_triples()
    assert len(got) == 28
    assert {(1, 1, 1), (10, 10, 0), (11, 11, 1), (2, 0, 0), (10, 10, 1)} <= got


@given(st.integers(1, 20), st.integers(0, 11), st.integers(1, 20), st.integers(0, 11))
def test_kovalev_lee_symmetric_and_sum_only(r1, a1, r2, a2):
    v = kovalev_lee_admissible(r1, a1, r2, a2)
    assert v == kovalev_lee_admissible(r2, a2, r1, a1)
    assert v == kovalev_lee_admissible(r1 + r2, a1 + a2, 0, 0)


def test_kovalev_lee_boundary():
    assert kovalev_lee_admissible(5, 5, 6, 6)          # r1 + r2 = 11
    assert not kovalev_lee_admissible(6, 6, 6, 4)      # 12 and 22
    assert kovalev_lee_admissible(6, 4, 6, 5)          # 12 and 21
