import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3g2.catalog import load_nikulin
from k3g2.g2 import (
    EmptyLocus,
    Inadmissible,
    InvalidTriple,
    InvariantInput,
    LocusKind,
    admissible,
    closed_form,
    fixed_locus_betti,
    fixed_locus_topology,
    orbifold_betti,
    outcome,
    resolve_betti,
    singular_locus,
    SingularLocusModel,
)
from k3g2.torus import ConstructionCase

NIKULIN = sorted(load_nikulin())
triples = st.sampled_from(NIKULIN)
CASES = list(ConstructionCase)


def test_locus_topology():
    assert fixed_locus_topology(10, 10, 0).kind is LocusKind.EMPTY
    assert fixed_locus_topology(10, 8, 0).kind is LocusKind.TWO_ELLIPTIC
    t = fixed_locus_topology(1, 1, 1)
    assert (t.genus, t.rational_count) == (10, 0)
    with pytest.raises(InvalidTriple):
        fixed_locus_topology(3, 2, 1)


def test_locus_betti():
    assert fixed_locus_betti(fixed_locus_topology(1, 1, 1)) == (1, 20)
    assert fixed_locus_betti(fixed_locus_topology(10, 8, 0)) == (2, 4)
    assert fixed_locus_betti(fixed_locus_topology(2, 0, 0)) == (2, 20)
    with pytest.raises(EmptyLocus):
        fixed_locus_betti(fixed_locus_topology(10, 10, 0))


@given(triples)
def test_locus_betti_closed_forms(t):
    r, a, d = t
    topo = fixed_locus_topology(r, a, d)
    if topo.kind is LocusKind.EMPTY:
        return
    assert fixed_locus_betti(topo) == ((r - a) // 2 + 1, 22 - r - a)


@pytest.mark.parametrize("case", CASES)
def test_orbifold_betti(case):
    assert orbifold_betti(case) == (0, 0, 23)


def test_orbifold_with_common_fixed_lattice():
    assert orbifold_betti("2", common_fixed_rank=2) == (0, 2, 21)


def test_singular_locus_examples():
    loc = singular_locus("1", InvariantInput.from_triples(None, (1, 1, 1)))
    assert (loc.b0, loc.b1) == (2, 42)
    loc = singular_locus("3", InvariantInput.from_triples((10, 10, 0), (1, 1, 1), (11, 11, 1)))
    assert (loc.b0, loc.b1) == (0, 48)
    loc = singular_locus("d4", InvariantInput.from_triples(None, (1, 1, 1), (11, 11, 1)))
    assert (loc.b0, loc.b1) == (8, 88)


def test_resolve_betti():
    assert resolve_betti((0, 0, 23), SingularLocusModel((), 2, 42)) == (0, 2, 65)
    assert resolve_betti((0, 0, 23), SingularLocusModel((), 0, 48)) == (0, 0, 71)
    assert resolve_betti((0, 0, 23), SingularLocusModel((), 0, 0)) == (0, 0, 23)


def test_outcome_examples():
    o = outcome("2", InvariantInput.from_triples((1, 1, 1), (11, 11, 1)))
    assert o.betti == (4, 67) and o.pi1 == "trivial" and o.holonomy == "G2"
    assert outcome("3", InvariantInput.from_triples((10, 10, 0), (1, 1, 1), (11, 11, 1))).betti == (0, 71)
    o = outcome("1", InvariantInput.from_triples(None, (10, 10, 1)))
    assert o.betti == (2, 29) and o.barely and o.holonomy == "SU(3)⋊Z2"


def test_admissibility_reasons():
    base = (10, 10, 0)
    ok, why = admissible("3", InvariantInput.from_triples(base, (10, 8, 0), (2, 0, 0)))
    assert not ok and "TwoElliptic" in why
    ok, why = admissible("3", InvariantInput.from_triples(base, (6, 2, 1), (6, 4, 1)))
    assert not ok and "r - a" in why
    ok, why = admissible("3", InvariantInput.from_triples(base, (12, 10, 1), (0, 0, 0)))
    assert not ok and "r + a = 22" in why
    assert admissible("1", InvariantInput.from_triples(None, (10, 10, 1)))[0]
    assert not admissible("1", InvariantInput.from_triples(None, (10, 10, 0)))[0]
    with pytest.raises(Inadmissible):
        outcome("3", InvariantInput.from_triples((1, 1, 1), (1, 1, 1), (20, 2, 1)))


def test_case2_one_empty_locus_is_barely():
    o = outcome("2", InvariantInput.from_triples((10, 10, 0), (1, 1, 1)))
    assert o.barely and o.betti == closed_form("1", InvariantInput.from_triples(None, (1, 1, 1)))


@given(triples, triples)
@settings(max_examples=300, deadline=None)
def test_two_betti_paths_agree(s, t):
    # outcome asserts the composition against the closed form internally
    for case in (ConstructionCase.CASE2, ConstructionCase.D4):
        inp = InvariantInput.from_triples(s, t) if case is ConstructionCase.CASE2 else InvariantInput.from_triples(None, s, t)
        if admissible(case, inp)[0]:
            o = outcome(case, inp)
            assert o.b1 == 0
            assert o.betti == closed_form(case, inp)
            assert o.pi1 != "trivial" or o.holonomy == "G2"


@given(triples, triples)
@settings(max_examples=300, deadline=None)
def test_case3_paths_agree(s, t):
    inp = InvariantInput.from_triples((10, 10, 0), s, t)
    if admissible("3", inp)[0]:
        assert outcome("3", inp).betti == closed_form("3", inp)


@given(triples)
def test_case1_paths_agree(t):
    inp = InvariantInput.from_triples(None, t)
    if admissible("1", inp)[0]:
        o = outcome("1", inp)
        assert o.betti == (t[0] - t[1] + 2, 69 - t[0] - 3 * t[1])
