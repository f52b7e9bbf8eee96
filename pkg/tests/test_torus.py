from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3g2 import torus
from k3g2.lattice import IntMatrix
from k3g2.torus import (
    AffineTorusMap,
    ConstructionCase,
    NotFinite,
    builtin_action,
    compose,
    fixed_set,
    generate_group,
    grid_fixed_set,
    inverse,
)


def _rotations():
    import itertools

    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            rows = [[0] * 3 for _ in range(3)]
            for i, j in enumerate(perm):
                rows[i][j] = signs[i]
            m = IntMatrix(rows)
            if m.det() == 1:
                out.append(m)
    return out


ROTATIONS = _rotations()
eighths = st.integers(0, 7).map(lambda k: F(k, 8))
maps = st.builds(lambda A, t: AffineTorusMap(A, t), st.sampled_from(ROTATIONS), st.tuples(eighths, eighths, eighths))


def test_rotation_count():
    assert len(ROTATIONS) == 24


def test_rejects_bad_maps():
    with pytest.raises(ValueError):
        AffineTorusMap(IntMatrix.diag([1, 1, -1]), (0, 0, 0))
    with pytest.raises(ValueError):
        AffineTorusMap(IntMatrix.identity(3), (F(1, 3), 0, 0))


@given(maps, maps)
@settings(max_examples=80, deadline=None)
def test_composition_and_inverse(f, g):
    x = (F(1, 8), F(3, 8), F(5, 8))
    assert compose(f, g)(x) == f(g(x))
    assert compose(f, inverse(f)).is_identity()


@given(maps)
@settings(max_examples=20, deadline=None)
def test_fixed_set_matches_grid_oracle(f):
    # fixed points of maps with 1/8 translations lie on the 1/16 grid
    fs = fixed_set(f)
    pts, pieces = grid_fixed_set(f, 16)
    assert fs.grid_points(16) == pts
    if fs.dimension is not None and fs.dimension < 3:
        assert len(fs) == pieces
    for c in fs.components:
        assert f(c.base_point) == c.base_point


def test_builtin_generators():
    c1 = builtin_action(ConstructionCase.CASE1)
    assert c1.psi1 == AffineTorusMap.signed((1, -1, -1), (F(1, 2), 0, F(1, 2)))
    assert builtin_action("2").psi2.translation == (0, 0, F(1, 2))
    d4 = builtin_action("d4")
    assert d4.psi1.translation == (F(1, 4), F(1, 4), 0)
    assert d4.psi1.linear == IntMatrix.diag([1, -1, -1])


def test_third_rows():
    # psi3 = psi1 psi2 for the Z2^2 cases
    assert str(builtin_action("1").element("psi3").map) == "(-x1+1/2, -x2, x3+1/2)"
    assert str(builtin_action("2").element("psi3").map) == "(-x1, -x2, x3+1/2)"
    assert str(builtin_action("3").element("psi3").map) == "(-x1, -x2, x3)"


def test_case1_fixed_sets():
    a = builtin_action("1")
    assert fixed_set(a.element("psi1").map).empty
    assert fixed_set(a.element("psi3").map).empty
    assert len(fixed_set(a.element("psi2").map)) == 4


def test_d4_gamma11():
    fs = fixed_set(builtin_action("d4").element("gamma_11").map)
    assert {c.base_point[:2] for c in fs.components} == {
        (F(1, 8) + F(e1, 2), F(1, 8) + F(e2, 2)) for e1 in (0, 1) for e2 in (0, 1)
    }
    assert all(c.directions == ((0, 0, 1),) for c in fs.components)


def test_group_structure():
    g3 = builtin_action("3").group
    assert g3.order == 4 and g3.is_abelian()
    g4 = builtin_action("d4").group
    assert g4.order == 8 and not g4.is_abelian() and g4.is_dihedral()
    assert generate_group([AffineTorusMap.identity()]).order == 1


def test_every_element_is_a_rotation():
    for case in ConstructionCase:
        for e in builtin_action(case).elements:
            A = e.map.linear
            assert A.det() == 1 and set(A.flat()) <= {-1, 0, 1}


def test_group_cap(monkeypatch):
    monkeypatch.setattr(torus, "GROUP_CAP", 100)
    gens = [AffineTorusMap.signed((1, 1, 1), t) for t in ((F(1, 8), 0, 0), (0, F(1, 8), 0), (0, 0, F(1, 8)))]
    with pytest.raises(NotFinite):
        generate_group(gens)
    assert generate_group(gens[:2]).order == 64


def test_identity_fixes_everything():
    fs = fixed_set(AffineTorusMap.identity())
    assert fs.dimension == 3 and len(fs) == 1
