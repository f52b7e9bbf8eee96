import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3g2 import _kernels_py, kernels
from k3g2.involutions import K3, all_double_prime_specs, all_prime_specs, build_involution

compiled = pytest.importorskip("k3g2._kernels")


def _np(m):
    return np.ascontiguousarray(m, dtype=np.int64)


specs = st.tuples(st.sampled_from(all_prime_specs()), st.sampled_from(all_double_prime_specs()))


@given(specs, specs)
@settings(max_examples=60, deadline=None)
def test_backends_agree_on_isometry_and_commutation(s, t):
    a, b = build_involution(*s).matrix.tolist(), build_involution(*t).matrix.tolist()
    g = K3.tolist()
    assert compiled.is_involutive_isometry(_np(a), _np(g)) == _kernels_py.is_involutive_isometry(a, g)
    assert compiled.commutes(_np(a), _np(b)) == _kernels_py.commutes(a, b)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=0, max_size=4),
       st.lists(st.integers(-4, 4), min_size=10, max_size=10))
@settings(max_examples=100, deadline=None)
def test_backends_agree_on_odd_cosets(gens, entries):
    it = iter(entries)
    g = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(i, 4):
            g[i][j] = g[j][i] = next(it)
    if not gens:
        assert kernels.count_odd_cosets(gens, g) == 0
        return
    assert compiled.count_odd_cosets(_np(gens), _np(g)) == _kernels_py.count_odd_cosets(gens, g)


def test_non_involution_rejected():
    m = [[0, 1], [1, 1]]
    g = [[0, 1], [1, 0]]
    assert not _kernels_py.is_involutive_isometry(m, g)
    assert not compiled.is_involutive_isometry(_np(m), _np(g))


def test_pure_python_fallback_selected_by_env():
    import subprocess
    import sys

    code = "import k3g2; print(k3g2.BACKEND, len(k3g2.classify_pairs()), len(k3g2.invariant_tuples()))"
    out = subprocess.run([sys.executable, "-c", code], env={"K3G2_PURE_PYTHON": "1", "PATH": ""},
                         capture_output=True, text=True, check=True).stdout.split()
    assert out == ["python", "531", "342"]
