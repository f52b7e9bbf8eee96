"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Inputs are the real workloads: 22x22 involutions of the K3 lattice and the
discriminant generators of their fixed lattices.
"""

import argparse
import timeit

import numpy as np

from k3g2 import _kernels_py
from k3g2.involutions import K3, all_double_prime_specs, all_prime_specs, build_involution, fixed_sublattice
from k3g2.lattice import discriminant_data

try:
    from k3g2 import _kernels as compiled
except ImportError:
    compiled = None


def workloads():
    invs = [build_involution(p, d) for p in all_prime_specs()[::7] for d in all_double_prime_specs()]
    mats = [m.matrix.tolist() for m in invs]
    g = K3.tolist()
    cosets = []
    for inv in invs:
        fx = fixed_sublattice(inv)
        if fx.rank:
            disc = discriminant_data(fx.gram)
            cosets.append(([[int(2 * x) for x in v] for v in disc.generators], fx.gram.tolist()))
    cosets.sort(key=lambda c: -len(c[0]))
    return mats, g, cosets[:20]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mats, g, cosets = workloads()
    npm = [np.asarray(m, dtype=np.int64) for m in mats]
    npg = np.asarray(g, dtype=np.int64)
    npc = [(np.asarray(a, dtype=np.int64).reshape(len(a), -1), np.asarray(b, dtype=np.int64)) for a, b in cosets if a]
    cases = {
        "is_involutive_isometry": (
            lambda: [_kernels_py.is_involutive_isometry(m, g) for m in mats],
            lambda: [compiled.is_involutive_isometry(m, npg) for m in npm],
        ),
        "commutes": (
            lambda: [_kernels_py.commutes(a, b) for a in mats[:20] for b in mats[:20]],
            lambda: [compiled.commutes(a, b) for a in npm[:20] for b in npm[:20]],
        ),
        "count_odd_cosets": (
            lambda: [_kernels_py.count_odd_cosets(a, b) for a, b in cosets if a],
            lambda: [compiled.count_odd_cosets(a, b) for a, b in npc],
        ),
    }
    print(f"{'kernel':<24}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, (py, cy) in cases.items():
        t_py = min(timeit.repeat(py, number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{name:<24}{t_py:>12.4f}{'n/a':>14}{'':>10}")
            continue
        assert py() == cy(), name
        t_cy = min(timeit.repeat(cy, number=1, repeat=args.repeat))
        print(f"{name:<24}{t_py:>12.4f}{t_cy:>14.4f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
