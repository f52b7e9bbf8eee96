"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise the pure-Python
module is used.  Set ``K3G2_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("K3G2_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

# entries beyond this could overflow int64 products in the compiled loops
_SAFE = 1 << 20


def _arrays(*mats):
    if BACKEND == "python":
        return [m.tolist() if hasattr(m, "tolist") else m for m in mats], _kernels_py
    import numpy as np

    out = []
    for m in mats:
        rows = m.tolist() if hasattr(m, "tolist") else m
        if any(abs(x) >= _SAFE for r in rows for x in r):
            return [mm.tolist() if hasattr(mm, "tolist") else mm for mm in mats], _kernels_py
        out.append(np.ascontiguousarray(rows, dtype=np.int64).reshape(len(rows), -1))
    return out, _impl


def is_involutive_isometry(m, g) -> bool:
    (a, b), impl = _arrays(m, g)
    return bool(impl.is_involutive_isometry(a, b))


def commutes(a, b) -> bool:
    (x, y), impl = _arrays(a, b)
    return bool(impl.commutes(x, y))


def count_odd_cosets(gens2, g) -> int:
    if not gens2:
        return 0
    (x, y), impl = _arrays(gens2, g)
    return int(impl.count_odd_cosets(x, y))
