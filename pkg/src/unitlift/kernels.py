"""Backend selection for the arithmetic hot loops.

The compiled extension is used when it imports and the modulus fits in 63
bits; otherwise calls fall through to the pure-Python kernels, which work
on arbitrary-precision integers.  Set ``UNITLIFT_PURE_PYTHON=1`` to force
the fallback.
"""

import os

from . import _kernels_py as python

compiled = None
if os.environ.get("UNITLIFT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # pragma: no cover - depends on the build
        compiled = None

BACKEND = "cython" if compiled is not None else "python"
FIXED_WIDTH_LIMIT = 1 << 63


def _pick(m):
    if compiled is not None and m < FIXED_WIDTH_LIMIT:
        return compiled
    return python


def matmul_mod(a, b, n, m):
    return _pick(m).matmul_mod(a, b, n, m)


def matpow_mod(a, e, n, m):
    return _pick(m).matpow_mod(a, e, n, m)


def convolve_mod(x, y, table, order, m):
    return _pick(m).convolve_mod(x, y, table, order, m)
