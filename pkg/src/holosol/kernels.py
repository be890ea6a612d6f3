"""Select the compiled kernel module when it is importable.

Set ``HOLOSOL_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("HOLOSOL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

mono_mul = _impl.mono_mul
poly_mul = _impl.poly_mul
vec_lmul = _impl.vec_lmul
vec_mono_lmul = _impl.vec_mono_lmul
axpy = _impl.axpy
int_rref = _impl.int_rref

__all__ = [
    "BACKEND",
    "mono_mul",
    "poly_mul",
    "vec_lmul",
    "vec_mono_lmul",
    "axpy",
    "int_rref",
]
