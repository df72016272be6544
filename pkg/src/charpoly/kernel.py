"""Kernel dispatch: compiled extension if available, pure Python otherwise.

Set ``CHARPOLY_KERNEL=pure`` to force the fallback (used by the equivalence
tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("CHARPOLY_KERNEL") == "pure":
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

BACKEND: str = _impl.BACKEND

poly_mul = _impl.poly_mul
poly_addmul_into = _impl.poly_addmul_into
poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_neg = _impl.poly_neg
poly_scale = _impl.poly_scale
