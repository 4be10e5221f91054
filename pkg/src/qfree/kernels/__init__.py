"""Hot inner loops, numba-compiled when available.

Set ``QFREE_PURE_NUMPY=1`` to force the numpy fallback (also used
automatically when numba cannot be imported).
"""
from __future__ import annotations

import os

from . import _numpy

numpy_impl = _numpy
numba_impl = None

if os.environ.get("QFREE_PURE_NUMPY", "") not in ("", "0"):
    BACKEND = "numpy"
else:
    try:
        from . import _numba as numba_impl
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        BACKEND = "numpy"

_impl = numba_impl if BACKEND == "numba" else numpy_impl

hereditary_saturated_masks = _impl.hereditary_saturated_masks
transitive_closure = _impl.transitive_closure
semigroup_grid_hits = _impl.semigroup_grid_hits

__all__ = [
    "BACKEND",
    "hereditary_saturated_masks",
    "transitive_closure",
    "semigroup_grid_hits",
    "numpy_impl",
    "numba_impl",
]
