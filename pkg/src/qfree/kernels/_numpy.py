"""Pure-numpy implementations of the hot loops.

Every function here has a twin in ``_numba`` with an identical signature and
identical output; ``qfree.kernels`` picks one at import time.
"""
from __future__ import annotations

import numpy as np

_CHUNK = 1 << 20


def hereditary_saturated_masks(out_masks: np.ndarray) -> np.ndarray:
    """Bitmasks S over ``n`` vertices with ``v in S  <=>  out(v) subset of S``.

    ``out_masks[v]`` is the bitmask of ranges of edges leaving ``v``.  The
    returned masks are sorted ascending.
    """
    out_masks = np.asarray(out_masks, dtype=np.int64)
    n = out_masks.shape[0]
    total = 1 << n
    found = []
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        ok = np.ones(masks.shape[0], dtype=np.bool_)
        for v in range(n):
            inside = ((masks >> v) & 1).astype(np.bool_)
            closed = (masks & out_masks[v]) == out_masks[v]
            ok &= inside == closed
        found.append(masks[ok])
    return np.concatenate(found) if found else np.zeros(0, dtype=np.int64)


def transitive_closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean adjacency matrix."""
    reach = np.asarray(adj, dtype=np.bool_) | np.eye(adj.shape[0], dtype=np.bool_)
    while True:
        step = reach.astype(np.int64) @ reach.astype(np.int64) > 0
        if np.array_equal(step, reach):
            return reach
        reach = step


def semigroup_grid_hits(gens: np.ndarray, coef_max: int, lo: float, hi: float,
                        eps: float) -> np.ndarray:
    """Which width-``eps`` cells of ``[lo, hi)`` contain some sum
    ``sum_i c_i * gens[i]`` with integers ``0 <= c_i <= coef_max``."""
    gens = np.asarray(gens, dtype=np.float64)
    ncells = int(round((hi - lo) / eps))
    hits = np.zeros(ncells, dtype=np.bool_)
    coefs = np.arange(coef_max + 1, dtype=np.float64)
    # remaining[i]: reachable offset range contributed by gens[i:]
    lo_rest = np.concatenate([np.cumsum(np.minimum(0.0, coef_max * gens)[::-1])[::-1], [0.0]])
    hi_rest = np.concatenate([np.cumsum(np.maximum(0.0, coef_max * gens)[::-1])[::-1], [0.0]])
    values = np.zeros(1)
    for i, g in enumerate(gens):
        values = (values[:, None] + g * coefs[None, :]).ravel()
        keep = (values + hi_rest[i + 1] + eps >= lo) & (values + lo_rest[i + 1] - eps < hi)
        values = np.unique(values[keep])
    inside = values[(values >= lo) & (values < hi)]
    idx = np.floor((inside - lo) / eps).astype(np.int64)
    idx = idx[(idx >= 0) & (idx < ncells)]
    hits[idx] = True
    return hits
