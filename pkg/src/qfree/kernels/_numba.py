"""numba-compiled twins of ``_numpy``."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _hs_masks(out_masks):
    n = out_masks.shape[0]
    total = np.int64(1) << n
    buf = np.empty(1024, dtype=np.int64)
    count = 0
    for s in range(total):
        ok = True
        for v in range(n):
            inside = (s >> v) & 1
            closed = (s & out_masks[v]) == out_masks[v]
            if (inside == 1) != closed:
                ok = False
                break
        if ok:
            if count == buf.shape[0]:
                grown = np.empty(2 * count, dtype=np.int64)
                grown[:count] = buf
                buf = grown
            buf[count] = s
            count += 1
    return buf[:count].copy()


def hereditary_saturated_masks(out_masks: np.ndarray) -> np.ndarray:
    return _hs_masks(np.asarray(out_masks, dtype=np.int64))


@njit(cache=True)
def _warshall(reach):
    n = reach.shape[0]
    for i in range(n):
        reach[i, i] = True
    for k in range(n):
        for i in range(n):
            if reach[i, k]:
                for j in range(n):
                    if reach[k, j]:
                        reach[i, j] = True
    return reach


def transitive_closure(adj: np.ndarray) -> np.ndarray:
    return _warshall(np.array(adj, dtype=np.bool_))


@njit(cache=True)
def _grid_hits(gens, coef_max, lo, hi, eps, ncells):
    k = gens.shape[0]
    hits = np.zeros(ncells, dtype=np.bool_)
    coefs = np.zeros(k, dtype=np.int64)
    while True:
        value = 0.0
        for i in range(k):
            value += gens[i] * coefs[i]
        if value >= lo and value < hi:
            idx = np.int64(np.floor((value - lo) / eps))
            if 0 <= idx < ncells:
                hits[idx] = True
        # odometer increment
        pos = k - 1
        while pos >= 0:
            coefs[pos] += 1
            if coefs[pos] <= coef_max:
                break
            coefs[pos] = 0
            pos -= 1
        if pos < 0:
            return hits


def semigroup_grid_hits(gens: np.ndarray, coef_max: int, lo: float, hi: float,
                        eps: float) -> np.ndarray:
    gens = np.asarray(gens, dtype=np.float64)
    ncells = int(round((hi - lo) / eps))
    if gens.shape[0] == 0:
        hits = np.zeros(ncells, dtype=np.bool_)
        if lo <= 0.0 < hi:
            hits[int(np.floor((0.0 - lo) / eps))] = True
        return hits
    return _grid_hits(gens, coef_max, lo, hi, eps, ncells)
