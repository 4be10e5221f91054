"""Independent brute-force checkers.

None of these share code with the decision procedures they check: the
ideal oracle works with explicit matrices, the density sampler with
floating-point sums, the walk enumerator with explicit walks.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy.linalg import null_space

from . import kernels
from .fusion import FiniteTable


# -- invariant ideals of the graph correspondence --------------------------------

class GraphCorrespondence:
    """The correspondence C^E over A = c0(V) of a finite graph.

    Left action by source, right action and inner product by range:
    ``(a.x)(e) = a(s(e)) x(e)``, ``<x, y>(v) = sum_{r(e)=v} conj(x(e)) y(e)``.
    """

    def __init__(self, n_vertices: int, edges: list[tuple[int, int]]):
        self.n = n_vertices
        self.edges = edges
        E = len(edges)
        self.S = np.zeros((E, n_vertices))  # source incidence
        self.R = np.zeros((E, n_vertices))  # range incidence
        for i, (s, r) in enumerate(edges):
            self.S[i, s] = 1.0
            self.R[i, r] = 1.0

    @classmethod
    def from_graph(cls, g) -> "GraphCorrespondence":
        edges = []
        for e in g.edges:
            edges.extend([(e.src, e.dst)] * e.mult)
        return cls(g.n, edges)

    def inner(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.R.T @ (np.conj(x) * y)

    def left(self, a: np.ndarray) -> np.ndarray:
        """Matrix of the left action of ``a`` on C^E."""
        return np.diag(self.S @ a)

    def theta(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Matrix of the rank-one operator z -> x <y, z>."""
        E = len(self.edges)
        M = np.zeros((E, E), dtype=complex)
        for j in range(E):
            z = np.zeros(E)
            z[j] = 1.0
            M[:, j] = x * (self.R @ self.inner(y, z))
        return M

    def ideal_basis(self, S) -> list[np.ndarray]:
        return [np.eye(self.n)[v] for v in sorted(S)]

    def is_invariant(self, S, tol: float = 1e-9) -> bool:
        """<E, rho(I) E> subset of I, with I = c0(S)."""
        E = len(self.edges)
        outside = [v for v in range(self.n) if v not in S]
        for a in self.ideal_basis(S):
            La = self.left(a)
            for i in range(E):
                for j in range(E):
                    x = np.eye(E)[i]
                    y = La @ np.eye(E)[j]
                    val = self.inner(x, y)
                    if outside and np.abs(val[outside]).max() > tol:
                        return False
        return True

    def is_saturated(self, S, tol: float = 1e-9) -> bool:
        """rho^{-1}(K(E I)) subset of I."""
        E = len(self.edges)
        if E == 0:
            return len(S) == self.n
        # E I is spanned by the edge vectors x with x = x . 1_S
        ind = np.array([float(v in S) for v in range(self.n)])
        in_range = self.R @ ind
        ES = [np.eye(E)[i] for i in range(E) if in_range[i]]
        K = [self.theta(x, y).ravel() for x in ES for y in ES]
        rho = np.column_stack([self.left(np.eye(self.n)[v]).ravel() for v in range(self.n)])
        if K:
            Kmat = np.column_stack(K)
            # a with rho(a) in span(K):  rho a - K c = 0
            big = np.hstack([rho, -Kmat])
        else:
            big = rho
        ns = null_space(big, rcond=tol)
        pre = ns[: self.n, :]
        outside = [v for v in range(self.n) if v not in S]
        if not outside or pre.size == 0:
            return True
        return np.abs(pre[outside, :]).max() <= 1e-7

    def invariant_ideals(self) -> list[frozenset]:
        out = []
        for k in range(self.n + 1):
            for S in combinations(range(self.n), k):
                S = frozenset(S)
                if self.is_invariant(S) and self.is_saturated(S):
                    out.append(S)
        return sorted(out, key=lambda s: (len(s), sorted(s)))


def ideal_oracle(g) -> list[frozenset]:
    return GraphCorrespondence.from_graph(g).invariant_ideals()


# -- closed subsemigroups of R by sampling -------------------------------------------

DENSE = "dense"
NOT_DENSE = "not_dense"
INCONCLUSIVE = "inconclusive"


def density_sample(values, coef_max: int = 60, lo: float = -10.0, hi: float = 10.0,
                   eps: float = 0.05):
    """Cover ``[lo, hi)`` by width-``eps`` cells and mark those hit by an
    N-combination of ``values`` with coefficients up to ``coef_max``.

    Full coverage reads as dense.  Partial coverage that does not grow when
    the coefficient bound is halved reads as not dense: the sample has
    saturated the window.  Anything else is inconclusive.  Returns
    (call, coverage).
    """
    gens = np.asarray(values, dtype=float)
    hits = kernels.semigroup_grid_hits(gens, coef_max, lo, hi, eps)
    coverage = float(hits.mean())
    if hits.all():
        return DENSE, coverage
    half = kernels.semigroup_grid_hits(gens, coef_max // 2, lo, hi, eps)
    if np.array_equal(half, hits):
        return NOT_DENSE, coverage
    return INCONCLUSIVE, coverage


# -- walks ----------------------------------------------------------------------------

def closed_walk_labels(g, vertex: int, max_len: int = 10, zero=None) -> set:
    """Labels of all closed walks at ``vertex`` of length 1..max_len."""
    by_src: dict[int, list] = {}
    for e in g.edges:
        by_src.setdefault(e.src, []).append(e)
    out = set()
    frontier = {(vertex, zero)}
    for _ in range(max_len):
        nxt = set()
        for v, lab in frontier:
            for e in by_src.get(v, []):
                new = e.label if lab is None else lab + e.label
                nxt.add((e.dst, new))
        frontier = nxt
        out.update(lab for v, lab in frontier if v == vertex)
    return out


def path_labels(g, src: int, dst: int, max_len: int = 10) -> set:
    by_src: dict[int, list] = {}
    for e in g.edges:
        by_src.setdefault(e.src, []).append(e)
    out = set()
    frontier = {(src, None)}
    for _ in range(max_len):
        nxt = set()
        for v, lab in frontier:
            for e in by_src.get(v, []):
                nxt.add((e.dst, e.label if lab is None else lab + e.label))
        frontier = nxt
        out.update(lab for v, lab in frontier if v == dst)
    return out


# -- faithfulness -----------------------------------------------------------------------

def brute_force_faithful(ring: FiniteTable, multiset: dict[int, int]) -> bool:
    """Every irreducible inside pi^k (x) conj(pi)^l for some 1 <= k, l <= |K^|^2."""
    n = ring.size
    bound = n * n
    N = ring.N

    def times(vec, ms):
        out = np.zeros(n, dtype=object)
        for a in range(n):
            if vec[a]:
                for b, m in ms.items():
                    out += vec[a] * m * N[a, b].astype(object)
        return out

    conj = {ring.conj(a): m for a, m in multiset.items()}
    seen = np.zeros(n, dtype=bool)
    pk = np.zeros(n, dtype=object)
    pk[ring.trivial] = 1
    for _ in range(bound):
        pk = times(pk, multiset)
        # keep only the support; multiplicities only need to stay positive
        pk = (pk > 0).astype(object)
        cur = pk
        for _ in range(bound):
            cur = (times(cur, conj) > 0).astype(object)
            seen |= cur.astype(bool)
        if seen.all():
            return True
    return bool(seen.all())
