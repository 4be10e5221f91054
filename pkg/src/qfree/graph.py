"""The fusion graph of a representation and its graph-algebra invariants.

Vertices are the irreducibles of a finite group K.  Summand ``(pi_i, t_i, m_i)``
contributes ``m_i * mult(s1 in pi_i (x) s2)`` edges ``s1 -> s2`` labelled
``t_i``.  A path of length n from s to the trivial vertex therefore
witnesses ``s <= pi^{(x) n}``.

Labels live in the dual of the abelian factor: :class:`RealCoord` for the
real line, :class:`IntVector` for a torus, ``None`` when there is no
abelian factor.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

import jsonschema
import networkx as nx
import numpy as np

from . import kernels
from .abelian import (
    DEFAULT_TOL,
    LATTICE_ZERO,
    NEGATIVE,
    POSITIVE,
    ClosureClass,
    IntVector,
    RealBasis,
    RealCoord,
    closed_subgroup_R,
    closed_subgroup_Zd,
    parse_rational,
    sign,
    smith_normal_form,
    supporting_functional,
)
from .fusion import FiniteTable
from .repn import Representation

MAX_SUBSET_VERTICES = 24
MAX_CYCLE_LABELS = 20000


class EmptyRepresentation(ValueError):
    pass


class GraphInvalid(ValueError):
    pass


class GraphTooLarge(ValueError):
    pass


class Unreachable(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    mult: int
    label: RealCoord | IntVector | None = None
    summand: int = 0


@dataclass(frozen=True)
class FusionGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        n = len(self.vertices)
        for e in self.edges:
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise GraphInvalid(f"edge {e.src}->{e.dst} leaves the vertex range 0..{n - 1}")
            if e.mult < 1:
                raise GraphInvalid(f"edge {e.src}->{e.dst} has multiplicity {e.mult}")
        kinds = {type(e.label) for e in self.edges}
        if len(kinds) > 1:
            raise GraphInvalid("edge labels mix character kinds")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def label_kind(self) -> str:
        """'none', 'real' or 'lattice'."""
        for e in self.edges:
            if isinstance(e.label, RealCoord):
                return "real"
            if isinstance(e.label, IntVector):
                return "lattice"
        return "none"

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for e in self.edges:
            A[e.src, e.dst] += e.mult
        return A

    @cached_property
    def reach(self) -> np.ndarray:
        """``reach[u, v]``: a directed path (possibly empty) leads from u to v."""
        return kernels.transitive_closure(self.adjacency > 0)

    @cached_property
    def on_cycle(self) -> np.ndarray:
        A = self.adjacency > 0
        return np.array([bool((A[v] & self.reach[:, v]).any()) for v in range(self.n)], dtype=bool)

    def out_masks(self) -> np.ndarray:
        masks = np.zeros(self.n, dtype=np.int64)
        for e in self.edges:
            masks[e.src] |= np.int64(1) << e.dst
        return masks

    def relabel(self, perm: Sequence[int]) -> "FusionGraph":
        """Vertex ``v`` becomes vertex ``perm[v]``."""
        verts = [""] * self.n
        for v, name in enumerate(self.vertices):
            verts[perm[v]] = name
        return FusionGraph(tuple(verts), tuple(
            Edge(perm[e.src], perm[e.dst], e.mult, e.label, e.summand) for e in self.edges))


def build_fusion_graph(rep: Representation) -> FusionGraph:
    ring = rep.ring
    if not isinstance(ring, FiniteTable):
        raise TypeError("the fusion graph is only materialised for finite tables")
    if not rep.summands:
        raise EmptyRepresentation("the representation is zero")
    N = ring.N
    edges = []
    for s1 in ring.irreps():
        for s2 in ring.irreps():
            for i, s in enumerate(rep.summands):
                m = int(N[s.irrep, s2, s1]) * s.mult
                if m:
                    edges.append(Edge(s1, s2, m, s.character, i))
    return FusionGraph(ring.labels, tuple(edges))


def validate_graph(g: FusionGraph) -> None:
    A = g.adjacency
    problems = []
    for v in range(g.n):
        if A[v].sum() == 0:
            problems.append(f"vertex {g.vertices[v]} is a sink")
        if A[:, v].sum() == 0:
            problems.append(f"vertex {g.vertices[v]} is a source")
    if g.n == 0:
        problems.append("graph has no vertices")
    if problems:
        raise GraphInvalid("; ".join(problems))


# -- cofinality, ideals, simplicity -----------------------------------------

@dataclass(frozen=True)
class Cofinality:
    cofinal: bool
    witness: tuple[int, int] | None = None  # (cycle vertex, start vertex that misses it)

    def __bool__(self) -> bool:
        return self.cofinal


def is_cofinal(g: FusionGraph) -> Cofinality:
    reach, cyc = g.reach, g.on_cycle
    for start in range(g.n):
        for c in range(g.n):
            if cyc[c] and not reach[start, c]:
                return Cofinality(False, (c, start))
    return Cofinality(True)


def is_strongly_connected(g: FusionGraph) -> bool:
    return bool(g.reach.all())


def _sorted_sets(sets) -> list[frozenset]:
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def hereditary_saturated_sets(g: FusionGraph) -> list[frozenset]:
    """All hereditary and saturated vertex sets, smallest first."""
    if g.n > MAX_SUBSET_VERTICES:
        raise GraphTooLarge(f"{g.n} vertices; subset enumeration is capped at {MAX_SUBSET_VERTICES}")
    masks = kernels.hereditary_saturated_masks(g.out_masks())
    sets = [frozenset(v for v in range(g.n) if (int(m) >> v) & 1) for m in masks]
    return _sorted_sets(sets)


def is_hereditary(g: FusionGraph, S) -> bool:
    return all(e.dst in S for e in g.edges if e.src in S)


def is_saturated(g: FusionGraph, S) -> bool:
    A = g.adjacency
    for v in range(g.n):
        if v not in S and A[v].any() and all(w in S for w in np.nonzero(A[v])[0]):
            return False
    return True


def saturate(g: FusionGraph, S) -> frozenset:
    A = g.adjacency
    S = set(S)
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if v not in S and A[v].any() and all(int(w) in S for w in np.nonzero(A[v])[0]):
                S.add(v)
                changed = True
    return frozenset(S)


def is_single_cycle(g: FusionGraph) -> bool:
    A = g.adjacency
    return bool((A.sum(axis=1) == 1).all() and (A.sum(axis=0) == 1).all()
                and is_strongly_connected(g))


@dataclass(frozen=True)
class GraphSimplicity:
    simple: bool
    ideal: frozenset | None = None
    period: int | None = None
    cofinality: Cofinality | None = None

    @property
    def kind(self) -> str | None:
        if self.simple:
            return None
        return "ideal" if self.ideal is not None else "periodic"

    def to_json(self, g: FusionGraph | None = None) -> dict:
        out: dict = {"simple": self.simple}
        if self.ideal is not None:
            out["ideal"] = [g.vertices[v] for v in sorted(self.ideal)] if g else sorted(self.ideal)
        if self.period is not None:
            out["period"] = self.period
        return out


def graph_simple(g: FusionGraph) -> GraphSimplicity:
    """Simple iff cofinal and not one lone cycle.

    A non-cofinal graph has cycle vertex ``c`` and start ``u`` with ``c``
    unreachable from ``u``; the vertices that cannot reach ``c`` form a
    hereditary saturated set containing ``u`` but not ``c``.
    """
    validate_graph(g)
    cof = is_cofinal(g)
    if not cof:
        c, _ = cof.witness
        ideal = frozenset(int(w) for w in np.nonzero(~g.reach[:, c])[0])
        return GraphSimplicity(False, ideal=ideal, cofinality=cof)
    if is_single_cycle(g):
        return GraphSimplicity(False, period=g.n, cofinality=cof)
    return GraphSimplicity(True, cofinality=cof)


@dataclass(frozen=True)
class KTheory:
    k0_torsion: tuple[int, ...]
    k0_free_rank: int
    k1_rank: int

    def to_json(self) -> dict:
        return {"k0_torsion": list(self.k0_torsion), "k0_free_rank": self.k0_free_rank,
                "k1_rank": self.k1_rank}

    @staticmethod
    def _group(torsion, free) -> str:
        parts = [f"Z/{d}" for d in torsion] + ["Z"] * free
        return " ⊕ ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return f"K0 = {self._group(self.k0_torsion, self.k0_free_rank)}, K1 = {self._group((), self.k1_rank)}"


def k_theory(g: FusionGraph) -> KTheory:
    """K0 = coker(A^t - I), K1 = ker(A^t - I) on Z^V."""
    M = g.adjacency.T - np.eye(g.n, dtype=np.int64)
    snf = smith_normal_form(M.tolist())
    return KTheory(snf.torsion, snf.coker_free_rank, snf.kernel_rank)


# -- labelled cycles -----------------------------------------------------------

@dataclass(frozen=True)
class PathLabels:
    base: RealCoord | IntVector | None
    cycle_labels: tuple          # fundamental cycles of the region, nonzero, deduplicated
    directed_cycle_labels: tuple  # labels of directed simple cycles, deduplicated
    group: ClosureClass           # closure of the group the cycle labels generate
    semigroup: ClosureClass | None  # None when undecided
    truncated: bool = False
    region: frozenset = frozenset()

    def to_json(self) -> dict:
        return {
            "base": None if self.base is None else self.base.to_json(),
            "cycle_labels": [c.to_json() for c in self.cycle_labels],
            "directed_cycle_labels": [c.to_json() for c in self.directed_cycle_labels],
            "group": self.group.to_json(),
            "semigroup": None if self.semigroup is None else self.semigroup.to_json(),
            "truncated": self.truncated,
        }


def _label_zero(g: FusionGraph, label_dim: int | None):
    kind = g.label_kind
    if kind == "real":
        return RealCoord.zero(label_dim)
    if kind == "lattice":
        return IntVector.zero(label_dim)
    return None


def _label_dim(g: FusionGraph) -> int | None:
    for e in g.edges:
        if e.label is not None:
            return e.label.dim
    return None


def _key(x):
    return x.coeffs if isinstance(x, RealCoord) else x.entries


def fundamental_cycle_labels(g: FusionGraph, root: int, region: frozenset):
    """Potentials from a BFS out-tree and the labels ``a(u) + l(e) - a(w)`` of
    every non-tree edge inside ``region``.

    Every path label from ``root`` to ``v`` inside the region equals ``a(v)``
    plus a sum of these cycle labels.
    """
    zero = _label_zero(g, _label_dim(g))
    pot = {root: zero}
    tree_edges = set()
    inside = [i for i, e in enumerate(g.edges) if e.src in region and e.dst in region]
    by_src: dict[int, list[int]] = {}
    for i in inside:
        by_src.setdefault(g.edges[i].src, []).append(i)
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for i in by_src.get(u, []):
            e = g.edges[i]
            if e.dst not in pot:
                pot[e.dst] = zero if zero is None else pot[u] + e.label
                tree_edges.add(i)
                queue.append(e.dst)
    cycles = {}
    if zero is not None:
        for i in inside:
            if i in tree_edges:
                continue
            e = g.edges[i]
            c = pot[e.src] + e.label - pot[e.dst]
            if not c.is_zero():
                cycles[_key(c)] = c
    return pot, tuple(cycles[k] for k in sorted(cycles))


def directed_cycle_labels(g: FusionGraph, region: frozenset, limit: int = MAX_CYCLE_LABELS):
    """Distinct labels of directed simple cycles inside ``region``.

    Parallel edges with different labels give different cycles, so each
    simple cycle of the underlying digraph is expanded over label choices.
    Returns ``(labels, truncated)``; truncated means ``limit`` was hit.
    """
    zero = _label_zero(g, _label_dim(g))
    choices: dict[tuple[int, int], dict] = {}
    for e in g.edges:
        if e.src in region and e.dst in region:
            choices.setdefault((e.src, e.dst), {})[None if e.label is None else _key(e.label)] = e.label
    D = nx.DiGraph()
    D.add_nodes_from(sorted(region))
    D.add_edges_from(sorted(choices))
    found: dict = {}
    visited = 0
    for cycle in nx.simple_cycles(D):
        steps = [(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle))]
        options = [list(choices[s].values()) for s in steps]
        for combo in product(*options):
            visited += 1
            if visited > limit:
                return tuple(found[k] for k in sorted(found)), True
            if zero is None:
                found[()] = None
                continue
            total = zero
            for lab in combo:
                total = total + lab
            found[_key(total)] = total
    return tuple(found[k] for k in sorted(found)), False


def region_between(g: FusionGraph, src: int, dst: int) -> frozenset:
    """Vertices lying on some directed path from ``src`` to ``dst``."""
    return frozenset(int(v) for v in np.nonzero(g.reach[src] & g.reach[:, dst])[0])


def path_label_closure(g: FusionGraph, src: int, dst: int, basis: RealBasis | None = None,
                       tol: float = DEFAULT_TOL, limit: int = MAX_CYCLE_LABELS) -> PathLabels:
    """Label data of the paths from ``src`` to ``dst``.

    ``group`` is the closure of the group generated by the fundamental cycle
    labels; all path labels lie in ``base + group``.  ``semigroup`` is the
    closure of the semigroup generated by directed cycle labels when that is
    a group (cycles of both signs on the line, a cone equal to R^d on a
    lattice), ``Zero`` when there are no cycles, and None otherwise.
    """
    if not g.reach[src, dst]:
        raise Unreachable(f"{g.vertices[dst]} is not reachable from {g.vertices[src]}")
    region = region_between(g, src, dst)
    pot, cycles = fundamental_cycle_labels(g, src, region)
    directed, truncated = directed_cycle_labels(g, region, limit)
    base = pot[dst]
    kind = g.label_kind
    d = _label_dim(g)
    semigroup = None
    if kind == "real":
        group = closed_subgroup_R(cycles, basis, tol)
        if not directed or all(c.is_zero() for c in directed):
            semigroup = ClosureClass(LATTICE_ZERO) if not truncated else None
        elif basis is not None:
            signs = {sign(c, basis, tol) for c in directed}
            if POSITIVE in signs and NEGATIVE in signs:
                semigroup = closed_subgroup_R(directed, basis, tol)
    elif kind == "lattice":
        group = closed_subgroup_Zd(cycles, d)
        if not directed or all(c.is_zero() for c in directed):
            semigroup = ClosureClass(LATTICE_ZERO) if not truncated else None
        elif supporting_functional(directed, d) is None:
            semigroup = closed_subgroup_Zd(directed, d)
    else:
        group = ClosureClass(LATTICE_ZERO)
        semigroup = ClosureClass(LATTICE_ZERO)
    return PathLabels(base, cycles, directed, group, semigroup, truncated, region)


# -- export / import -----------------------------------------------------------

def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: FusionGraph, basis: RealBasis | None = None) -> str:
    """DOT text; each parallel edge is drawn separately and carries the
    multiplicity of its record (and the character, if any) as its label."""
    lines = ["digraph fusion {"]
    for v, name in enumerate(g.vertices):
        lines.append(f"  v{v} [label={_dot_quote(name)}];")
    for e in g.edges:
        text = str(e.mult)
        if e.label is not None:
            text += f" : {e.label.render(basis) if isinstance(e.label, RealCoord) else e.label.render()}"
        for _ in range(e.mult):
            lines.append(f"  v{e.src} -> v{e.dst} [label={_dot_quote(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: FusionGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"src": e.src, "dst": e.dst, "mult": e.mult,
                   "label": None if e.label is None else e.label.to_json(),
                   "summand": e.summand} for e in g.edges],
    }


def export_json(g: FusionGraph) -> str:
    return json.dumps(graph_to_json(g), indent=2, ensure_ascii=False) + "\n"


GRAPH_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["vertices", "edges"],
    "properties": {
        "vertices": {"type": "array", "items": {"type": "string"}},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["src", "dst", "mult"],
                "properties": {
                    "src": {"type": "integer", "minimum": 0},
                    "dst": {"type": "integer", "minimum": 0},
                    "mult": {"type": "integer", "minimum": 1},
                    "summand": {"type": "integer", "minimum": 0},
                    "label": {"oneOf": [
                        {"type": "null"},
                        {"type": "array", "minItems": 1, "items": {"type": "string"}},
                        {"type": "array", "minItems": 1, "items": {"type": "integer"}},
                    ]},
                },
            },
        },
    },
}


def graph_from_json(data: dict, validate: bool = True) -> FusionGraph:
    jsonschema.validate(data, GRAPH_SCHEMA)
    edges = []
    for rec in data["edges"]:
        raw = rec.get("label")
        if raw is None:
            label = None
        elif all(isinstance(x, str) for x in raw):
            label = RealCoord(tuple(parse_rational(x) for x in raw))
        else:
            label = IntVector(tuple(raw))
        edges.append(Edge(rec["src"], rec["dst"], rec["mult"], label, rec.get("summand", 0)))
    dims = {e.label.dim for e in edges if e.label is not None}
    if len(dims) > 1:
        raise GraphInvalid("edge labels have different lengths")
    g = FusionGraph(tuple(data["vertices"]), tuple(edges))
    if validate:
        validate_graph(g)
    return g


def parse_graph_json(text: str, validate: bool = True) -> FusionGraph:
    return graph_from_json(json.loads(text), validate)


def render_set(g: FusionGraph, S) -> str:
    return "{" + ", ".join(g.vertices[v] for v in sorted(S)) + "}"


def first_path(g: FusionGraph, src: int, dst: int) -> list[int] | None:
    """Vertices of one shortest directed path from ``src`` to ``dst``."""
    prev = {src: None}
    queue = deque([src])
    A = g.adjacency
    while queue:
        u = queue.popleft()
        if u == dst:
            path = []
            while u is not None:
                path.append(u)
                u = prev[u]
            return path[::-1]
        for w in np.nonzero(A[u])[0]:
            w = int(w)
            if w not in prev:
                prev[w] = u
                queue.append(w)
    return None


__all__ = [
    "Edge", "FusionGraph", "Cofinality", "GraphSimplicity", "KTheory", "PathLabels",
    "EmptyRepresentation", "GraphInvalid", "GraphTooLarge", "Unreachable",
    "build_fusion_graph", "validate_graph", "is_cofinal", "is_strongly_connected",
    "hereditary_saturated_sets", "is_hereditary", "is_saturated", "saturate",
    "is_single_cycle", "graph_simple", "k_theory", "fundamental_cycle_labels",
    "directed_cycle_labels", "region_between", "path_label_closure",
    "export_dot", "export_json", "graph_to_json", "graph_from_json", "parse_graph_json",
    "render_set", "first_path",
]
