"""Decision procedures for quasi-free actions on Cuntz algebras.

Each ``analyze_*`` function returns an :class:`AnalysisReport` with four
verdict slots:

* ``crossed_product_simple`` and ``crossed_product_purely_infinite_simple``
  for O(H) crossed by K x G;
* ``isa`` (isometric shift-absorption) and
  ``fixed_point_purely_infinite_simple`` for compact K x G.  These are
  ``NotApplicable`` when G is the real line.

Every Yes/No carries evidence; every Unknown names the open sub-question.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .abelian import (
    DEFAULT_TOL,
    FULL_ZD,
    NEGATIVE,
    POSITIVE,
    ZERO,
    RealCoord,
    sign,
    subsemigroup_R_is_all,
    supporting_functional,
)
from .fusion import SU2, FiniteTable
from .graph import (
    build_fusion_graph,
    graph_simple,
    is_cofinal,
    is_hereditary,
    is_saturated,
    path_label_closure,
    validate_graph,
)
from .repn import (
    DEFAULT_DEPTH,
    FAITHFUL,
    NOT_FAITHFUL,
    R_LINE,
    TORUS,
    FaithfulnessVerdict,
    Representation,
    fock_contains,
    is_faithful,
    rep_dim,
)

YES = "Yes"
NO = "No"
UNKNOWN = "Unknown"
HYPOTHESIS_VIOLATED = "HypothesisViolated"
NOT_APPLICABLE = "NotApplicable"

SLOTS = (
    "crossed_product_simple",
    "crossed_product_purely_infinite_simple",
    "fixed_point_purely_infinite_simple",
    "isa",
)

SO3_MESSAGE = ("non-faithful SU(2) case factors through SO(3); "
               "re-run with an SO(3)-style fusion table")


class DimensionTooSmall(ValueError):
    pass


class UnsupportedGroup(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    tag: str
    evidence: dict = field(default_factory=dict)
    reason: str = ""

    def __post_init__(self):
        if self.tag in (YES, NO) and not self.evidence:
            raise ValueError(f"{self.tag} verdict without evidence")
        if self.tag in (UNKNOWN, HYPOTHESIS_VIOLATED, NOT_APPLICABLE) and not self.reason:
            raise ValueError(f"{self.tag} verdict without a reason")

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.evidence:
            out["evidence"] = self.evidence
        if self.reason:
            out["reason"] = self.reason
        return out

    def __str__(self) -> str:
        return f"{self.tag}: {self.reason}" if self.reason else self.tag


def yes(reason: str = "", **evidence) -> Verdict:
    return Verdict(YES, evidence, reason)


def no(reason: str = "", **evidence) -> Verdict:
    return Verdict(NO, evidence, reason)


def unknown(reason: str, **evidence) -> Verdict:
    return Verdict(UNKNOWN, evidence, reason)


def violated(reason: str) -> Verdict:
    return Verdict(HYPOTHESIS_VIOLATED, {}, reason)


def not_applicable(reason: str) -> Verdict:
    return Verdict(NOT_APPLICABLE, {}, reason)


@dataclass(frozen=True)
class AnalysisReport:
    input: dict
    faithfulness: FaithfulnessVerdict
    crossed_product_simple: Verdict
    crossed_product_purely_infinite_simple: Verdict
    fixed_point_purely_infinite_simple: Verdict
    isa: Verdict
    notes: tuple[str, ...] = ()

    def slots(self) -> dict[str, Verdict]:
        return {name: getattr(self, name) for name in SLOTS}

    def to_json(self) -> dict:
        out: dict[str, Any] = {"input": self.input, "faithfulness": self.faithfulness.to_json(),
                               "notes": list(self.notes)}
        for name, v in self.slots().items():
            out[name] = v.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def headline(self) -> str:
        words = {YES: "yes", NO: "no", UNKNOWN: "unknown",
                 HYPOTHESIS_VIOLATED: "hypothesis violated", NOT_APPLICABLE: "n/a"}
        line = (f"simple: {words[self.crossed_product_simple.tag]}, "
                f"purely infinite simple: {words[self.crossed_product_purely_infinite_simple.tag]}, "
                f"ISA: {words[self.isa.tag]}")
        if any(v.tag == HYPOTHESIS_VIOLATED for v in self.slots().values()) \
                and self.faithfulness.tag == NOT_FAITHFUL:
            line += "\nhypothesis violated: not faithful"
        return line

    def render(self) -> str:
        width = max(len(s) for s in SLOTS)
        lines = [self.headline(), "", f"{'faithfulness':<{width}}  {self.faithfulness}"]
        for name, v in self.slots().items():
            lines.append(f"{name:<{width}}  {v.tag}" + (f"  ({v.reason})" if v.reason else ""))
        if self.notes:
            lines.append("notes:")
            lines.extend(f"  - {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


def exit_status(report: AnalysisReport) -> int:
    tags = {v.tag for v in report.slots().values()}
    if HYPOTHESIS_VIOLATED in tags:
        return 2
    if UNKNOWN in tags:
        return 1
    return 0


# -- helpers -------------------------------------------------------------------

def describe(rep: Representation) -> dict:
    ring = rep.ring
    out: dict[str, Any] = {
        "compact": getattr(ring, "name", type(ring).__name__),
        "abelian": rep.dual.kind,
        "dim": rep_dim(rep),
        "summands": [
            {"irrep": ring.label(s.irrep), "character": rep.dual.to_json(s.character), "mult": s.mult}
            for s in rep.summands
        ],
    }
    if rep.dual.kind == R_LINE:
        out["basis"] = list(rep.dual.basis.numeric)
    if rep.dual.kind == TORUS:
        out["torus_dim"] = rep.dual.torus_dim
    return out


def _require_dim(rep: Representation) -> None:
    d = rep_dim(rep)
    if d < 2:
        raise DimensionTooSmall(f"representation has dimension {d}; at least 2 is needed")


def _distances_to(g, target: int) -> dict[int, int]:
    """Length of a shortest path from each vertex to ``target``."""
    A = g.adjacency > 0
    dist = {target: 0}
    frontier = [target]
    while frontier:
        nxt = []
        for w in frontier:
            for u in np.nonzero(A[:, w])[0]:
                u = int(u)
                if u not in dist:
                    dist[u] = dist[w] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def _trivial_fixed_count(g, triv: int, limit: int) -> int | None:
    """Least m <= limit with at least two closed walks of length m at ``triv``."""
    A = g.adjacency.astype(object)
    P = np.eye(g.n, dtype=object)
    for m in range(1, limit + 1):
        P = P.dot(A)
        if P[triv, triv] >= 2:
            return m
    return None


def _simple_from_graph(g) -> Verdict:
    gs = graph_simple(g)
    if gs.simple:
        return yes("fusion graph is cofinal and not a single cycle",
                   cofinal=True, single_cycle=False)
    if gs.ideal is not None:
        c, start = gs.cofinality.witness
        return no("fusion graph is not cofinal",
                  ideal=[g.vertices[v] for v in sorted(gs.ideal)],
                  hereditary=is_hereditary(g, gs.ideal), saturated=is_saturated(g, gs.ideal),
                  unreachable_cycle_vertex=g.vertices[c], start_vertex=g.vertices[start])
    return no("fusion graph is a single cycle", periodic_cycle_length=gs.period)


COMPACT_NOTES = (
    "O(H) crossed by K is stably isomorphic to the graph algebra of the fusion graph.",
    "A graph algebra of a finite graph without sinks or sources is simple iff the graph "
    "is cofinal and is not a single cycle; a simple one containing a cycle is purely infinite.",
    "For faithful pi: isometric shift-absorption, pure infiniteness and simplicity of the "
    "fixed-point algebra, and F(pi) containing every irreducible are equivalent.",
)


# -- finite K, no abelian factor ------------------------------------------------

def analyze_compact_finite(rep: Representation, tol: float = DEFAULT_TOL,
                           depth: int = DEFAULT_DEPTH) -> AnalysisReport:
    if not isinstance(rep.ring, FiniteTable) or not rep.dual.is_trivial:
        raise UnsupportedGroup("analyze_compact_finite needs a finite table and no abelian factor")
    _require_dim(rep)
    faith = is_faithful(rep)
    g = build_fusion_graph(rep)
    validate_graph(g)
    triv = rep.ring.trivial

    simple = _simple_from_graph(g)
    if simple.tag == YES:
        pis = yes("simple graph algebra containing a cycle", cycle_vertices=[
            g.vertices[v] for v in np.nonzero(g.on_cycle)[0]])
    else:
        pis = no("not simple", **simple.evidence)

    dist = _distances_to(g, triv)
    missing = [v for v in range(g.n) if v not in dist]
    if not missing:
        assert faith.tag == FAITHFUL, "condition (1) forces faithfulness"
        lengths = {g.vertices[v]: dist[v] for v in range(g.n)}
        isa = yes("every irreducible occurs in some tensor power of pi", least_power=lengths)
        fixed = yes("every irreducible occurs in some tensor power of pi", least_power=lengths)
    else:
        names = [g.vertices[v] for v in missing]
        search = fock_contains(rep, missing[0], depth)
        isa = no("some irreducible never occurs in a tensor power of pi",
                 never_reached=names, fock_search=str(search))
        if faith.tag == FAITHFUL:
            fixed = no("F(pi) misses an irreducible", never_reached=names)
        else:
            fixed = violated(f"pi is not faithful: {faith.witness}")
    return AnalysisReport(describe(rep), faith, simple, pis, fixed, isa, COMPACT_NOTES)


# -- SU(2), no abelian factor -----------------------------------------------------

def analyze_su2(rep: Representation, tol: float = DEFAULT_TOL,
                depth: int = DEFAULT_DEPTH) -> AnalysisReport:
    if not isinstance(rep.ring, SU2) or not rep.dual.is_trivial:
        raise UnsupportedGroup("analyze_su2 needs SU(2) and no abelian factor")
    _require_dim(rep)
    faith = is_faithful(rep)
    d = rep_dim(rep)
    notes = [
        "SU(2) fusion: pi_n ⊗ pi_m = pi_|n-m| ⊕ pi_|n-m|+2 ⊕ ... ⊕ pi_n+m.",
        "For semisimple K, det∘pi = 1 gives conj(pi) <= pi^⊗(dim-1), so every faithful pi "
        "has F(pi) containing every irreducible.",
        COMPACT_NOTES[2],
    ]
    if faith.tag == FAITHFUL:
        odd = faith.evidence["odd_spins"][0]
        ev = {"odd_spin": odd, "conjugate_in_power": d - 1}
        isa = yes("an odd spin makes pi faithful; det∘pi = 1", **ev)
        fixed = yes("an odd spin makes pi faithful; det∘pi = 1", **ev)
        simple = yes("fusion graph is strongly connected (self-conjugate irreducibles, "
                     "every irreducible in F(pi)) and infinite", **ev)
        pis = yes("equivalent to pure infiniteness of the fixed-point algebra", **ev)
    else:
        search = fock_contains(rep, 1, depth)
        isa = no("all spins even: every tensor power contains only even spins",
                 parity="even", pi1_search=str(search))
        fixed = violated("pi is not faithful; it factors through SO(3)")
        simple = unknown(SO3_MESSAGE)
        pis = unknown(SO3_MESSAGE)
    return AnalysisReport(describe(rep), faith, simple, pis, fixed, isa, tuple(notes))


# -- SU(2) x R ---------------------------------------------------------------------

def analyze_su2_real(rep: Representation, tol: float = DEFAULT_TOL,
                     depth: int = DEFAULT_DEPTH) -> AnalysisReport:
    if not isinstance(rep.ring, SU2) or rep.dual.kind != R_LINE:
        raise UnsupportedGroup("analyze_su2_real needs SU(2) x R")
    _require_dim(rep)
    faith = is_faithful(rep)
    notes = [
        "For faithful Pi over SU(2) x R, simplicity, F(Pi) ~ λ and pure infiniteness of the "
        "crossed product are equivalent to the closed semigroup generated by all characters "
        "being R.",
        "A closed subsemigroup of R meeting both half-lines is a closed subgroup: {0}, dZ or R.",
    ]
    noncompact = not_applicable("the real line is not compact")
    if faith.tag != FAITHFUL:
        reason = f"Pi is not faithful: {faith.witness}"
        return AnalysisReport(describe(rep), faith, violated(reason), violated(reason),
                              noncompact, noncompact, tuple(notes))
    report = subsemigroup_R_is_all(rep.characters, rep.dual.basis, tol)
    ev = {"semigroup": report.to_json()}
    if report.is_all:
        simple = yes(report.reason, **ev)
        pis = yes(report.reason, **ev)
    else:
        simple = no(report.reason, **ev)
        pis = no(report.reason, **ev)
    return AnalysisReport(describe(rep), faith, simple, pis, noncompact, noncompact, tuple(notes))


# -- finite K x (R or T^d) ------------------------------------------------------------

def _label_sign(x, basis, tol) -> int:
    if isinstance(x, RealCoord):
        return sign(x, basis, tol)
    (v,) = x.entries
    return (v > 0) - (v < 0)


def analyze_finiteK_abelian(rep: Representation, tol: float = DEFAULT_TOL,
                            depth: int = DEFAULT_DEPTH) -> AnalysisReport:
    """Exact decision for finite K times the real line or a torus.

    With the K-part fusion graph cofinal (hence strongly connected), let D
    be the group generated by cycle labels and C the set of labels of
    directed simple cycles.

    * D not dense (R) or not all of Z^d: every path label sits in one coset
      of D, so the crossed product is not simple.
    * One-dimensional duals: simple iff C has both signs or C has no zero
      label.  A zero-label cycle with one-sided C gives an infinite path
      whose label sets stay in a half-line.
    * Z^d with d >= 2: simple iff the cone spanned by C is R^d; otherwise a
      functional nonnegative on C and vanishing on a cycle bounds every
      label set from below along the path around that cycle.

    The closed-walk labels at the trivial vertex are dense exactly when C
    has both signs (cone R^d); this gives F(Pi) ~ λ and pure infiniteness.
    """
    ring, dual = rep.ring, rep.dual
    if not isinstance(ring, FiniteTable) or dual.kind not in (R_LINE, TORUS):
        raise UnsupportedGroup("analyze_finiteK_abelian needs a finite table with R or a torus")
    _require_dim(rep)
    basis = dual.basis if dual.kind == R_LINE else None
    if basis is not None:
        basis.require_independent()
    faith = is_faithful(rep)
    g = build_fusion_graph(rep)
    validate_graph(g)
    triv = ring.trivial
    d = dual.torus_dim if dual.kind == TORUS else 1
    compact = dual.kind == TORUS

    notes = [
        "The crossed product by K x G is simple iff, for every infinite path of the labelled "
        "fusion graph and every irreducible of K, the translated path-label sets are dense "
        "in the dual of G.",
        "If F(Pi) ~ λ the crossed product is purely infinite simple.",
    ]
    if compact:
        notes.append("K x T^d is compact: the crossed product is stably a graph algebra over "
                     "K̂ x Z^d, which is AF or purely infinite when simple.")

    labels = path_label_closure(g, triv, triv, basis, tol) if g.reach[triv, triv] else None

    # -- simplicity --------------------------------------------------------------
    cof = is_cofinal(g)
    gamma_dense = False  # closed walks at the trivial vertex dense in the dual
    zero_cycle = False
    if not cof:
        simple = _simple_from_graph(g)
        if simple.tag == YES:  # pragma: no cover - cofinality failure always gives an ideal
            raise AssertionError
        simple = no("K-part fusion graph is not cofinal", **simple.evidence)
    elif labels.truncated:
        simple = unknown("more than the cycle-enumeration cap of directed cycles; "
                         "simplicity not decided", group=labels.group.to_json())
    elif not labels.group.is_everything:
        simple = no("cycle labels generate a non-dense group; every label set lies in one coset",
                    group=labels.group.to_json())
    else:
        cycles = labels.directed_cycle_labels
        ev = {"group": labels.group.to_json(), "cycle_labels": [c.to_json() for c in cycles]}
        if d == 1:
            signs = {_label_sign(c, basis, tol) for c in cycles}
            pos, neg, zero_cycle = POSITIVE in signs, NEGATIVE in signs, ZERO in signs
            ev.update(has_positive=pos, has_negative=neg, has_zero=zero_cycle)
            if pos and neg:
                gamma_dense = True
                simple = yes("cycle labels of both signs with a dense group", **ev)
            elif not zero_cycle:
                simple = yes("cycle labels strictly one-sided with a dense group: prefix sums "
                             "drift and the label sets sweep the whole line", **ev)
            else:
                simple = no("a zero-label cycle with one-sided cycle labels keeps the label "
                            "sets in a half-line", **ev)
        else:
            f = supporting_functional(cycles, d)
            zero_cycle = any(c.is_zero() for c in cycles)
            if f is None:
                gamma_dense = True
                simple = yes("cycle labels span a cone equal to R^d with a full group", **ev)
            else:
                simple = no("a nonzero functional is nonnegative on every cycle label",
                            functional=list(f), **ev)

    # -- pure infiniteness of the crossed product -----------------------------------
    if simple.tag == NO:
        pis = no("not simple", **simple.evidence)
    elif simple.tag == UNKNOWN:
        pis = unknown(simple.reason)
    elif gamma_dense:
        pis = yes("closed-walk labels at the trivial vertex are dense, so F(Pi) ~ λ",
                  **simple.evidence)
    elif compact:
        pis = no("simple with strictly one-sided cycle labels: the graph over K̂ x Z^d has no "
                 "cycle, so its algebra is AF", **simple.evidence)
    else:
        pis = unknown("simple with strictly one-sided cycle labels; closed-walk labels at the "
                      "trivial vertex lie in a half-line, so F(Pi) ~ λ fails and pure "
                      "infiniteness is not decided")

    m = _trivial_fixed_count(g, triv, max(2, g.n * g.n + 2))
    if m is not None:
        notes.append(f"dim(pi^⊗{m}, 1) >= 2 holds for the K-part pi.")
    else:
        notes.append("dim(pi^⊗m, 1) >= 2 could not be confirmed for any m.")

    # -- ISA / fixed point, compact case only ------------------------------------------
    if not compact:
        isa = fixed = not_applicable("the real line is not compact")
    else:
        dist = _distances_to(g, triv)
        missing = [g.vertices[v] for v in range(g.n) if v not in dist]
        full = labels is not None and labels.semigroup is not None \
            and labels.semigroup.tag == FULL_ZD and not labels.truncated
        if not missing and full:
            ev = {"least_path_length": {g.vertices[v]: dist[v] for v in range(g.n)},
                  "closed_walk_semigroup": labels.semigroup.to_json()}
            isa = yes("every irreducible of K x T^d occurs in F(Pi)", **ev)
            fixed = yes("every irreducible of K x T^d occurs in F(Pi)", **ev)
        elif labels is not None and labels.truncated and not missing:
            isa = fixed = unknown("cycle-enumeration cap reached; closed-walk semigroup at the "
                                  "trivial vertex not decided")
        else:
            if missing:
                ev = {"never_reach_trivial": missing}
            else:
                ev = {"closed_walk_semigroup": None if labels.semigroup is None
                      else labels.semigroup.to_json(),
                      "group": labels.group.to_json()}
            isa = no("F(Pi) misses some irreducible of K x T^d", **ev)
            if faith.usable:
                fixed = no("F(Pi) misses some irreducible of K x T^d", **ev)
            elif faith.tag == NOT_FAITHFUL:
                fixed = violated(f"Pi is not faithful: {faith.witness}")
            else:
                fixed = unknown("faithfulness of Pi is not decided for this group; "
                                "declare it in the input")
    return AnalysisReport(describe(rep), faith, simple, pis, fixed, isa, tuple(notes))


def analyze(rep: Representation, tol: float = DEFAULT_TOL,
            depth: int = DEFAULT_DEPTH) -> AnalysisReport:
    ring, dual = rep.ring, rep.dual
    if isinstance(ring, FiniteTable) and dual.is_trivial:
        return analyze_compact_finite(rep, tol, depth)
    if isinstance(ring, FiniteTable):
        return analyze_finiteK_abelian(rep, tol, depth)
    if isinstance(ring, SU2) and dual.is_trivial:
        return analyze_su2(rep, tol, depth)
    if isinstance(ring, SU2) and dual.kind == R_LINE:
        return analyze_su2_real(rep, tol, depth)
    raise UnsupportedGroup(f"no analysis for {getattr(ring, 'name', ring)} with abelian factor {dual.kind}")


__all__ = [
    "Verdict", "AnalysisReport", "DimensionTooSmall", "UnsupportedGroup",
    "YES", "NO", "UNKNOWN", "HYPOTHESIS_VIOLATED", "NOT_APPLICABLE", "SLOTS",
    "analyze", "analyze_compact_finite", "analyze_su2", "analyze_su2_real",
    "analyze_finiteK_abelian", "exit_status", "describe",
]
