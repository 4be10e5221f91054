from __future__ import annotations

import math
from fractions import Fraction

import pytest

from corpus import SQRT2, rep_corpus
from qfree.abelian import (
    ALL_OF_R,
    FULL_ZD,
    IntVector,
    RealBasis,
    RealCoord,
    closed_subgroup_R,
    lattice_is_full_Zd,
    q_rank,
)
from qfree.fusion import SU2, cyclic, symmetric3
from qfree.graph import build_fusion_graph, is_cofinal, is_hereditary, is_saturated, path_label_closure
from qfree.oracles import closed_walk_labels
from qfree.repn import NOT_FAITHFUL, R_LINE, TORUS, AbelianDual, Representation, Summand
from qfree.verdicts import (
    HYPOTHESIS_VIOLATED,
    NO,
    NOT_APPLICABLE,
    SO3_MESSAGE,
    UNKNOWN,
    YES,
    DimensionTooSmall,
    UnsupportedGroup,
    Verdict,
    analyze,
    analyze_compact_finite,
    analyze_su2,
    exit_status,
)

NONE = AbelianDual.trivial()
CORPUS = rep_corpus()


def rc(*c):
    return RealCoord.of(*c)


def finite(ring, *pairs):
    return Representation(ring, NONE, tuple(Summand(a, None, m) for a, m in pairs))


def su2(*spins):
    return Representation(SU2(), NONE, tuple(Summand(n) for n in spins))


def su2r(*pairs):
    return Representation(SU2(), AbelianDual.r_line(SQRT2), tuple(Summand(n, rc(*c)) for c, n in pairs))


def flow(*chars, ring=None):
    ring = ring or cyclic(1)
    return Representation(ring, AbelianDual.r_line(SQRT2), tuple(Summand(0, rc(*c)) for c in chars))


def tags(report):
    return {k: v.tag for k, v in report.slots().items()}


# -- compact finite ---------------------------------------------------------------

def test_z2_regular_all_yes():
    r = analyze_compact_finite(finite(cyclic(2), (0, 1), (1, 1)))
    assert set(tags(r).values()) == {YES}
    assert exit_status(r) == 0
    assert "simple: yes" in r.render() and "ISA: yes" in r.render()


def test_z2_trivial_action():
    r = analyze(finite(cyclic(2), (0, 2)))
    assert r.crossed_product_simple.tag == NO
    assert r.crossed_product_simple.evidence["ideal"] in (["1"], ["sgn"])
    assert r.isa.tag == NO and r.isa.evidence["never_reached"] == ["sgn"]
    assert r.faithfulness.tag == NOT_FAITHFUL
    assert r.fixed_point_purely_infinite_simple.tag == HYPOTHESIS_VIOLATED
    assert exit_status(r) == 2


def test_s3_std_plus_trivial():
    r = analyze(finite(symmetric3(), (0, 1), (2, 1)))
    assert r.crossed_product_simple.tag == YES and r.isa.tag == YES


def test_dimension_too_small():
    with pytest.raises(DimensionTooSmall):
        analyze(finite(cyclic(2), (1, 1)))
    with pytest.raises(DimensionTooSmall):
        analyze(su2(0))


def test_dispatcher_rejects_unsupported_group():
    rep = Representation(SU2(), AbelianDual.torus(1), (Summand(1, IntVector.of(1)),))
    with pytest.raises(UnsupportedGroup):
        analyze(rep)
    with pytest.raises(UnsupportedGroup):
        analyze_su2(finite(cyclic(2), (0, 2)))


# -- SU(2) ----------------------------------------------------------------------

def test_su2_examples():
    r = analyze(su2(1))
    assert r.isa.tag == YES and r.fixed_point_purely_infinite_simple.tag == YES
    r = analyze(su2(2))
    assert r.isa.tag == NO and r.isa.evidence["parity"] == "even"
    assert r.crossed_product_simple.tag == UNKNOWN and r.crossed_product_simple.reason == SO3_MESSAGE
    assert analyze(su2(0, 1)).isa.tag == YES


def test_su2_even_spins_agree_with_finite_quotient():
    # an even-spin representation and a finite table in which "odd" classes are
    # unreachable (Z/2 with pi = 1 (+) 1) both give ISA No
    assert analyze(su2(2, 4)).isa.tag == NO
    assert analyze(finite(cyclic(2), (0, 2))).isa.tag == NO


# -- SU(2) x R -------------------------------------------------------------------

def test_su2_real_examples():
    r = analyze(su2r(((1, 0), 1), ((0, -1), 1)))
    assert r.crossed_product_purely_infinite_simple.tag == YES
    assert r.crossed_product_simple.tag == YES
    r = analyze(su2r(((1, 0), 1), ((0, 1), 1)))
    assert r.crossed_product_simple.tag == NO
    assert "no negative generator" in r.crossed_product_simple.reason
    r = analyze(su2r(((1, 0), 1), ((-1, 0), 1)))
    assert r.crossed_product_simple.tag == HYPOTHESIS_VIOLATED
    assert "(−1, π)" in r.crossed_product_simple.reason
    assert r.isa.tag == NOT_APPLICABLE
    assert exit_status(r) == 2
    assert "hypothesis violated: not faithful" in r.render()


# -- finite K x R / torus --------------------------------------------------------------

def test_o2_flows():
    r = analyze(flow((1, 0), (0, -1)))
    assert r.crossed_product_simple.tag == YES
    assert r.crossed_product_purely_infinite_simple.tag == YES
    r = analyze(flow((1, 0), (2, 0)))
    assert r.crossed_product_simple.tag == NO
    assert r.crossed_product_simple.evidence["group"]["tag"] == "LatticeR"


def test_o2_one_sided_dense_flow():
    # weights 1 and sqrt2: dense group, all positive, no zero cycle: simple,
    # but pure infiniteness is not decided
    r = analyze(flow((1, 0), (0, 1)))
    assert r.crossed_product_simple.tag == YES
    assert r.crossed_product_purely_infinite_simple.tag == UNKNOWN
    assert exit_status(r) == 1


def test_zero_summand_counterexample():
    """A zero character added to a one-sided dense flow breaks simplicity."""
    before = analyze(flow((1, 0), (0, 1)))
    after = analyze(flow((1, 0), (0, 1), (0, 0)))
    assert before.crossed_product_simple.tag == YES
    assert after.crossed_product_simple.tag == NO
    assert after.crossed_product_simple.evidence["has_zero"]


def _with_zero_summand(rep):
    zero = rep.dual.zero()
    triv = rep.ring.trivial
    summands = list(rep.summands)
    for i, s in enumerate(summands):
        if s.irrep == triv and s.character == zero:
            summands[i] = Summand(triv, zero, s.mult + 1)
            break
    else:
        summands.append(Summand(triv, zero, 1))
    return Representation(rep.ring, rep.dual, tuple(summands), rep.declared_faithful)


def test_zero_summand_keeps_mixed_sign_simplicity():
    checked = 0
    for rep in CORPUS:
        if not isinstance(rep.ring, type(cyclic(1))) or rep.dual.is_trivial:
            continue
        r = analyze(rep)
        ev = r.crossed_product_simple.evidence
        mixed = r.crossed_product_purely_infinite_simple.tag == YES
        if r.crossed_product_simple.tag == YES and (mixed or ev.get("has_zero")):
            after = analyze(_with_zero_summand(rep))
            assert after.crossed_product_simple.tag == YES
            if mixed:
                assert after.crossed_product_purely_infinite_simple.tag == YES
            checked += 1
    assert checked >= 5


def test_z2_torus_example():
    rep = Representation(cyclic(2), AbelianDual.torus(1),
                         (Summand(0, IntVector.of(1)), Summand(1, IntVector.of(-1))))
    r = analyze(rep)
    assert set(tags(r).values()) == {YES}


def test_torus_parity_obstruction():
    # every cycle label even: group 2Z, not simple
    rep = Representation(cyclic(2), AbelianDual.torus(1),
                         (Summand(1, IntVector.of(1)), Summand(1, IntVector.of(-1))))
    r = analyze(rep)
    assert r.crossed_product_simple.tag == NO
    assert r.isa.tag == NO


def test_torus_one_sided_is_not_purely_infinite():
    rep = Representation(cyclic(1), AbelianDual.torus(1),
                         (Summand(0, IntVector.of(2)), Summand(0, IntVector.of(3))))
    r = analyze(rep)
    assert r.crossed_product_simple.tag == YES
    assert r.crossed_product_purely_infinite_simple.tag == NO
    assert r.isa.tag == NO and r.fixed_point_purely_infinite_simple.tag == NO


def test_torus_two_dimensional_cone():
    def rep(*vs):
        return Representation(cyclic(1), AbelianDual.torus(2), tuple(Summand(0, IntVector.of(*v)) for v in vs))
    assert analyze(rep((1, 0), (0, 1), (-1, -1))).crossed_product_simple.tag == YES
    r = analyze(rep((1, 0), (0, 1)))
    assert r.crossed_product_simple.tag == NO and "functional" in r.crossed_product_simple.evidence


# -- structural properties ------------------------------------------------------------

def _scaled(rep, q):
    dual = rep.dual
    if dual.kind == R_LINE:
        f = lambda c: c.scale(q)  # noqa: E731
    else:
        f = lambda c: IntVector.of(*(int(q * x) for x in c.entries))  # noqa: E731
    return Representation(rep.ring, dual, tuple(Summand(s.irrep, f(s.character), s.mult) for s in rep.summands),
                          rep.declared_faithful)


def _same_verdicts(a, b):
    return tags(a) == tags(b) and a.faithfulness.tag == b.faithfulness.tag


def test_scaling_invariance():
    for rep in CORPUS:
        if rep.dual.kind != R_LINE:
            continue
        base = analyze(rep)
        for q in (Fraction(3, 2), Fraction(5), Fraction(1, 7)):
            assert _same_verdicts(analyze(_scaled(rep, q)), base)


def test_negation_invariance():
    for rep in CORPUS:
        if rep.dual.is_trivial:
            continue
        assert _same_verdicts(analyze(_scaled(rep, -1)), analyze(rep))


def test_no_witnesses_reverify():
    for rep in CORPUS:
        r = analyze(rep)
        for name, v in r.slots().items():
            if v.tag != NO:
                continue
            ev = v.evidence
            if "ideal" in ev:
                g = build_fusion_graph(rep)
                S = frozenset(g.vertices.index(x) for x in ev["ideal"])
                assert 0 < len(S) < g.n
                assert is_hereditary(g, S) and is_saturated(g, S)
            if "group" in ev and "functional" not in ev and ev["group"]["tag"] not in (ALL_OF_R, FULL_ZD):
                g = build_fusion_graph(rep)
                pl = path_label_closure(g, 0, 0, rep.dual.basis if rep.dual.kind == R_LINE else None)
                if rep.dual.kind == R_LINE:
                    assert q_rank(pl.cycle_labels) <= 1
                    assert closed_subgroup_R(pl.directed_cycle_labels, rep.dual.basis).tag != ALL_OF_R
                else:
                    assert not lattice_is_full_Zd(list(pl.cycle_labels), rep.dual.torus_dim)


def test_equivalent_slots_never_contradict():
    for rep in CORPUS:
        r = analyze(rep)
        pair = {r.isa.tag, r.fixed_point_purely_infinite_simple.tag}
        assert pair != {YES, NO}
        if isinstance(rep.ring, SU2) and rep.dual.kind == R_LINE:
            assert {r.crossed_product_simple.tag, r.crossed_product_purely_infinite_simple.tag} != {YES, NO}
        if r.crossed_product_purely_infinite_simple.tag == YES:
            assert r.crossed_product_simple.tag == YES


def test_every_verdict_has_evidence_or_reason():
    for rep in CORPUS:
        for v in analyze(rep).slots().values():
            assert (v.tag in (YES, NO) and v.evidence) or (v.tag not in (YES, NO) and v.reason)
    with pytest.raises(ValueError):
        Verdict(YES)
    with pytest.raises(ValueError):
        Verdict(UNKNOWN)


def test_torus_d1_against_walk_enumeration():
    """Independent check of the Z-dual branch by enumerating closed walks to length 10."""
    checked = 0
    for rep in CORPUS:
        if rep.dual.kind != TORUS or rep.dual.torus_dim != 1:
            continue
        g = build_fusion_graph(rep)
        zero = IntVector.zero(1)
        walks = {v: {w.entries[0] for w in closed_walk_labels(g, v, 10, zero)} for v in range(g.n)}
        all_labels = set().union(*walks.values())
        r = analyze(rep)
        if not is_cofinal(g):
            assert r.crossed_product_simple.tag == NO
            continue
        step = 0
        for x in all_labels:
            step = math.gcd(step, abs(x))
        pos = any(x > 0 for x in all_labels)
        neg = any(x < 0 for x in all_labels)
        has_zero = 0 in all_labels
        want_simple = step == 1 and ((pos and neg) or not has_zero)
        assert (r.crossed_product_simple.tag == YES) == want_simple, rep
        at_triv = walks[0]
        t_step = 0
        for x in at_triv:
            t_step = math.gcd(t_step, abs(x))
        want_isa = t_step == 1 and any(x > 0 for x in at_triv) and any(x < 0 for x in at_triv)
        assert (r.isa.tag == YES) == want_isa, rep
        if want_simple:
            assert (r.crossed_product_purely_infinite_simple.tag == YES) == (pos and neg)
        checked += 1
    assert checked >= 10


def test_reports_are_deterministic():
    for rep in CORPUS[:60]:
        assert analyze(rep).dumps() == analyze(rep).dumps()


def test_independence_must_be_declared():
    basis = RealBasis((1.0, 2 ** 0.5), independence_declared=False)
    rep = Representation(cyclic(1), AbelianDual.r_line(basis),
                         (Summand(0, rc(1, 0)), Summand(0, rc(0, -1))))
    with pytest.raises(ValueError):
        analyze(rep)
