"""Acceptance criteria 1-10, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measurement.  Run
``python tests/test_acceptance.py`` for the summary alone.
"""
from __future__ import annotations

import json
import random
import subprocess
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from corpus import graph_corpus, rep_corpus  # noqa: E402
from qfree.abelian import RealBasis, RealCoord, subsemigroup_R_is_all  # noqa: E402
from qfree.document import parse_input  # noqa: E402
from qfree.fusion import SU2, cyclic, su2_character_oracle  # noqa: E402
from qfree.graph import (  # noqa: E402
    build_fusion_graph,
    export_json,
    graph_simple,
    hereditary_saturated_sets,
    is_single_cycle,
    k_theory,
    parse_graph_json,
)
from qfree.oracles import DENSE, INCONCLUSIVE, NOT_DENSE, density_sample, ideal_oracle  # noqa: E402
from qfree.repn import AbelianDual, Representation, Summand  # noqa: E402
from qfree.verdicts import (  # noqa: E402
    HYPOTHESIS_VIOLATED,
    NO,
    YES,
    analyze,
    analyze_su2,
    analyze_su2_real,
)

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = sorted((ROOT / "samples").glob("*.json"))
SQRT2 = RealBasis((1.0, 2 ** 0.5))
NONE = AbelianDual.trivial()

_GRAPHS: list = []


def graphs():
    if not _GRAPHS:
        _GRAPHS.extend(graph_corpus())
    return _GRAPHS


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}  [{detail}]"
    out = getattr(sys, "__stdout__", None) or sys.stdout
    out.write("\n" + line + "\n")
    out.flush()
    assert ok, line


# -- 1 ---------------------------------------------------------------------------

def criterion_1():
    su2 = SU2()
    t0 = time.perf_counter()
    bad = [(n, m) for n in range(31) for m in range(31) if su2.fuse(n, m) != su2_character_oracle(n, m)]
    dt = time.perf_counter() - t0
    return not bad and dt < 1.0, f"961 cases, {len(bad)} mismatches, {dt:.3f}s (< 1 s)"


def test_criterion_1_su2_fusion_exact():
    report(1, "SU(2) fusion equals the Laurent-character oracle", *criterion_1())


# -- 2 ---------------------------------------------------------------------------

def criterion_2():
    su2 = SU2()
    a = su2.fuse(1, 1) == {0: 1, 2: 1}
    b = su2.fuse(2, 3) == {1: 1, 3: 1, 5: 1}
    return a and b, f"π1⊗π1 = {su2.render(su2.fuse(1, 1))}; π2⊗π3 = {su2.render(su2.fuse(2, 3))}"


def test_criterion_2_su2_spot_checks():
    report(2, "Clebsch-Gordan spot checks", *criterion_2())


# -- 3 ---------------------------------------------------------------------------

def criterion_3():
    t0 = time.perf_counter()
    r1 = analyze_su2(Representation(SU2(), NONE, (Summand(1),)))
    r2 = analyze_su2(Representation(SU2(), NONE, (Summand(2),)))
    dt = time.perf_counter() - t0
    ok = (r1.isa.tag == YES and r1.fixed_point_purely_infinite_simple.tag == YES
          and r2.isa.tag == NO and r2.isa.evidence.get("parity") == "even" and dt < 1.0)
    return ok, (f"π1: ISA {r1.isa.tag}, fixed point {r1.fixed_point_purely_infinite_simple.tag}; "
                f"π2: ISA {r2.isa.tag} (parity {r2.isa.evidence.get('parity')}); {dt:.3f}s")


def test_criterion_3_su2_isa():
    report(3, "SU(2) shift-absorption verdicts", *criterion_3())


# -- 4 ---------------------------------------------------------------------------

def _su2r(*pairs):
    return Representation(SU2(), AbelianDual.r_line(SQRT2),
                          tuple(Summand(n, RealCoord.of(*c)) for c, n in pairs))


def criterion_4():
    t0 = time.perf_counter()
    a = analyze_su2_real(_su2r(((1, 0), 1), ((0, -1), 1)))
    b = analyze_su2_real(_su2r(((1, 0), 1), ((0, 1), 1)))
    c = analyze_su2_real(_su2r(((1, 0), 1), ((-1, 0), 1)))
    dt = time.perf_counter() - t0
    ok = (a.crossed_product_purely_infinite_simple.tag == YES
          and b.crossed_product_simple.tag == NO
          and c.crossed_product_simple.tag == HYPOTHESIS_VIOLATED
          and c.faithfulness.tag == "NotFaithful" and dt < 1.0)
    return ok, (f"(1,π1)⊕(−√2,π1): p.i.s. {a.crossed_product_purely_infinite_simple.tag}; "
                f"(1,π1)⊕(√2,π1): simple {b.crossed_product_simple.tag}; "
                f"(1,π1)⊕(−1,π1): {c.crossed_product_simple.tag}; {dt:.3f}s")


def test_criterion_4_su2_real_dichotomy():
    report(4, "SU(2) x R dichotomy", *criterion_4())


# -- 5 ---------------------------------------------------------------------------

def criterion_5():
    gs = graphs()
    t0 = time.perf_counter()
    bad = [g for g in gs if hereditary_saturated_sets(g) != ideal_oracle(g)]
    dt = time.perf_counter() - t0
    ok = not bad and len(gs) >= 200 and all(g.n <= 4 and int(g.adjacency.sum()) <= 6 for g in gs) and dt < 60
    return ok, f"{len(gs)} graphs, {len(bad)} disagreements, {dt:.2f}s (< 60 s)"


def test_criterion_5_ideal_oracle():
    report(5, "hereditary saturated sets equal matrix-model invariant ideals", *criterion_5())


# -- 6 ---------------------------------------------------------------------------

def criterion_6():
    gs = graphs()
    bad = 0
    simple = 0
    for g in gs:
        s = graph_simple(g).simple
        simple += s
        bad += s != (len(hereditary_saturated_sets(g)) == 2 and not is_single_cycle(g))
    return bad == 0, f"{len(gs)} graphs, {simple} simple, {bad} disagreements"


def test_criterion_6_simplicity_cross_check():
    report(6, "graph simplicity equals two-ideal lattice and not a single cycle", *criterion_6())


# -- 7 ---------------------------------------------------------------------------

def criterion_7():
    details = []
    ok = True
    for n in range(2, 10):
        kt = k_theory(build_fusion_graph(Representation(cyclic(1), NONE, (Summand(0, None, n),))))
        want = (n - 1,) if n > 2 else ()
        ok &= kt.k0_torsion == want and kt.k0_free_rank == 0 and kt.k1_rank == 0
    details.append("O_2..O_9: K0 = Z/(n-1), K1 = 0" if ok else "O_n mismatch")
    reg = k_theory(build_fusion_graph(Representation(cyclic(2), NONE, (Summand(0), Summand(1)))))
    reg_ok = reg.k0_torsion == () and reg.k0_free_rank == 0 and reg.k1_rank == 0
    details.append(f"Z/2 regular: {reg}")
    return ok and reg_ok, "; ".join(details)


def test_criterion_7_k_theory_anchors():
    report(7, "K-theory anchors", *criterion_7())


# -- 8 ---------------------------------------------------------------------------

def criterion_8(samples: int = 100, seed: int = 20241015):
    basis = RealBasis((1.0, 2 ** 0.5, 3 ** 0.5))
    rng = random.Random(seed)
    counts = {DENSE: 0, NOT_DENSE: 0, INCONCLUSIVE: 0}
    disagreements = []
    for _ in range(samples):
        k = rng.randint(1, 4)
        gens = []
        while len(gens) < k:
            c = tuple(rng.randint(-2, 2) for _ in range(3))
            if any(c):
                gens.append(RealCoord.of(*c))
        exact = subsemigroup_R_is_all(gens, basis).is_all
        call, cov = density_sample([g.value(basis) for g in gens], coef_max=60, lo=-10.0, hi=10.0, eps=0.05)
        counts[call] += 1
        if call != INCONCLUSIVE and (call == DENSE) != exact:
            disagreements.append(([str(g) for g in gens], exact, call, cov))
    conclusive = counts[DENSE] + counts[NOT_DENSE]
    detail = (f"{samples} generator sets: {counts[DENSE]} dense, {counts[NOT_DENSE]} not dense, "
              f"{counts[INCONCLUSIVE]} inconclusive; {len(disagreements)} disagreements "
              f"over {conclusive} conclusive")
    return not disagreements and conclusive > 0, detail


def test_criterion_8_subsemigroup_vs_sampler():
    report(8, "closed-subsemigroup test agrees with the epsilon-density sampler", *criterion_8())


# -- 9 ---------------------------------------------------------------------------

def _contradictions(r, rep) -> list[str]:
    out = []
    if {r.isa.tag, r.fixed_point_purely_infinite_simple.tag} == {YES, NO}:
        out.append("ISA vs fixed-point pure infiniteness")
    if isinstance(rep.ring, SU2) and rep.dual.kind == "r_line":
        if {r.crossed_product_simple.tag, r.crossed_product_purely_infinite_simple.tag} == {YES, NO}:
            out.append("simple vs purely infinite simple")
    return out


def criterion_9():
    reps = rep_corpus() + [parse_input(p.read_text(encoding="utf-8")) for p in SAMPLES]
    bad = []
    for rep in reps:
        r = analyze(rep)
        for c in _contradictions(r, rep):
            bad.append((rep.render(), c))
    return not bad, f"{len(reps)} representations, {len(bad)} contradictory reports"


def test_criterion_9_equivalences_sound():
    report(9, "equivalent slots never receive Yes and No together", *criterion_9())


# -- 10 --------------------------------------------------------------------------

def criterion_10():
    runs_ok = True
    for path in SAMPLES:
        outs = []
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "qfree.cli", "analyze", str(path), "--json"],
                                  capture_output=True)
            outs.append(proc.stdout)
        runs_ok &= outs[0] == outs[1] and bool(outs[0])
    reps = rep_corpus()
    in_proc = all(analyze(r).dumps() == analyze(r).dumps() for r in reps)
    trips = graphs() + [build_fusion_graph(r) for r in reps
                        if getattr(r.ring, "is_finite", False) and r.ring.size <= 6]
    round_ok = all(parse_graph_json(export_json(g)) == g for g in trips)
    json.loads(export_json(trips[0]))
    return runs_ok and in_proc and round_ok, (
        f"{len(SAMPLES)} samples byte-identical across processes: {runs_ok}; "
        f"{len(reps)} reports identical in-process: {in_proc}; "
        f"{len(trips)} graph JSON round trips: {round_ok}")


def test_criterion_10_determinism_and_round_trip():
    report(10, "deterministic JSON output and graph round trip", *criterion_10())


if __name__ == "__main__":
    failed = 0
    for fn in [test_criterion_1_su2_fusion_exact, test_criterion_2_su2_spot_checks,
               test_criterion_3_su2_isa, test_criterion_4_su2_real_dichotomy,
               test_criterion_5_ideal_oracle, test_criterion_6_simplicity_cross_check,
               test_criterion_7_k_theory_anchors, test_criterion_8_subsemigroup_vs_sampler,
               test_criterion_9_equivalences_sound, test_criterion_10_determinism_and_round_trip]:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
