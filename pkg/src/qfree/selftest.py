"""A small packaged invariant suite behind ``qfree selftest``."""
from __future__ import annotations

import random
import time
from typing import Callable

from .abelian import IntVector, RealBasis, RealCoord, smith_normal_form, subsemigroup_R_is_all
from .fusion import SU2, builtin_table, cyclic, klein4, su2_character_oracle, symmetric3, validate_ring
from .graph import (
    Edge,
    FusionGraph,
    build_fusion_graph,
    export_json,
    graph_simple,
    hereditary_saturated_sets,
    is_single_cycle,
    k_theory,
    parse_graph_json,
)
from .oracles import DENSE, NOT_DENSE, density_sample, ideal_oracle
from .repn import AbelianDual, Representation, Summand
from .verdicts import NO, YES, analyze


def check_su2_fusion() -> bool:
    ring = SU2()
    return all(ring.fuse(n, m) == su2_character_oracle(n, m) for n in range(31) for m in range(31))


def check_builtin_tables() -> bool:
    tables = [cyclic(n) for n in range(1, 13)] + [symmetric3(), klein4()]
    return all(not validate_ring(t) for t in tables)


def _random_graph(rng: random.Random, n: int, total: int) -> FusionGraph | None:
    pairs = [(s, d) for s in range(n) for d in range(n)]
    counts: dict = {}
    for _ in range(rng.randint(n, total)):
        p = rng.choice(pairs)
        counts[p] = counts.get(p, 0) + 1
    g = FusionGraph(tuple(f"v{i}" for i in range(n)),
                    tuple(Edge(s, d, m) for (s, d), m in sorted(counts.items())))
    A = g.adjacency
    if (A.sum(axis=1) == 0).any() or (A.sum(axis=0) == 0).any():
        return None
    return g


def check_ideal_oracle(samples: int = 40, seed: int = 7) -> bool:
    rng = random.Random(seed)
    done = 0
    while done < samples:
        g = _random_graph(rng, rng.randint(1, 4), 6)
        if g is None:
            continue
        done += 1
        hs = hereditary_saturated_sets(g)
        if hs != ideal_oracle(g):
            return False
        if graph_simple(g).simple != (len(hs) == 2 and not is_single_cycle(g)):
            return False
    return True


def check_k_theory() -> bool:
    triv = cyclic(1)
    for n in range(2, 10):
        g = build_fusion_graph(Representation(triv, AbelianDual(), (Summand(0, None, n),)))
        kt = k_theory(g)
        if kt.k0_torsion != ((n - 1,) if n > 2 else ()) or kt.k0_free_rank or kt.k1_rank:
            return False
    reg = build_fusion_graph(Representation(cyclic(2), AbelianDual(), (Summand(0), Summand(1))))
    kt = k_theory(reg)
    return kt.k0_torsion == () and kt.k0_free_rank == 0 and kt.k1_rank == 0


def check_smith_reassembly(samples: int = 50, seed: int = 3) -> bool:
    rng = random.Random(seed)
    for _ in range(samples):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        snf = smith_normal_form(M)
        if snf.reassemble() != M:
            return False
        nz = [f for f in snf.factors if f]
        if any(b % a for a, b in zip(nz, nz[1:])):
            return False
    return True


def check_density_sampler(samples: int = 20, seed: int = 11) -> bool:
    rng = random.Random(seed)
    basis = RealBasis((1.0, 2 ** 0.5, 3 ** 0.5))
    for _ in range(samples):
        gens = [RealCoord.of(*(rng.choice([-1, 0, 0, 1]) for _ in range(3))) for _ in range(3)]
        rep = subsemigroup_R_is_all(gens, basis)
        call, _ = density_sample([g.value(basis) for g in gens])
        if (call == DENSE and not rep.is_all) or (call == NOT_DENSE and rep.is_all):
            return False
    return True


def check_analysis_anchors() -> bool:
    b = RealBasis((1.0, 2 ** 0.5))
    r = AbelianDual.r_line(b)
    su2 = SU2()
    cases = [
        (Representation(builtin_table("Z2"), AbelianDual(), (Summand(0), Summand(1))), "isa", YES),
        (Representation(su2, AbelianDual(), (Summand(1),)), "isa", YES),
        (Representation(su2, AbelianDual(), (Summand(2),)), "isa", NO),
        (Representation(su2, r, (Summand(1, RealCoord.of(1, 0)), Summand(1, RealCoord.of(0, -1)))),
         "crossed_product_purely_infinite_simple", YES),
        (Representation(su2, r, (Summand(1, RealCoord.of(1, 0)), Summand(1, RealCoord.of(0, 1)))),
         "crossed_product_simple", NO),
        (Representation(cyclic(2), AbelianDual.torus(1),
                        (Summand(0, IntVector.of(1)), Summand(1, IntVector.of(-1)))),
         "crossed_product_simple", YES),
    ]
    return all(getattr(analyze(rep), slot).tag == want for rep, slot, want in cases)


def check_graph_round_trip() -> bool:
    g = build_fusion_graph(Representation(symmetric3(), AbelianDual(), (Summand(0), Summand(2))))
    return parse_graph_json(export_json(g)) == g


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("SU(2) fusion equals the character oracle for spins <= 30", check_su2_fusion),
    ("built-in fusion tables satisfy the ring axioms", check_builtin_tables),
    ("hereditary saturated sets equal the matrix-model ideals", check_ideal_oracle),
    ("K-theory of O_n graphs and the Z/2 regular graph", check_k_theory),
    ("Smith form reassembles and factors divide", check_smith_reassembly),
    ("closed semigroup test agrees with the density sampler", check_density_sampler),
    ("analysis anchors", check_analysis_anchors),
    ("graph JSON round trip", check_graph_round_trip),
]


def run_selftest(out=print) -> bool:
    ok = True
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            passed = fn()
            detail = ""
        except Exception as exc:  # report and keep going
            passed, detail = False, f" ({type(exc).__name__}: {exc})"
        ok &= passed
        out(f"{'PASS' if passed else 'FAIL'}  {name}  [{time.perf_counter() - t0:.2f}s]{detail}")
    out(f"{'all checks passed' if ok else 'some checks failed'}")
    return ok
