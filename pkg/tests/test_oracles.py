from __future__ import annotations

from corpus import graph_from_matrix
from qfree.abelian import IntVector
from qfree.fusion import cyclic, symmetric3
from qfree.graph import Edge, FusionGraph
from qfree.oracles import (
    DENSE,
    INCONCLUSIVE,
    NOT_DENSE,
    GraphCorrespondence,
    brute_force_faithful,
    closed_walk_labels,
    density_sample,
    ideal_oracle,
    path_labels,
)


def test_density_sampler_known_cases():
    assert density_sample([1.0, -2 ** 0.5, 3 ** 0.5])[0] == DENSE
    assert density_sample([1.0, 2.0])[0] == NOT_DENSE
    assert density_sample([1.0, -1.0])[0] == NOT_DENSE
    assert density_sample([1.0, 2 ** 0.5])[0] == NOT_DENSE  # one-sided: left half stays empty
    call, cov = density_sample([-6.5605, 3.8783])
    assert call in (DENSE, INCONCLUSIVE)


def test_matrix_oracle_small_graphs():
    assert ideal_oracle(graph_from_matrix([[2, 0], [0, 2]])) == [frozenset(), frozenset({0}), frozenset({1}),
                                                                frozenset({0, 1})]
    assert ideal_oracle(graph_from_matrix([[1, 1], [1, 1]])) == [frozenset(), frozenset({0, 1})]
    # v0 -> v1 with loops on both: {v1} is hereditary, {v0} is not
    assert ideal_oracle(graph_from_matrix([[1, 1], [0, 1]])) == [frozenset(), frozenset({1}), frozenset({0, 1})]


def test_correspondence_conditions_separately():
    C = GraphCorrespondence.from_graph(graph_from_matrix([[1, 1], [0, 1]]))
    assert not C.is_invariant(frozenset({0}))
    assert C.is_invariant(frozenset({1}))
    # a vertex all of whose edges go into S is forced into S by saturation
    C2 = GraphCorrespondence.from_graph(graph_from_matrix([[0, 1], [0, 1]]))
    assert C2.is_invariant(frozenset({1}))
    assert not C2.is_saturated(frozenset({1}))


def test_walk_enumerators():
    g = FusionGraph(("a", "b"), (Edge(0, 1, 1, IntVector.of(1)), Edge(1, 0, 1, IntVector.of(2)),
                                 Edge(0, 0, 1, IntVector.of(-1))))
    labels = {x.entries[0] for x in closed_walk_labels(g, 0, 3, IntVector.zero(1))}
    # loop (-1), loop twice, loop three times, a->b->a (3), and that 2-cycle with one loop
    assert labels == {-1, -2, -3, 3, 2}
    assert {x.entries[0] for x in path_labels(g, 0, 1, 2)} == {1, 0}


def test_brute_force_faithful_small():
    assert brute_force_faithful(cyclic(2), {1: 1})
    assert not brute_force_faithful(cyclic(2), {0: 2})
    assert brute_force_faithful(symmetric3(), {2: 1})
    assert not brute_force_faithful(symmetric3(), {1: 1})
