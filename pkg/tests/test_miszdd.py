import random

import pytest

from oracles import maximal_independent_sets, random_edges
from zddcolor.graph import Graph, VertexOrdering, complete_graph, cycle_graph, maximal_path_ordering, myciel
from zddcolor.miszdd import ZddBudgetExceeded, canonical_key, make_mis_zdd


def sets_of(mis) -> set[frozenset[int]]:
    return {frozenset(s) for s in mis.sets()}


def test_triangle_singletons():
    mis = make_mis_zdd(complete_graph(3))
    assert sets_of(mis) == {frozenset({0}), frozenset({1}), frozenset({2})}


def test_five_cycle_count():
    mis = make_mis_zdd(cycle_graph(5))
    assert mis.zdd.count_accepted() == 5
    assert sets_of(mis) == maximal_independent_sets(5, cycle_graph(5).edges())


def test_edgeless_graph():
    mis = make_mis_zdd(Graph(6))
    assert mis.zdd.count_accepted() == 1
    assert mis.sets() == [list(range(6))]


def test_empty_graph():
    mis = make_mis_zdd(Graph(0))
    assert mis.sets() == [[]]


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_random_graphs_match_brute_force(p):
    rng = random.Random(int(p * 100))
    for _ in range(15):
        n = rng.randint(1, 12)
        g = Graph(n, random_edges(n, p, rng))
        expected = maximal_independent_sets(n, g.edges())
        for ordering in (None, maximal_path_ordering(g)):
            mis = make_mis_zdd(g, ordering)
            assert sets_of(mis) == expected
            assert mis.zdd.count_accepted() == len(expected)
            assert mis.zdd.is_canonical()
            mis.zdd.check_invariants()


def test_ordering_translation():
    g = myciel(3)
    order = maximal_path_ordering(g)
    mis = make_mis_zdd(g, order)
    for s in mis.sets():
        assert g.is_maximal_independent(s)
        assert mis.accepts(s)
        assert mis.to_vertices(mis.to_elements(s)) == sorted(s)


def test_pricing_in_vertex_space():
    g = cycle_graph(5)
    mis = make_mis_zdd(g, VertexOrdering.from_order([4, 2, 0, 3, 1]))
    w = [0.1, 0.2, 0.9, 0.3, 0.8]
    got, value = mis.max_weight_set(w)
    best = max(maximal_independent_sets(5, g.edges()), key=lambda s: sum(w[v] for v in s))
    assert set(got) == best
    assert value == pytest.approx(sum(w[v] for v in best), abs=1e-12)


def test_restrict_in_vertex_space():
    g = cycle_graph(5)
    mis = make_mis_zdd(g, maximal_path_ordering(g))
    mis.restrict([0, 2])
    assert not mis.accepts([0, 2])
    assert mis.zdd.count_accepted() == 4


def test_budget_exceeded():
    g = Graph(12, random_edges(12, 0.3, random.Random(0)))
    with pytest.raises(ZddBudgetExceeded) as info:
        make_mis_zdd(g, budget=5)
    assert info.value.size > 5


def test_ordering_length_mismatch():
    with pytest.raises(ValueError):
        make_mis_zdd(cycle_graph(5), VertexOrdering.identity(4))


def test_canonical_key():
    # U = {1, 3}; from position 2 the next candidate is 3
    assert canonical_key(0b1010, 2, 4) == (0b1010, 3)
    assert canonical_key(0b0010, 2, 4) == (0b0010, 4)
