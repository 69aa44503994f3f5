"""
Tests for maximal clique enumeration
"""

import random
from itertools import combinations

import pytest

from core.cliques import (
    CliqueSet,
    canonical_order,
    clique_size_distribution,
    degeneracy_ordering,
    enumerate_maximal_cliques,
)
from core.errors import CliqueBudgetExceeded
from core.graph import Graph
from utils.datasets import load_dataset
from utils.file_formats import read_clique_dump, write_clique_dump


def brute_force_maximal_cliques(graph):
    """Every vertex subset that is a clique and cannot be extended"""
    nbrs = graph.neighbor_sets

    def is_clique(vs):
        return all(v in nbrs[u] for u, v in combinations(vs, 2))

    cliques = [
        set(vs)
        for size in range(1, graph.n + 1)
        for vs in combinations(range(graph.n), size)
        if is_clique(vs)
    ]
    maximal = [c for c in cliques if not any(c < other for other in cliques)]
    return canonical_order(maximal)


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def test_toy_cliques(toy_graph):
    cs = enumerate_maximal_cliques(toy_graph)
    assert cs.cliques == ((0, 1, 2), (1, 2, 3), (4, 5, 6))
    assert cs.weights == (3, 3, 3)
    assert clique_size_distribution(cs) == {3: 3}


def test_karate_has_36_cliques():
    cs = enumerate_maximal_cliques(load_dataset("karate"))
    assert cs.d == 36
    assert sum(clique_size_distribution(cs).values()) == 36


def test_edgeless_graph_gives_weightless_singletons():
    cs = enumerate_maximal_cliques(Graph.from_edges(3, []))
    assert cs.cliques == ((0,), (1,), (2,))
    assert cs.weights == (0, 0, 0)


def test_single_edge():
    cs = enumerate_maximal_cliques(Graph.from_edges(2, [(0, 1)]))
    assert clique_size_distribution(cs) == {2: 1}


def test_matches_brute_force_on_random_small_graphs():
    rng = random.Random(7)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 12), rng.choice([0.2, 0.4, 0.6, 0.8]))
        expected = tuple(brute_force_maximal_cliques(g))
        assert enumerate_maximal_cliques(g).cliques == expected


@pytest.mark.parametrize("threads", [2, 3, 8])
def test_thread_count_does_not_change_result(threads):
    rng = random.Random(threads)
    g = random_graph(rng, 40, 0.3)
    assert enumerate_maximal_cliques(g, threads=threads) == enumerate_maximal_cliques(g)


def test_every_vertex_in_some_clique():
    rng = random.Random(3)
    g = random_graph(rng, 25, 0.1)
    covered = {v for c in enumerate_maximal_cliques(g) for v in c}
    assert covered == set(range(g.n))


def test_budget_exceeded():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
    with pytest.raises(CliqueBudgetExceeded):
        enumerate_maximal_cliques(g, budget=2)
    assert enumerate_maximal_cliques(g, budget=3).d == 3


def test_degeneracy_ordering_is_a_permutation(toy_graph):
    order = degeneracy_ordering(toy_graph)
    assert sorted(order) == list(range(toy_graph.n))
    assert order[0] == 0


def test_canonical_order_sorts_by_size_then_members():
    cs = CliqueSet.from_cliques([(5, 4), (3, 1, 2), (0, 6)], 7)
    assert cs.cliques == ((1, 2, 3), (0, 6), (4, 5))
    assert cs.weights == (3, 1, 1)


def test_clique_dump_uses_original_ids(toy_graph, tmp_path):
    cs = enumerate_maximal_cliques(toy_graph)
    path = tmp_path / "cliques.txt"
    write_clique_dump(cs, toy_graph, path)
    assert path.read_text().splitlines()[0] == "d=3"
    assert read_clique_dump(path) == [(1, 2, 3), (2, 3, 4), (5, 6, 7)]


def test_clique_set_ignores_edge_input_order():
    rng = random.Random(44)
    for _ in range(20):
        n = rng.randint(3, 25)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.35]
        shuffled = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in edges]
        rng.shuffle(shuffled)
        assert enumerate_maximal_cliques(Graph.from_edges(n, shuffled)) == enumerate_maximal_cliques(
            Graph.from_edges(n, edges)
        )
