"""
Tests for cosine distances, average-linkage hierarchies, cuts and k-means
"""

import random
from itertools import combinations

import numpy as np
import pytest
import scipy.sparse as sp
from scipy.cluster.hierarchy import linkage
from scipy.spatial.distance import squareform

from core.embedding import embed, normalize_rows
from core.errors import DenseBudgetExceeded, InvalidKError
from core.graph import Graph
from core.partition import Partition
from features.clustering import agglomerative_hierarchy, cosine_distance_matrix, cut, gram_matrix, kmeans
from features.planted_partition import planted_partition_graph

TOY_SPLIT = {frozenset({0, 1, 2, 3}), frozenset({4, 5, 6})}


@pytest.fixture
def toy_embedding(toy_graph):
    return embed(toy_graph)[0]


def test_toy_distances(toy_embedding):
    D = cosine_distance_matrix(toy_embedding)
    assert D.shape == (7, 7)
    assert np.all(np.diag(D) == 0)
    assert D[1, 2] == pytest.approx(0.0, abs=1e-12)
    assert D[0, 4] == pytest.approx(1.0)
    assert D[4, 6] == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(D, D.T)
    assert D.min() >= 0 and D.max() <= 2


def test_dense_budget(toy_embedding):
    with pytest.raises(DenseBudgetExceeded) as info:
        cosine_distance_matrix(toy_embedding, max_vertices=5)
    assert "kmeans" in str(info.value)


def test_zero_merges_come_first(toy_embedding):
    dg = agglomerative_hierarchy(cosine_distance_matrix(toy_embedding))
    assert len(dg.merges) == 6
    first = dg.merges[:3]
    assert all(m.distance == pytest.approx(0.0, abs=1e-12) for m in first)
    distances = [m.distance for m in dg.merges]
    assert distances == sorted(distances)
    assert cut(dg, 4).block_sets() == {
        frozenset({0}), frozenset({1, 2}), frozenset({3}), frozenset({4, 5, 6})
    }


def test_toy_cut_at_two(toy_embedding):
    dg = agglomerative_hierarchy(cosine_distance_matrix(toy_embedding))
    p = cut(dg, 2)
    assert p.block_sets() == TOY_SPLIT
    assert p.assignment == (0, 0, 0, 0, 1, 1, 1)


def test_cut_extremes(toy_embedding):
    dg = agglomerative_hierarchy(cosine_distance_matrix(toy_embedding))
    assert cut(dg, 7) == Partition.singletons(7)
    assert cut(dg, 1) == Partition.single_block(7)
    for bad in (0, 8):
        with pytest.raises(InvalidKError):
            cut(dg, bad)


def test_coincident_pairs_merge_at_zero():
    D = squareform([0.0, 1.0, 1.0, 1.0, 1.0, 0.0])
    dg = agglomerative_hierarchy(D)
    assert [round(m.distance, 12) for m in dg.merges[:2]] == [0.0, 0.0]
    assert cut(dg, 2).block_sets() == {frozenset({0, 1}), frozenset({2, 3})}


def test_equidistant_tie_merges_lowest_pair():
    D = squareform([0.5, 0.5, 0.5])
    dg = agglomerative_hierarchy(D)
    assert (dg.merges[0].a, dg.merges[0].b) == (0, 1)


def test_tied_merges_ordered_by_cluster_ids():
    # the chain starts at 0, walks to 4 and closes (4, 5) before it ever sees (1, 2)
    D = np.full((6, 6), 0.9)
    np.fill_diagonal(D, 0.0)
    for i, j, d in ((1, 2, 0.1), (4, 5, 0.1), (0, 4, 0.2)):
        D[i, j] = D[j, i] = d
    dg = agglomerative_hierarchy(D)

    assert [(m.a, m.b, m.new_id, m.size) for m in dg.merges[:3]] == [(1, 2, 6, 2), (4, 5, 7, 2), (0, 7, 8, 3)]
    assert dg.merges[0].distance == pytest.approx(0.1)
    assert dg.merges[2].distance == pytest.approx(0.55)
    assert cut(dg, 5).block_sets() == {
        frozenset({0}), frozenset({1, 2}), frozenset({3}), frozenset({4}), frozenset({5})
    }


def test_tied_merge_waits_for_its_inputs():
    D = squareform([0.0, 0.0, 0.7, 0.0, 0.7, 0.7])
    dg = agglomerative_hierarchy(D)
    assert [(m.a, m.b, m.size) for m in dg.merges] == [(0, 1, 2), (2, 4, 3), (3, 5, 4)]
    assert [m.distance for m in dg.merges] == pytest.approx([0.0, 0.0, 0.7])


@pytest.mark.parametrize("density", [0.02, 0.4])
def test_gram_matrix_dense_and_sparse_paths(density):
    Z = sp.random(40, 300, density=density, format="csr", random_state=3)
    assert np.allclose(gram_matrix(Z), (Z @ Z.T).toarray())


def test_agglomerative_blocks_follow_vertex_relabeling():
    rng = random.Random(8)
    g, _ = planted_partition_graph(40, 4, 0.8, 0.05, seed=3)
    edges = list(g.edges())
    for _ in range(5):
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in edges])
        blocks = []
        for graph in (g, h):
            e = embed(graph)[0]
            dg = agglomerative_hierarchy(cosine_distance_matrix(e), leaves=e.active_rows, n_vertices=graph.n)
            blocks.append(cut(dg, 4).block_sets())
        assert {frozenset(perm[v] for v in block) for block in blocks[0]} == blocks[1]


def test_matches_scipy_average_linkage():
    rng = np.random.default_rng(11)
    for _ in range(10):
        points = rng.random((12, 3))
        condensed = np.array([np.linalg.norm(points[i] - points[j]) for i, j in combinations(range(12), 2)])
        ours = agglomerative_hierarchy(squareform(condensed)).linkage_matrix()
        theirs = linkage(condensed, method="average")
        assert np.allclose(ours, theirs)


def test_every_cut_is_a_partition():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(4, 15)
        g = Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.4])
        e = embed(g)[0]
        dg = agglomerative_hierarchy(cosine_distance_matrix(e), leaves=e.active_rows, n_vertices=n)
        for k in range(1, dg.n + 1):
            p = cut(dg, k)
            assert p.n == n
            assert sorted(v for block in p.blocks for v in block) == list(range(n))
            assert p.k == k + len(e.zero_rows)


def test_coarser_cuts_contain_finer_ones(toy_embedding):
    dg = agglomerative_hierarchy(cosine_distance_matrix(toy_embedding))
    for k in range(2, 8):
        assert cut(dg, k).refines(cut(dg, k - 1))


def test_zero_rows_become_singletons():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2)])
    e = embed(g)[0]
    dg = agglomerative_hierarchy(cosine_distance_matrix(e), leaves=e.active_rows, n_vertices=5)
    p = cut(dg, 1)
    assert p.block_sets() == {frozenset({0, 1, 2}), frozenset({3}), frozenset({4})}


@pytest.mark.parametrize("seed", [0, 1, 2, 42])
def test_kmeans_splits_toy(toy_embedding, seed):
    assert kmeans(toy_embedding, 2, seed).block_sets() == TOY_SPLIT


def test_kmeans_is_deterministic():
    e = embed(Graph.from_edges(30, [(i, (i * 7 + 3) % 30) for i in range(30)] + [(i, i + 1) for i in range(29)]))[0]
    assert kmeans(e, 4, seed=9) == kmeans(e, 4, seed=9)


def test_kmeans_distinct_rows_each_own_cluster():
    Z = sp.csr_matrix(np.eye(4))
    e = normalize_rows(Z)
    assert kmeans(e, 4, seed=0) == Partition.singletons(4)


def test_kmeans_rejects_bad_k(toy_embedding):
    for bad in (1, 8):
        with pytest.raises(InvalidKError):
            kmeans(toy_embedding, bad, seed=0)
