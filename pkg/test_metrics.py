"""
Tests for modularity, permanence, internal clustering coefficient and NMI
"""

import math
import random
from collections import Counter
from itertools import combinations

import pytest

from core.errors import MetricError
from core.graph import Graph, parse_edge_list
from core.partition import Partition
from features.metrics import (
    REPORT_COLUMNS,
    internal_clustering_coefficient,
    metrics_report,
    modularity,
    nmi,
    permanence,
    permanence_vertex,
)

TOY_SPLIT = Partition.from_labels([0, 0, 0, 0, 1, 1, 1])


def modularity_double_sum(graph, partition):
    """Literal sum over ordered vertex pairs in the same block"""
    two_m = 2.0 * graph.m
    total = 0.0
    for u in range(graph.n):
        for v in range(graph.n):
            if partition.assignment[u] != partition.assignment[v]:
                continue
            a_uv = 1.0 if v in graph.neighbor_sets[u] else 0.0
            total += a_uv - graph.degree(u) * graph.degree(v) / two_m
    return total / two_m


def nmi_contingency(a, b):
    """Arithmetic-mean NMI straight from the contingency table"""
    n = a.n
    joint = Counter(zip(a.assignment, b.assignment))
    pa, pb = Counter(a.assignment), Counter(b.assignment)
    mi = sum(c / n * math.log(c * n / (pa[x] * pb[y])) for (x, y), c in joint.items())
    ha = -sum(c / n * math.log(c / n) for c in pa.values())
    hb = -sum(c / n * math.log(c / n) for c in pb.values())
    if ha == 0 and hb == 0:
        return 1.0
    return mi / ((ha + hb) / 2)


def test_toy_modularity(toy_graph):
    assert modularity(toy_graph, TOY_SPLIT) == pytest.approx(0.46875, abs=1e-12)


def test_single_block_has_zero_modularity(toy_graph):
    assert modularity(toy_graph, Partition.single_block(7)) == pytest.approx(0.0, abs=1e-12)


def test_two_disjoint_triangles():
    g = parse_edge_list("0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n")
    assert modularity(g, Partition.from_labels([0, 0, 0, 1, 1, 1])) == pytest.approx(0.5)


def test_modularity_matches_double_sum_on_random_graphs():
    rng = random.Random(2024)
    checked = 0
    while checked < 200:
        n = rng.randint(2, 20)
        g = Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.3])
        if g.m == 0:
            continue
        p = Partition.from_labels([rng.randrange(4) for _ in range(n)])
        assert modularity(g, p) == pytest.approx(modularity_double_sum(g, p), abs=1e-12)
        checked += 1


def test_modularity_errors(toy_graph):
    with pytest.raises(MetricError):
        modularity(Graph.from_edges(3, []), Partition.single_block(3))
    with pytest.raises(MetricError):
        modularity(toy_graph, Partition.single_block(6))


def test_internal_clustering_coefficient(toy_graph):
    assert internal_clustering_coefficient(toy_graph, TOY_SPLIT, 1) == pytest.approx(2 / 3)
    assert internal_clustering_coefficient(toy_graph, TOY_SPLIT, 4) == 1.0
    lone = Partition.from_labels([0, 1, 1, 1, 2, 2, 2])
    assert internal_clustering_coefficient(toy_graph, lone, 0) == 0.0


def test_toy_permanence(toy_graph):
    values = [permanence_vertex(toy_graph, TOY_SPLIT, v) for v in range(7)]
    assert values == pytest.approx([1, 2 / 3, 2 / 3, 1, 1, 1, 1])
    assert permanence(toy_graph, TOY_SPLIT) == pytest.approx(19 / 21)
    assert permanence(toy_graph, TOY_SPLIT) == pytest.approx(0.9048, abs=1e-4)


def test_disjoint_cliques_have_permanence_one():
    g = parse_edge_list("0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n")
    assert permanence(g, Partition.from_labels([0, 0, 0, 1, 1, 1])) == pytest.approx(1.0)


def test_singleton_triangle_permanence(triangle):
    assert permanence(triangle, Partition.singletons(3)) == pytest.approx(-1.0)


def test_vertex_pulled_to_foreign_block():
    g = Graph.from_edges(3, [(0, 1), (0, 2)])
    p = Partition.from_labels([0, 1, 1])
    assert permanence_vertex(g, p, 0) == pytest.approx(-1.0)


def test_isolated_vertex_permanence_is_zero():
    g = Graph.from_edges(3, [(0, 1)])
    assert permanence_vertex(g, Partition.single_block(3), 2) == 0.0


def test_nmi_examples():
    a = Partition.from_labels([0, 0, 1, 1])
    assert nmi(a, a) == pytest.approx(1.0)
    assert nmi(Partition.singletons(4), Partition.single_block(4)) == pytest.approx(0.0)
    assert nmi(a, Partition.from_labels([0, 1, 0, 1])) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(MetricError):
        nmi(a, Partition.singletons(3))


def test_nmi_matches_contingency_table():
    rng = random.Random(9)
    for _ in range(50):
        n = rng.randint(2, 30)
        a = Partition.from_labels([rng.randrange(3) for _ in range(n)])
        b = Partition.from_labels([rng.randrange(4) for _ in range(n)])
        assert nmi(a, b) == pytest.approx(nmi_contingency(a, b), abs=1e-9)
        assert 0.0 <= nmi(a, b) <= 1.0


def test_metrics_report(toy_graph):
    report = metrics_report(
        toy_graph, TOY_SPLIT, ground_truth=TOY_SPLIT,
        timings={"parse": 0.25, "metrics": 0.5}, dataset="toy", algorithm="aggl",
    )
    assert report.k == 2
    assert report.nmi == pytest.approx(1.0)
    assert report.seconds_total == pytest.approx(0.75)
    row = report.to_dict()
    assert tuple(row) == REPORT_COLUMNS
    assert row["seconds_parse"] == 0.25 and row["seconds_cliques"] == 0.0
    assert metrics_report(toy_graph, TOY_SPLIT).nmi is None


def test_metric_ranges_on_random_inputs():
    rng = random.Random(77)
    checked = 0
    while checked < 100:
        n = rng.randint(2, 25)
        g = Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.3])
        if g.m == 0:
            continue
        p = Partition.from_labels([rng.randrange(5) for _ in range(n)])
        assert -0.5 - 1e-12 <= modularity(g, p) <= 1.0
        for v in range(n):
            assert -1.0 - 1e-12 <= permanence_vertex(g, p, v) <= 1.0 + 1e-12
        checked += 1


def test_nmi_symmetric_and_ignores_block_names():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 30)
        labels = [rng.randrange(4) for _ in range(n)]
        a = Partition.from_labels(labels)
        b = Partition.from_labels([rng.randrange(3) for _ in range(n)])
        renamed = Partition.from_labels([f"block-{10 - label}" for label in labels])
        assert nmi(a, b) == pytest.approx(nmi(b, a), abs=1e-12)
        assert nmi(renamed, b) == pytest.approx(nmi(a, b), abs=1e-12)
