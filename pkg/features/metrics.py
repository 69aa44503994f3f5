"""
Metrics Module - Partition quality: modularity, permanence and NMI
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sklearn.metrics import normalized_mutual_info_score

from core.errors import MetricError
from utils.timing import PHASES

logger = logging.getLogger(__name__)


def _check_cover(graph, partition):
    if partition.n != graph.n:
        raise MetricError(f"partition covers {partition.n} vertices, graph has {graph.n}")


def modularity(graph, partition):
    """
    Newman modularity

    Sum over blocks of (internal edges / m) - (block degree sum / 2m)^2, which
    equals the ordered-pair double sum over (A_uv - d_u d_v / 2m) / 2m taken
    within blocks, u = v included.

    Raises:
        MetricError: when the graph has no edges or the partition does not cover it
    """
    _check_cover(graph, partition)
    if graph.m == 0:
        raise MetricError("modularity undefined: graph has no edges")
    labels = partition.as_array()
    u, v = graph.edge_arrays
    internal = labels[u] == labels[v]
    internal_edges = np.bincount(labels[u][internal], minlength=partition.k)
    degree_sums = np.bincount(labels, weights=graph.degrees, minlength=partition.k)
    two_m = 2.0 * graph.m
    return float(internal_edges.sum() / graph.m - np.sum((degree_sums / two_m) ** 2))


def internal_clustering_coefficient(graph, partition, v):
    """
    Edge density among the neighbors of v that share its block

    Returns 0 when fewer than two neighbors are in the block.
    """
    block = partition.assignment[v]
    inside = [u for u in graph.adjacency[v] if partition.assignment[u] == block]
    t = len(inside)
    if t < 2:
        return 0.0
    members = set(inside)
    links = sum(len(graph.neighbor_sets[u] & members) for u in inside) // 2
    return links / (t * (t - 1) / 2)


def permanence_vertex(graph, partition, v):
    """
    Permanence of one vertex

    P(v) = I(v) / max(1, E_max(v)) / deg(v) - (1 - c_in(v)), with I(v) the
    edges from v into its own block and E_max(v) the most edges from v into
    any single other block. Isolated vertices score 0.
    """
    degree = graph.degree(v)
    if degree == 0:
        return 0.0
    block = partition.assignment[v]
    per_block = Counter(partition.assignment[u] for u in graph.adjacency[v])
    internal = per_block.pop(block, 0)
    e_max = max(per_block.values(), default=0)
    c_in = internal_clustering_coefficient(graph, partition, v)
    return internal / max(1, e_max) / degree - (1.0 - c_in)


def permanence(graph, partition):
    """Mean vertex permanence"""
    _check_cover(graph, partition)
    if graph.n == 0:
        return 0.0
    return math.fsum(permanence_vertex(graph, partition, v) for v in range(graph.n)) / graph.n


def nmi(a, b):
    """
    Normalized mutual information, arithmetic-mean normalization

    Two partitions that are identical with zero entropy score 1.

    Raises:
        MetricError: when the partitions cover different vertex counts
    """
    if a.n != b.n:
        raise MetricError(f"cannot compare partitions of {a.n} and {b.n} vertices")
    if a.n == 0:
        return 1.0
    score = normalized_mutual_info_score(a.assignment, b.assignment, average_method="arithmetic")
    return float(min(1.0, max(0.0, score)))


@dataclass
class MetricsReport:
    """
    Quality and timing summary of one partition

    Attributes:
        modularity (float): Q of the partition
        permanence (float): P(G) of the partition
        nmi (float | None): agreement with a ground truth when one was supplied
        k (int): block count
        per_phase_seconds (dict): phase name -> seconds
        profile (dict): dendrogram cut level -> modularity, filled on request
    """

    modularity: float
    permanence: float
    nmi: float = None
    k: int = 0
    per_phase_seconds: dict = field(default_factory=dict)
    dataset: str = ""
    algorithm: str = ""
    seed: int = 0
    n: int = 0
    m: int = 0
    cliques: int = 0
    replicate: str = ""
    profile: dict = field(default_factory=dict, repr=False)

    @property
    def seconds_total(self):
        return sum(self.per_phase_seconds.values())

    def to_dict(self):
        """Flat mapping with a fixed key order"""
        row = {
            "dataset": self.dataset,
            "algorithm": self.algorithm,
            "k": self.k,
            "modularity": self.modularity,
            "permanence": self.permanence,
            "nmi": self.nmi,
            "seconds_total": self.seconds_total,
        }
        for phase in PHASES:
            row[f"seconds_{phase}"] = self.per_phase_seconds.get(phase, 0.0)
        row.update({
            "n": self.n,
            "m": self.m,
            "cliques": self.cliques,
            "seed": self.seed,
            "replicate": self.replicate,
        })
        return row


REPORT_COLUMNS = tuple(MetricsReport(0.0, 0.0).to_dict())


def metrics_report(graph, partition, ground_truth=None, timings=None, **context):
    """
    Evaluate a partition and bundle the results

    Args:
        ground_truth (Partition, optional): reference partition for NMI
        timings (dict, optional): per-phase seconds already spent
        **context: dataset, algorithm, seed, cliques, replicate labels
    """
    report = MetricsReport(
        modularity=modularity(graph, partition) if graph.m else 0.0,
        permanence=permanence(graph, partition),
        nmi=nmi(partition, ground_truth) if ground_truth is not None else None,
        k=partition.k,
        per_phase_seconds=dict(timings or {}),
        n=graph.n,
        m=graph.m,
        **context,
    )
    logger.info(
        "k=%d modularity=%.6f permanence=%.6f nmi=%s",
        report.k, report.modularity, report.permanence, report.nmi,
    )
    return report
