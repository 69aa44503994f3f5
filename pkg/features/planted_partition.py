"""
Planted Partition Module - Seeded stochastic block graphs with known communities
"""

import logging

import numpy as np

from core.errors import InvalidParameterError
from core.graph import Graph
from core.partition import Partition

logger = logging.getLogger(__name__)


def planted_partition_graph(n, k, p_in, p_out, seed=0):
    """
    Graph of k equal blocks with independent edges

    Each pair inside a block is joined with probability p_in, each pair
    across blocks with probability p_out. Block pairs are sampled one at a
    time in a fixed order from a single generator, so a seed always gives
    the same graph.

    Args:
        n (int): vertex count, a multiple of k
        k (int): block count
        p_in (float): intra-block edge probability
        p_out (float): inter-block edge probability, at most p_in

    Returns:
        tuple: (Graph, Partition) with vertex v in block v // (n / k)

    Raises:
        InvalidParameterError: on a bad size or probability
    """
    if k < 1 or n < 1:
        raise InvalidParameterError(f"need n >= 1 and k >= 1, got n={n} k={k}")
    if n % k:
        raise InvalidParameterError(f"k={k} does not divide n={n}")
    if not 0.0 <= p_out <= p_in <= 1.0:
        raise InvalidParameterError(
            f"need 0 <= p_out <= p_in <= 1, got p_in={p_in} p_out={p_out}"
        )

    size = n // k
    rng = np.random.default_rng(seed)
    upper = np.triu(np.ones((size, size), dtype=bool), k=1)
    sources, targets = [], []
    for a in range(k):
        for b in range(a, k):
            draws = rng.random((size, size))
            if a == b:
                hit = (draws < p_in) & upper
            else:
                hit = draws < p_out
            rows, cols = np.nonzero(hit)
            sources.append(rows + a * size)
            targets.append(cols + b * size)

    u = np.concatenate(sources).tolist()
    v = np.concatenate(targets).tolist()
    graph = Graph.from_edges(n, zip(u, v))
    truth = Partition.from_labels([vertex // size for vertex in range(n)])
    logger.debug("planted graph n=%d k=%d m=%d seed=%s", n, k, graph.m, seed)
    return graph, truth
