"""
Automatic k Module - Pick the dendrogram cut with the best modularity

Modularity over k is close to bitonic, so an integer ternary search finds
the peak region and a small exhaustive window around it absorbs ripples.
Small hierarchies are simply swept at every cut level.
k = 1 (modularity 0) is always a candidate, so the result is never negative.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from config import AUTOK_EXHAUSTIVE_MAX, REFINE_WINDOW
from core.partition import Partition
from features.clustering import cut
from features.metrics import modularity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AutoKResult:
    """
    Outcome of the k search

    Attributes:
        k (int): block count of the chosen partition, singleton zero-row blocks included
        partition (Partition): the chosen cut
        modularity (float): its modularity
        cut_k (int): the dendrogram cut level that produced it
        evaluated (dict): cut level -> modularity for every evaluated level
    """

    k: int
    partition: Partition
    modularity: float
    cut_k: int
    evaluated: dict = field(default_factory=dict, compare=False)


class _ModularityCache:
    """Memoized Q(cut(dendrogram, k))"""

    def __init__(self, dendrogram, graph, threads=1):
        self.dendrogram = dendrogram
        self.graph = graph
        self.threads = max(1, int(threads))
        self.values = {}

    def _evaluate(self, k):
        return modularity(self.graph, cut(self.dendrogram, k))

    def __call__(self, k):
        if k not in self.values:
            self.values[k] = self._evaluate(k)
        return self.values[k]

    def many(self, ks):
        missing = [k for k in ks if k not in self.values]
        if self.threads > 1 and len(missing) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                for k, q in zip(missing, pool.map(self._evaluate, missing)):
                    self.values[k] = q
        else:
            for k in missing:
                self.values[k] = self._evaluate(k)
        return {k: self.values[k] for k in ks}


def modularity_profile(dendrogram, graph, ks=None, threads=1):
    """
    Modularity of the dendrogram cut at each requested k

    Args:
        ks (iterable, optional): cut levels, default every level 1..n

    Returns:
        dict: k -> modularity, in the order requested
    """
    ks = range(1, dendrogram.n + 1) if ks is None else ks
    return _ModularityCache(dendrogram, graph, threads).many(list(ks))


def ternary_search(score, lo, hi):
    """Integer ternary search for the maximum of a near-unimodal function"""
    while hi - lo > 2:
        third = (hi - lo) // 3
        m1, m2 = lo + third, hi - third
        if score(m1) < score(m2):
            lo = m1 + 1
        else:
            hi = m2 - 1 if score(m1) > score(m2) else m2
    return max(range(lo, hi + 1), key=lambda k: (score(k), -k))


def auto_k(dendrogram, graph, window=None, threads=1, exhaustive_max=None):
    """
    Choose k by maximizing modularity over the dendrogram cuts

    Ternary search over k in [2, n], then an exhaustive scan of k +/- window
    around the ternary optimum; k = 1 is always compared as well. Ties go
    to the smaller k. Dendrograms with at most exhaustive_max leaves are
    swept at every level instead.

    Returns:
        AutoKResult
    """
    window = REFINE_WINDOW if window is None else window
    exhaustive_max = AUTOK_EXHAUSTIVE_MAX if exhaustive_max is None else exhaustive_max
    n = dendrogram.n
    if n < 2:
        partition = cut(dendrogram, 1) if n == 1 else Partition.singletons(graph.n)
        q = modularity(graph, partition) if graph.m else 0.0
        logger.warning("Fewer than two clusterable vertices; returning the trivial partition")
        return AutoKResult(partition.k, partition, q, n, {})

    scores = _ModularityCache(dendrogram, graph, threads)
    if n <= exhaustive_max:
        scores.many(range(1, n + 1))
    else:
        scores(1)
        peak = ternary_search(scores, 2, n)
        scores.many(range(max(2, peak - window), min(n, peak + window) + 1))

    best = max(scores.values, key=lambda k: (scores.values[k], -k))
    partition = cut(dendrogram, best)
    logger.info(
        "auto-k picked cut %d (Q=%.6f) after %d evaluations", best, scores.values[best], len(scores.values)
    )
    return AutoKResult(partition.k, partition, scores.values[best], best, dict(sorted(scores.values.items())))
