"""
Clique Enumeration Module - Maximal cliques of a Graph

Bron-Kerbosch with pivoting, driven by a degeneracy-ordered outer loop.
Isolated vertices come out as size-1 cliques with weight 0 so that every
vertex belongs to at least one clique.
"""

import heapq
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from core.errors import CliqueBudgetExceeded

logger = logging.getLogger(__name__)


def clique_weight(size):
    """Edge count of a clique with the given vertex count"""
    return size * (size - 1) // 2


def canonical_order(cliques):
    """Size descending, then lexicographic on the sorted members"""
    return sorted((tuple(sorted(c)) for c in cliques), key=lambda c: (-len(c), c))


@dataclass(frozen=True)
class CliqueSet:
    """
    Maximal cliques of one graph in canonical order

    Attributes:
        cliques (tuple): sorted vertex tuples, size descending then lexicographic
        weights (tuple): w = |c|(|c|-1)/2 per clique
        n_vertices (int): vertex count of the source graph
    """

    cliques: tuple
    weights: tuple
    n_vertices: int

    @classmethod
    def from_cliques(cls, cliques, n_vertices):
        ordered = tuple(canonical_order(cliques))
        return cls(ordered, tuple(clique_weight(len(c)) for c in ordered), n_vertices)

    @property
    def d(self):
        return len(self.cliques)

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


def degeneracy_ordering(graph):
    """
    Vertex order from repeated minimum-degree removal

    Ties go to the smallest vertex id.
    """
    degree = [len(adj) for adj in graph.adjacency]
    heap = [(d, v) for v, d in enumerate(degree)]
    heapq.heapify(heap)
    removed = [False] * graph.n
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != degree[v]:
            continue
        removed[v] = True
        order.append(v)
        for u in graph.adjacency[v]:
            if not removed[u]:
                degree[u] -= 1
                heapq.heappush(heap, (degree[u], u))
    return order


class _PivotSearch:
    """Recursive pivot Bron-Kerbosch over one batch of outer-loop vertices"""

    def __init__(self, neighbor_sets, budget):
        self.neighbors = neighbor_sets
        self.budget = budget
        self.found = []

    def expand(self, clique, candidates, excluded):
        if not candidates and not excluded:
            self.found.append(clique)
            if self.budget is not None and len(self.found) > self.budget:
                raise CliqueBudgetExceeded(self.budget)
            return
        # pivot maximizing |P ∩ N(u)|, smallest id on ties
        pivot = max(
            candidates | excluded,
            key=lambda u: (len(candidates & self.neighbors[u]), -u),
        )
        for v in sorted(candidates - self.neighbors[pivot]):
            nv = self.neighbors[v]
            self.expand(clique + (v,), candidates & nv, excluded & nv)
            candidates = candidates - {v}
            excluded = excluded | {v}

    def run(self, roots, position):
        for v in roots:
            nv = self.neighbors[v]
            later = {u for u in nv if position[u] > position[v]}
            earlier = {u for u in nv if position[u] < position[v]}
            self.expand((v,), later, earlier)
        return self.found


def enumerate_maximal_cliques(graph, budget=None, threads=1):
    """
    Enumerate all maximal cliques

    Args:
        graph (Graph): input graph
        budget (int, optional): raise once more than this many cliques are found
        threads (int): outer-loop vertices are split across this many workers;
            the result is identical for any value

    Returns:
        CliqueSet: every maximal clique in canonical order

    Raises:
        CliqueBudgetExceeded: when budget is set and exceeded
    """
    order = degeneracy_ordering(graph)
    position = [0] * graph.n
    for i, v in enumerate(order):
        position[v] = i
    neighbor_sets = graph.neighbor_sets

    threads = max(1, int(threads))
    if threads == 1 or graph.n < 2 * threads:
        found = _PivotSearch(neighbor_sets, budget).run(order, position)
    else:
        batches = [order[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(
                lambda batch: _PivotSearch(neighbor_sets, budget).run(batch, position),
                batches,
            )
            found = [c for batch in results for c in batch]
        if budget is not None and len(found) > budget:
            raise CliqueBudgetExceeded(budget)

    cliques = CliqueSet.from_cliques(found, graph.n)
    logger.info("Enumerated %d maximal cliques on %d vertices", cliques.d, graph.n)
    return cliques


def clique_size_distribution(clique_set):
    """
    Histogram of clique sizes

    Returns:
        dict: size -> count, sizes in descending order
    """
    counts = Counter(len(c) for c in clique_set.cliques)
    return dict(sorted(counts.items(), reverse=True))
