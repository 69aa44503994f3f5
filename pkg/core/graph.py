"""
Graph Module - Simple undirected graph, edge-list parsing and preprocessing

Vertex ids are compacted to 0..n-1 at construction; the original integer ids
are kept in ``Graph.labels`` so results can be reported in input terms.
Loops and duplicate or reversed-duplicate edges are dropped on the way in.
"""

import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from core.errors import GraphParseError

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


def simplify_edges(pairs):
    """
    Canonicalize an edge collection

    Drops loops and duplicate or reversed-duplicate pairs.

    Returns:
        tuple: sorted (u, v) pairs with u < v
    """
    return tuple(sorted({(u, v) if u < v else (v, u) for u, v in pairs if u != v}))


@dataclass(frozen=True)
class VertexMap:
    """Bijection between original vertex ids and compact ids"""

    forward: dict
    backward: tuple

    @classmethod
    def from_labels(cls, labels):
        labels = tuple(labels)
        return cls({label: i for i, label in enumerate(labels)}, labels)

    @classmethod
    def identity(cls, n):
        return cls.from_labels(range(n))

    def to_compact(self, original_id):
        return self.forward[original_id]

    def to_original(self, compact_id):
        return self.backward[compact_id]

    def __len__(self):
        return len(self.backward)


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph as sorted adjacency lists

    Attributes:
        n (int): vertex count
        m (int): edge count, each undirected edge counted once
        adjacency (tuple): per-vertex sorted tuple of neighbor ids
        labels (tuple | None): original id of each compact vertex id
    """

    n: int
    m: int
    adjacency: tuple
    labels: tuple = None

    @classmethod
    def from_edges(cls, n, pairs, labels=None):
        """Build a graph on vertices 0..n-1 from any edge collection"""
        edges = simplify_edges(pairs)
        neighbors = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            neighbors[u].append(v)
            neighbors[v].append(u)
        adjacency = tuple(tuple(sorted(adj)) for adj in neighbors)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError(f"{len(labels)} labels for {n} vertices")
        return cls(n, len(edges), adjacency, labels)

    def label(self, v):
        """Original id of compact vertex v"""
        return self.labels[v] if self.labels is not None else v

    @cached_property
    def vertex_map(self):
        if self.labels is None:
            return VertexMap.identity(self.n)
        return VertexMap.from_labels(self.labels)

    def degree(self, v):
        return len(self.adjacency[v])

    @cached_property
    def degrees(self):
        return np.fromiter((len(adj) for adj in self.adjacency), dtype=np.int64, count=self.n)

    @cached_property
    def neighbor_sets(self):
        return tuple(frozenset(adj) for adj in self.adjacency)

    def edges(self):
        """Yield each edge once as (u, v) with u < v"""
        for u, adj in enumerate(self.adjacency):
            for v in adj:
                if u < v:
                    yield u, v

    @cached_property
    def edge_arrays(self):
        """Edge endpoints as two int arrays, u < v"""
        if self.m == 0:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        pairs = np.array(list(self.edges()), dtype=np.int64)
        return pairs[:, 0], pairs[:, 1]

    @cached_property
    def adjacency_matrix(self):
        """Symmetric 0/1 CSR adjacency matrix"""
        u, v = self.edge_arrays
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        data = np.ones(len(rows), dtype=np.float64)
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def induced_subgraph(self, vertices):
        """
        Subgraph induced on the given compact ids

        Returns:
            tuple: (Graph relabelled 0..len-1 keeping original labels, VertexMap)
        """
        vertices = sorted(vertices)
        local = {v: i for i, v in enumerate(vertices)}
        pairs = [
            (local[u], local[w])
            for u in vertices
            for w in self.adjacency[u]
            if u < w and w in local
        ]
        labels = [self.label(v) for v in vertices]
        sub = Graph.from_edges(len(vertices), pairs, labels)
        return sub, sub.vertex_map


def parse_edge_list(text):
    """
    Parse an undirected edge list

    Each non-comment line holds two non-negative integer vertex ids; lines
    starting with '#' or '%' and blank lines are skipped. Extra columns
    (weights, timestamps) are ignored.

    Args:
        text (str | TextIO): the edge-list contents or an open stream

    Returns:
        Graph: simplified graph with compact ids and original ids in labels

    Raises:
        GraphParseError: on a malformed line or when no edge is found
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    raw = []
    for line_number, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        if len(tokens) < 2:
            raise GraphParseError(f"expected two vertex ids, got {stripped!r}", line_number)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"vertex ids must be integers, got {stripped!r}", line_number) from None
        if u < 0 or v < 0:
            raise GraphParseError(f"vertex ids must be non-negative, got {stripped!r}", line_number)
        raw.append((u, v))

    if not raw:
        raise GraphParseError("edge list is empty")

    labels = sorted({x for pair in raw for x in pair})
    compact = {label: i for i, label in enumerate(labels)}
    graph = Graph.from_edges(len(labels), ((compact[u], compact[v]) for u, v in raw), labels)
    dropped = len(raw) - graph.m
    if dropped:
        logger.info("Dropped %d loops or duplicate edges while parsing", dropped)
    return graph


def read_edge_list(path):
    """Parse an edge-list file"""
    with open(path, "r", encoding="utf-8") as f:
        return parse_edge_list(f)


def write_edge_list(graph, target):
    """
    Write a graph as "u v" lines using original ids

    Args:
        graph (Graph): graph to serialize
        target (str | TextIO): file path or writable stream
    """
    if isinstance(target, (str, bytes)) or hasattr(target, "__fspath__"):
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            write_edge_list(graph, f)
        return
    for u, v in graph.edges():
        target.write(f"{graph.label(u)} {graph.label(v)}\n")


def giant_component(graph):
    """
    Largest connected component as an induced subgraph

    Ties between equal-size components go to the one holding the smallest
    original vertex id.

    Returns:
        tuple: (Graph, VertexMap) where the map relates original ids to the
        component's compact ids
    """
    if graph.n == 0:
        return graph, graph.vertex_map
    count, component_of = connected_components(graph.adjacency_matrix, directed=False)
    if count == 1:
        return graph, graph.vertex_map

    sizes = np.bincount(component_of, minlength=count)
    smallest_label = {}
    for v in range(graph.n):
        c = int(component_of[v])
        label = graph.label(v)
        if c not in smallest_label or label < smallest_label[c]:
            smallest_label[c] = label
    best = min(range(count), key=lambda c: (-int(sizes[c]), smallest_label[c]))
    members = np.flatnonzero(component_of == best).tolist()
    logger.info("Giant component keeps %d of %d vertices", len(members), graph.n)
    return graph.induced_subgraph(members)


def degree_stats(graph):
    """
    Degree summary

    Returns:
        tuple: (min degree, max degree, mean degree as an exact Fraction 2m/n)
    """
    if graph.n == 0:
        return 0, 0, Fraction(0)
    degrees = graph.degrees
    return int(degrees.min()), int(degrees.max()), Fraction(2 * graph.m, graph.n)
