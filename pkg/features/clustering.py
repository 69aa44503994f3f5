"""
Clustering Module - Turn embedding rows into vertex partitions

Two paths over the unit-length rows of an Embedding:
- average-linkage agglomerative clustering (nearest-neighbor chain with
  Lance-Williams updates), producing a Dendrogram that can be cut at any k
- seeded k-means with greedy k-means++ initialization

Vertices with an all-zero row never enter either path; every partition
returned here gives each of them its own singleton block.
"""

import heapq
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from config import DENSE_MAX_VERTICES, KMEANS_INIT, KMEANS_MAX_ITER, KMEANS_TOL
from core.errors import ClusteringError, DenseBudgetExceeded, InvalidKError
from core.partition import Partition

logger = logging.getLogger(__name__)

DISTANCE_CHUNK_ROWS = 512
# Z at or above this fill goes through dense BLAS blocks
DENSE_GRAM_DENSITY = 0.05
GRAM_BLOCK_ENTRIES = 1 << 23


class Merge(NamedTuple):
    """One agglomeration step, scipy linkage style ids"""

    a: int
    b: int
    distance: float
    new_id: int
    size: int


@dataclass(frozen=True)
class Dendrogram:
    """
    Full average-linkage merge history

    Leaf i stands for graph vertex leaves[i]. Clusters 0..n-1 are the leaves
    and merge number t creates cluster n + t. Merges are stored in
    non-decreasing distance order.

    Attributes:
        merges (tuple): n - 1 Merge records
        leaves (tuple): graph vertex id of each leaf
        n_vertices (int): vertex count of the whole graph, leaves included
    """

    merges: tuple
    leaves: tuple
    n_vertices: int

    @property
    def n(self):
        return len(self.leaves)

    @cached_property
    def _representatives(self):
        rep = list(range(self.n))
        for merge in self.merges:
            rep.append(rep[merge.a])
        return rep

    def linkage_matrix(self):
        """(n-1) x 4 array in scipy.cluster.hierarchy format"""
        return np.array([[m.a, m.b, m.distance, m.size] for m in self.merges], dtype=np.float64).reshape(-1, 4)


def cosine_distance_matrix(embedding, max_vertices=None):
    """
    Dense cosine distances between the non-zero rows of an embedding

    D[i, j] = 1 - <z_i, z_j>, clamped to [0, 2] with a zero diagonal. Row i of
    D is embedding.active_rows[i].

    Raises:
        DenseBudgetExceeded: when the row count is over the configured budget
    """
    budget = DENSE_MAX_VERTICES if max_vertices is None else max_vertices
    rows = embedding.active_rows
    if len(rows) > budget:
        raise DenseBudgetExceeded(len(rows), budget)

    Z = embedding.Z[list(rows)] if len(rows) != embedding.n else embedding.Z
    D = 1.0 - gram_matrix(Z)
    np.clip(D, 0.0, 2.0, out=D)
    np.fill_diagonal(D, 0.0)
    return D


def gram_matrix(Z):
    """
    Dense Z * Z^T

    Dense-ish matrices (few rows over many cliques, as in tightly knit
    communities) go through BLAS one column block at a time; sparse ones
    multiply in row chunks.
    """
    n, d = Z.shape
    G = np.zeros((n, n), dtype=np.float64)
    if n == 0 or d == 0 or Z.nnz == 0:
        return G

    if Z.nnz >= DENSE_GRAM_DENSITY * n * d:
        Zc = Z.tocsc()
        width = max(1, GRAM_BLOCK_ENTRIES // n)
        for start in range(0, d, width):
            block = Zc[:, start : start + width].toarray()
            G += block @ block.T
        return G

    Zt = Z.T.tocsc()
    for start in range(0, n, DISTANCE_CHUNK_ROWS):
        stop = min(start + DISTANCE_CHUNK_ROWS, n)
        G[start:stop] = (Z[start:stop] @ Zt).toarray()
    return G


def _relabel(raw_merges, n):
    """
    Turn slot-based merges into scipy-style ids in distance order

    A merge is emitted only after the merges that built its two inputs. Among
    the merges ready at the same distance the smallest (a, b) id pair goes
    first, which fixes the ids handed to every later merge.
    """
    # inputs[t] holds the raw merge (or None for a leaf) behind each side of t
    producer = [None] * n
    inputs = []
    parent = [None] * len(raw_merges)
    for t, (slot_a, slot_b, _) in enumerate(raw_merges):
        inputs.append((slot_a, producer[slot_a], slot_b, producer[slot_b]))
        for child in (producer[slot_a], producer[slot_b]):
            if child is not None:
                parent[child] = t
        producer[min(slot_a, slot_b)] = t

    id_of = [None] * len(raw_merges)
    size_of = [0] * len(raw_merges)
    waiting = [sum(child is not None for child in (p_a, p_b)) for _, p_a, _, p_b in inputs]

    def side(slot, child):
        if child is None:
            return slot, 1
        return id_of[child], size_of[child]

    def entry(t):
        slot_a, p_a, slot_b, p_b = inputs[t]
        (a, size_a), (b, size_b) = sorted((side(slot_a, p_a), side(slot_b, p_b)))
        return (raw_merges[t][2], a, b, t, size_a + size_b)

    ready = [entry(t) for t in range(len(raw_merges)) if waiting[t] == 0]
    heapq.heapify(ready)
    merges = []
    while ready:
        distance, a, b, t, merged_size = heapq.heappop(ready)
        new_id = n + len(merges)
        id_of[t], size_of[t] = new_id, merged_size
        merges.append(Merge(a, b, float(distance), new_id, merged_size))
        up = parent[t]
        if up is not None:
            waiting[up] -= 1
            if waiting[up] == 0:
                heapq.heappush(ready, entry(up))
    return tuple(merges)


def agglomerative_hierarchy(D, leaves=None, n_vertices=None, overwrite=False):
    """
    Average-linkage (UPGMA) hierarchy by the nearest-neighbor chain

    Each cluster lives in the slot of its smallest leaf. Nearest-neighbor
    ties go to the chain predecessor, then to the smallest slot. Merges at
    equal distance are then reported smallest (a, b) cluster id pair first,
    whatever order the chain found them in.

    Args:
        D (numpy.ndarray): symmetric distance matrix with zero diagonal
        leaves (sequence, optional): graph vertex id of each row, default 0..n-1
        n_vertices (int, optional): graph vertex count, default len(D)
        overwrite (bool): use D as scratch space instead of copying it

    Returns:
        Dendrogram
    """
    n = D.shape[0]
    leaves = tuple(range(n)) if leaves is None else tuple(int(v) for v in leaves)
    if len(leaves) != n:
        raise ClusteringError(f"{len(leaves)} leaf ids for a {n} x {n} distance matrix")
    n_vertices = n if n_vertices is None else n_vertices

    work = D if overwrite else np.array(D, dtype=np.float64, copy=True)
    np.fill_diagonal(work, np.inf)
    size = np.ones(n, dtype=np.float64)
    height = np.zeros(n, dtype=np.float64)
    active = n
    chain = []
    raw_merges = []

    while active > 1:
        if not chain:
            chain.append(int(np.flatnonzero(size > 0)[0]))
        while True:
            a = chain[-1]
            row = work[a]
            b = int(np.argmin(row))
            if len(chain) > 1 and row[chain[-2]] <= row[b]:
                b = chain[-2]
            if len(chain) > 1 and b == chain[-2]:
                break
            chain.append(b)
        chain.pop()
        chain.pop()

        # clamp so a merge never sits below the merges that built its parts
        distance = max(work[a, b], height[a], height[b])
        keep, drop = (a, b) if a < b else (b, a)
        merged = (size[a] * work[a] + size[b] * work[b]) / (size[a] + size[b])
        work[keep, :] = merged
        work[:, keep] = merged
        work[drop, :] = np.inf
        work[:, drop] = np.inf
        work[keep, keep] = np.inf
        size[keep] += size[drop]
        height[keep] = distance
        size[drop] = 0
        raw_merges.append((keep, drop, distance))
        active -= 1

    merges = _relabel(raw_merges, n)
    logger.debug("Built average-linkage hierarchy over %d leaves", n)
    return Dendrogram(merges, leaves, n_vertices)


def cut(dendrogram, k):
    """
    Partition from the first n - k merges of a dendrogram

    Vertices outside the dendrogram (zero rows) become singleton blocks.
    Block ids follow the smallest vertex id in each block.

    Raises:
        InvalidKError: unless 1 <= k <= dendrogram.n
    """
    n = dendrogram.n
    if not 1 <= k <= n:
        raise InvalidKError(f"k={k} outside 1..{n}")

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rep = dendrogram._representatives
    for merge in dendrogram.merges[: n - k]:
        ra, rb = find(rep[merge.a]), find(rep[merge.b])
        parent[max(ra, rb)] = min(ra, rb)

    labels = [("singleton", v) for v in range(dendrogram.n_vertices)]
    for i, vertex in enumerate(dendrogram.leaves):
        labels[vertex] = ("leaf", find(i))
    return Partition.from_labels(labels)


def _squared_distances(X, sq_norms, centers):
    """||x - c||^2 for every row of sparse X and every dense center"""
    cross = np.asarray(X @ centers.T)
    d2 = sq_norms[:, None] - 2.0 * cross + np.einsum("ij,ij->i", centers, centers)[None, :]
    np.maximum(d2, 0.0, out=d2)
    return d2


def _row_squared_distances(X, sq_norms, indices):
    """||x - x_j||^2 for every row of X against the rows listed in indices"""
    cross = (X @ X[indices].T).toarray()
    return np.maximum(sq_norms[:, None] - 2.0 * cross + sq_norms[indices][None, :], 0.0)


def _kmeans_plusplus(X, sq_norms, k, rng):
    """Greedy k-means++: several sampled candidates per step, keep the best"""
    n = X.shape[0]
    trials = 2 + int(np.log(k))
    chosen = [int(rng.integers(n))]
    closest = _row_squared_distances(X, sq_norms, [chosen[0]])[:, 0]
    closest[closest < 1e-12] = 0.0
    for _ in range(1, k):
        total = closest.sum()
        if total <= 0:
            remaining = np.setdiff1d(np.arange(n), chosen)
            candidates = rng.choice(remaining, size=min(trials, remaining.size), replace=False)
        else:
            candidates = rng.choice(n, size=trials, p=closest / total)
        d2 = _row_squared_distances(X, sq_norms, candidates)
        d2[d2 < 1e-12] = 0.0
        potentials = np.minimum(closest[:, None], d2).sum(axis=0)
        best = int(np.argmin(potentials))
        chosen.append(int(candidates[best]))
        closest = np.minimum(closest, d2[:, best])
    return np.asarray(X[chosen].toarray(), dtype=np.float64)


def _centroids(X, labels, k):
    indicator = sp.csr_matrix(
        (np.ones(labels.size), (labels, np.arange(labels.size))), shape=(k, labels.size)
    )
    counts = np.bincount(labels, minlength=k).astype(np.float64)
    sums = np.asarray((indicator @ X).toarray())
    safe = np.where(counts > 0, counts, 1.0)
    return sums / safe[:, None], counts


def _repair_empty(X, sq_norms, labels, centers, counts):
    """Give each empty cluster the farthest point of the largest cluster"""
    for j in np.flatnonzero(counts == 0):
        largest = int(np.argmax(counts))
        members = np.flatnonzero(labels == largest)
        d2 = _squared_distances(X[members], sq_norms[members], centers[largest : largest + 1])[:, 0]
        moved = int(members[int(np.argmax(d2))])
        labels[moved] = j
        centers[j] = X[moved].toarray().ravel()
        counts[largest] -= 1
        counts[j] = 1
    return labels, centers, counts


def _lloyd(X, sq_norms, centers, max_iter, tol):
    k = centers.shape[0]
    labels = np.zeros(X.shape[0], dtype=np.int64)
    for iteration in range(max_iter):
        labels = np.argmin(_squared_distances(X, sq_norms, centers), axis=1)
        new_centers, counts = _centroids(X, labels, k)
        if (counts == 0).any():
            labels, new_centers, counts = _repair_empty(X, sq_norms, labels, new_centers, counts)
        shift = float(np.linalg.norm(new_centers - centers))
        centers = new_centers
        if shift < tol:
            break
    d2 = _squared_distances(X, sq_norms, centers)
    labels = np.argmin(d2, axis=1)
    counts = np.bincount(labels, minlength=k)
    if (counts == 0).any():
        labels, centers, counts = _repair_empty(X, sq_norms, labels, centers, counts.astype(np.float64))
        d2 = _squared_distances(X, sq_norms, centers)
    inertia = float(d2[np.arange(labels.size), labels].sum())
    return labels, inertia, iteration + 1


def kmeans(embedding, k, seed, n_init=None, max_iter=None, tol=None):
    """
    Seeded k-means over the non-zero embedding rows

    Lloyd iterations from greedy k-means++ starts; stops when the centroids
    move less than tol or after max_iter rounds. The best of n_init starts
    by inertia wins. Zero-row vertices become extra singleton blocks.

    Raises:
        InvalidKError: unless 2 <= k <= number of non-zero rows
    """
    n_init = KMEANS_INIT if n_init is None else n_init
    max_iter = KMEANS_MAX_ITER if max_iter is None else max_iter
    tol = KMEANS_TOL if tol is None else tol

    rows = embedding.active_rows
    if not 2 <= k <= len(rows):
        raise InvalidKError(f"k={k} outside 2..{len(rows)}")

    X = embedding.Z[list(rows)].tocsr()
    sq_norms = np.asarray(X.multiply(X).sum(axis=1), dtype=np.float64).ravel()
    rng = np.random.default_rng(seed)

    best_labels, best_inertia = None, np.inf
    for start in range(max(1, n_init)):
        centers = _kmeans_plusplus(X, sq_norms, k, rng)
        labels, inertia, rounds = _lloyd(X, sq_norms, centers, max_iter, tol)
        logger.debug("k-means start %d: inertia %.6f after %d rounds", start, inertia, rounds)
        if inertia < best_inertia:
            best_labels, best_inertia = labels, inertia

    labels = [("singleton", v) for v in range(embedding.n)]
    for i, vertex in enumerate(rows):
        labels[vertex] = ("cluster", int(best_labels[i]))
    return Partition.from_labels(labels)
