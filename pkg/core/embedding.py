"""
Embedding Module - Clique-based TF-IDF vectors for every vertex

Builds the clique-incidence matrix Y (n x d), the co-participation matrix
X (n x n) and the vertex-community matrix Z = X * Y, weights the columns of
Z by an inverse-document-frequency vector and scales every row to unit length.
All matrices are scipy CSR with sorted indices and no stored zeros.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from core.cliques import enumerate_maximal_cliques
from core.errors import DimensionMismatchError, EmbeddingError
from utils.timing import PhaseTimer

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Embedding:
    """
    Unit-length vertex vectors over the maximal cliques

    Attributes:
        Z (scipy.sparse.csr_matrix): n x d weighted, row-normalized matrix
        gamma (numpy.ndarray): IDF factor per clique column
        zero_rows (tuple): vertices whose row is all zero (isolated vertices)
        phase_seconds (dict): wall-clock time per pipeline phase
    """

    Z: sp.csr_matrix
    gamma: np.ndarray
    zero_rows: tuple
    phase_seconds: dict = field(default_factory=dict, compare=False)

    @property
    def n(self):
        return self.Z.shape[0]

    @property
    def d(self):
        return self.Z.shape[1]

    @property
    def active_rows(self):
        """Vertices with a unit-length row, ascending"""
        excluded = set(self.zero_rows)
        return tuple(v for v in range(self.n) if v not in excluded)


def _canonical(matrix):
    matrix = matrix.tocsr(copy=True)
    matrix.eliminate_zeros()
    matrix.sort_indices()
    return matrix


def incidence_matrix(graph, clique_set):
    """
    Clique-incidence matrix Y with Y[i, l] = 1 iff vertex i is in clique l

    Raises:
        DimensionMismatchError: when the clique set was built for another graph
    """
    if clique_set.n_vertices != graph.n:
        raise DimensionMismatchError(
            f"clique set covers {clique_set.n_vertices} vertices, graph has {graph.n}"
        )
    rows = [v for clique in clique_set.cliques for v in clique]
    cols = [l for l, clique in enumerate(clique_set.cliques) for _ in clique]
    if rows and max(rows) >= graph.n:
        raise DimensionMismatchError(f"clique member {max(rows)} outside graph of {graph.n} vertices")
    data = np.ones(len(rows), dtype=np.float64)
    return _canonical(sp.csr_matrix((data, (rows, cols)), shape=(graph.n, clique_set.d)))


def coparticipation_matrix(graph, clique_set, incidence=None):
    """
    Co-participation matrix X

    X[i, j] sums the weights w of the cliques holding both i and j; the
    diagonal X[i, i] sums the weights of the cliques holding i. Equivalently
    X = Y * diag(w) * Y^T.

    Args:
        incidence (scipy.sparse.csr_matrix, optional): precomputed Y
    """
    Y = incidence if incidence is not None else incidence_matrix(graph, clique_set)
    W = sp.diags(np.asarray(clique_set.weights, dtype=np.float64), format="csr")
    return _canonical(Y @ W @ Y.T)


def vertex_community_matrix(X, Y):
    """
    Vertex-community matrix Z = X * Y

    Raises:
        DimensionMismatchError: unless X is n x n and Y is n x d
    """
    if X.shape[0] != X.shape[1] or X.shape[1] != Y.shape[0]:
        raise DimensionMismatchError(f"cannot multiply X {X.shape} by Y {Y.shape}")
    return _canonical(X @ Y)


def idf_vector(Z):
    """
    Inverse document frequency per clique column

    gamma[l] = log2(n / delta[l]) where delta[l] counts the nonzeros of
    column l. Columns with no nonzero (weightless singleton cliques) get 0
    as well, so gamma[l] = 0 means delta[l] = n or delta[l] = 0, not only
    the former.

    Raises:
        EmbeddingError: on a matrix with no rows or no columns
    """
    n, d = Z.shape
    if n == 0 or d == 0:
        raise EmbeddingError(f"cannot weight an empty {n} x {d} matrix")
    Z = _canonical(Z)
    delta = np.bincount(Z.indices, minlength=d)
    gamma = np.zeros(d, dtype=np.float64)
    present = delta > 0
    gamma[present] = np.log2(n / delta[present])
    return gamma


def apply_tfidf(Z, gamma):
    """
    Hadamard-weight every row of Z by gamma

    Raises:
        DimensionMismatchError: when len(gamma) differs from the column count
    """
    gamma = np.asarray(gamma, dtype=np.float64)
    if gamma.shape != (Z.shape[1],):
        raise DimensionMismatchError(f"gamma of length {gamma.size} for {Z.shape[1]} columns")
    weighted = Z.tocsr().astype(np.float64, copy=True)
    weighted.data *= gamma[weighted.indices]
    return _canonical(weighted)


def normalize_rows(Z, gamma=None, fallback=None):
    """
    Scale every nonzero row to unit L2 norm

    Args:
        Z (scipy.sparse.csr_matrix): weighted matrix
        gamma (numpy.ndarray, optional): IDF vector carried into the result
        fallback (scipy.sparse.csr_matrix, optional): same-shape matrix whose
            row replaces a row of Z that is zero while the fallback row is not.
            Used for vertices whose cliques all have gamma = 0.

    Returns:
        Embedding: zero rows left untouched and listed in zero_rows
    """
    Z = _canonical(Z).astype(np.float64, copy=True)
    norms = np.sqrt(np.asarray(Z.multiply(Z).sum(axis=1)).ravel())
    empty = norms == 0

    if fallback is not None and empty.any():
        fallback = _canonical(fallback)
        fb_norms = np.sqrt(np.asarray(fallback.multiply(fallback).sum(axis=1)).ravel())
        rescued = empty & (fb_norms > 0)
        if rescued.any():
            logger.debug("%d rows fall back to unweighted values", int(rescued.sum()))
            keep = sp.diags((~rescued).astype(np.float64))
            take = sp.diags(rescued.astype(np.float64))
            Z = _canonical(keep @ Z + take @ fallback)
            norms = np.where(rescued, fb_norms, norms)
            empty = norms == 0

    Z.data /= np.repeat(norms, np.diff(Z.indptr))
    zero_rows = tuple(int(v) for v in np.flatnonzero(empty))
    if gamma is None:
        gamma = np.zeros(Z.shape[1])
    return Embedding(Z, np.asarray(gamma, dtype=np.float64), zero_rows)


def embed(graph, budget=None, threads=1, timer=None):
    """
    Full embedding pipeline: cliques, Y, X, Z, TF-IDF, row normalization

    Args:
        graph (Graph): input graph
        budget (int, optional): maximal clique cap
        threads (int): worker count for clique enumeration
        timer (PhaseTimer, optional): records the cliques, matrices and tfidf phases

    Returns:
        tuple: (Embedding, CliqueSet)
    """
    timer = timer if timer is not None else PhaseTimer()

    with timer.phase("cliques"):
        clique_set = enumerate_maximal_cliques(graph, budget=budget, threads=threads)

    with timer.phase("matrices"):
        Y = incidence_matrix(graph, clique_set)
        X = coparticipation_matrix(graph, clique_set, incidence=Y)
        Z = vertex_community_matrix(X, Y)

    with timer.phase("tfidf"):
        gamma = idf_vector(Z)
        weighted = apply_tfidf(Z, gamma)
        normalized = normalize_rows(weighted, gamma=gamma, fallback=Z)

    embedding = Embedding(normalized.Z, gamma, normalized.zero_rows, timer.as_dict())
    logger.info(
        "Embedded %d vertices over %d cliques (%d zero rows)",
        embedding.n, embedding.d, len(embedding.zero_rows),
    )
    return embedding, clique_set
