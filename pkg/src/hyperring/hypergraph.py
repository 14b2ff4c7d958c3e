"""Neighborhood hypergraph construction over sample rows.

One hyperedge is generated per sample: the sample itself plus its k
nearest neighbors under Euclidean distance. Edge weights sum the heat
kernel affinities between the anchor and the edge members, and the
Laplacian splits as ``L = D_V - S`` with ``S = H W D_E^{-1} H^T``.

A plain pairwise graph (every edge of size two) is available through the
same machinery for the graph-regularized degenerate configuration.
"""

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_finite


@dataclass(frozen=True)
class Hypergraph:
    """Incidence plus the diagonal matrices derived from it.

    ``incidence`` is (n_vertices, n_edges) with 0/1 entries. The weight
    and degree matrices are stored as their diagonals.
    """

    incidence: np.ndarray
    edge_weights: np.ndarray
    sigma: float
    edge_degrees: np.ndarray = field(init=False)
    vertex_degrees: np.ndarray = field(init=False)

    def __post_init__(self):
        h = self.incidence
        d_e = h.sum(axis=0)
        if np.any(d_e == 0):
            raise ValueError("hypergraph has an empty edge")
        if np.any(self.edge_weights <= 0):
            raise ValueError("edge weights must be positive")
        object.__setattr__(self, "edge_degrees", d_e)
        object.__setattr__(self, "vertex_degrees", h @ self.edge_weights)

    @property
    def n_vertices(self):
        return self.incidence.shape[0]

    @property
    def n_edges(self):
        return self.incidence.shape[1]

    def smoothing_matrix(self):
        """S = H W D_E^{-1} H^T, symmetrized against round-off."""
        h = self.incidence
        s = (h * (self.edge_weights / self.edge_degrees)) @ h.T
        return 0.5 * (s + s.T)

    def laplacian(self):
        """L = D_V - S; symmetric, PSD, with vanishing row sums."""
        return np.diag(self.vertex_degrees) - self.smoothing_matrix()


def pairwise_distances(samples):
    """Dense Euclidean distance matrix, computed pair by pair.

    The broadcast difference form is used so each entry depends only on
    its own pair of rows, keeping the matrix exactly symmetric.
    """
    samples = np.asarray(samples, dtype=np.float64)
    diff = samples[:, None, :] - samples[None, :, :]
    return np.sqrt((diff * diff).sum(axis=-1))


def knn_incidence(samples, k, dist=None):
    """0/1 incidence of the k-nearest-neighbor hypergraph.

    Edge ``i`` holds vertex ``i`` and its ``k`` nearest neighbors; ties
    are broken toward the lower index. Every column has exactly ``k + 1``
    ones.
    """
    samples = np.asarray(samples, dtype=np.float64)
    check_finite(samples, "samples")
    n = samples.shape[0]
    if not 1 <= k < n:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    if dist is None:
        dist = pairwise_distances(samples)
    h = np.zeros((n, n))
    for i in range(n):
        d = dist[i].copy()
        d[i] = np.inf
        neighbors = np.argsort(d, kind="stable")[:k]
        h[i, i] = 1.0
        h[neighbors, i] = 1.0
    return h


def affinity(samples, dist=None):
    """Heat-kernel affinity matrix and its radius.

    ``A[i, j] = exp(-d(i, j)^2 / sigma^2)`` with ``sigma`` the mean
    distance over distinct pairs. Raises when all points coincide.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.shape[0] < 2:
        raise ValueError("need at least two samples")
    if dist is None:
        dist = pairwise_distances(samples)
    n = dist.shape[0]
    sigma = dist.sum() / (n * (n - 1))
    if sigma == 0.0:
        raise ValueError("all samples identical: affinity radius degenerates to 0")
    return np.exp(-((dist / sigma) ** 2)), sigma


def edge_weights(incidence, aff):
    """Per-edge weight: summed affinity between the anchor and members.

    Assumes edge ``i`` is anchored at vertex ``i`` (the construction of
    :func:`knn_incidence`), so the self term ``A[i, i] = 1`` is included.
    """
    n_edges = incidence.shape[1]
    if incidence.shape[0] != aff.shape[0]:
        raise ValueError("incidence and affinity disagree on vertex count")
    if np.any(incidence.sum(axis=0) == 0):
        raise ValueError("empty edge")
    w = np.empty(n_edges)
    for e in range(n_edges):
        w[e] = aff[e, incidence[:, e] > 0].sum()
    return w


def _pair_incidence(samples, k, dist, aff):
    """Size-2 edges from the symmetrized kNN adjacency, heat-kernel weighted."""
    n = samples.shape[0]
    h_knn = knn_incidence(samples, k, dist)
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        members = np.flatnonzero(h_knn[:, i] > 0)
        for j in members:
            if j != i:
                adj[min(i, j), max(i, j)] = True
    pairs = np.argwhere(adj)
    h = np.zeros((n, len(pairs)))
    w = np.empty(len(pairs))
    for e, (i, j) in enumerate(pairs):
        h[i, e] = h[j, e] = 1.0
        w[e] = aff[i, j]
    return h, w


def build_hypergraph(samples, k, variant="hypergraph"):
    """Construct the neighborhood (hyper)graph over sample rows.

    variant "hypergraph" gives one (k+1)-vertex edge per sample;
    "graph" gives one size-2 edge per symmetrized kNN pair, which
    reduces the regularizer to an ordinary graph Laplacian.
    """
    samples = np.asarray(samples, dtype=np.float64)
    dist = pairwise_distances(samples)
    aff, sigma = affinity(samples, dist)
    if variant == "hypergraph":
        h = knn_incidence(samples, k, dist)
        w = edge_weights(h, aff)
    elif variant == "graph":
        h, w = _pair_incidence(samples, k, dist, aff)
    else:
        raise ValueError(f"unknown hypergraph variant {variant!r}")
    return Hypergraph(incidence=h, edge_weights=w, sigma=sigma)
