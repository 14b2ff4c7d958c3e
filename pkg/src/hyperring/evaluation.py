"""Clustering of learned features and the metrics used to score it.

k-means is implemented directly so the tie and empty-cluster rules are
pinned: ties assign to the lowest centroid index, an emptied centroid is
reseeded to the point farthest from its assigned centroid, and the best
of ``restarts`` runs by within-cluster sum of squares wins.
"""

import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._validation import as_tensor


def _lloyd(x, centers, max_iter):
    n, k = x.shape[0], centers.shape[0]
    labels = np.full(n, -1)
    for _ in range(max_iter):
        d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=-1)
        new_labels = d2.argmin(axis=1)
        point_d2 = d2[np.arange(n), new_labels]
        for c in range(k):
            if not np.any(new_labels == c):
                far = point_d2.argmax()
                new_labels[far] = c
                point_d2[far] = 0.0
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            centers[c] = x[labels == c].mean(axis=0)
    wcss = ((x - centers[labels]) ** 2).sum()
    return labels, wcss


def _plusplus_init(x, k, rng):
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[rng.integers(n)]
    d2 = ((x - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total == 0:
            centers[c] = x[rng.integers(n)]
        else:
            idx = np.searchsorted(np.cumsum(d2 / total), rng.random())
            centers[c] = x[min(idx, n - 1)]
        d2 = np.minimum(d2, ((x - centers[c]) ** 2).sum(axis=1))
    return centers


def kmeans(features, k, seed=0, restarts=10, max_iter=300, return_all=False):
    """Cluster rows of ``features`` into ``k`` groups.

    Runs ``restarts`` k-means++ seeded Lloyd iterations and keeps the
    labeling with the smallest within-cluster sum of squares.
    Deterministic for a fixed ``(seed, restarts)``. With ``return_all``,
    also returns every restart's labels for mean-across-restart scoring.
    """
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("features must be 2-d (samples x dims)")
    if not 1 <= k <= x.shape[0]:
        raise ValueError(f"k must be in [1, {x.shape[0]}]")
    rng = np.random.default_rng(seed)
    best_labels, best_wcss, all_labels = None, np.inf, []
    for _ in range(max(1, restarts)):
        labels, wcss = _lloyd(x, _plusplus_init(x, k, rng), max_iter)
        all_labels.append(labels)
        if wcss < best_wcss:
            best_labels, best_wcss = labels, wcss
    if return_all:
        return best_labels, best_wcss, all_labels
    return best_labels


def _contingency(truth, pred):
    truth = np.asarray(truth)
    pred = np.asarray(pred)
    if truth.shape != pred.shape or truth.ndim != 1:
        raise ValueError("labelings must be 1-d and equally long")
    _, ti = np.unique(truth, return_inverse=True)
    _, pi = np.unique(pred, return_inverse=True)
    table = np.zeros((ti.max() + 1, pi.max() + 1), dtype=np.int64)
    np.add.at(table, (ti, pi), 1)
    return table


def accuracy(truth, pred):
    """Fraction of samples matched under the best one-to-one label mapping."""
    table = _contingency(truth, pred)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return table[rows, cols].sum() / table.sum()


def nmi(truth, pred):
    """Mutual information (base 2) normalized by the larger entropy.

    1.0 when the partitions coincide up to relabeling (including the
    trivial single-cluster pair), 0.0 for independent partitions.
    """
    table = _contingency(truth, pred)
    n = table.sum()
    pt = table.sum(axis=1) / n
    pp = table.sum(axis=0) / n
    h_t = -sum(p * math.log2(p) for p in pt if p > 0)
    h_p = -sum(p * math.log2(p) for p in pp if p > 0)
    if h_t == 0 and h_p == 0:
        return 1.0
    mi = 0.0
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            if table[i, j] > 0:
                pij = table[i, j] / n
                mi += pij * math.log2(pij / (pt[i] * pp[j]))
    return max(0.0, mi) / max(h_t, h_p)


def purity(truth, pred):
    """Size-weighted mean of each predicted cluster's dominant-class share."""
    table = _contingency(truth, pred)
    return table.max(axis=0).sum() / table.sum()


def add_gaussian_noise(x, snr_db, seed=0, truncate=False):
    """Corrupt ``x`` with white Gaussian noise at a target SNR.

    The noise is scaled so ``10 log10(||x||^2 / ||noise||^2)`` equals
    ``snr_db`` exactly. ``snr_db=inf`` (or None) returns ``x`` unchanged;
    ``truncate`` clamps negative results to zero.
    """
    x = as_tensor(x)
    if snr_db is None or snr_db == math.inf:
        return x.copy()
    norm_x = np.linalg.norm(x)
    if norm_x == 0:
        raise ValueError("cannot set an SNR against a zero tensor")
    noise = np.random.default_rng(seed).standard_normal(x.shape)
    noise *= norm_x * 10 ** (-snr_db / 20) / np.linalg.norm(noise)
    out = x + noise
    if truncate:
        np.maximum(out, 0.0, out=out)
    return out
