"""Synthetic data generators for desk-scale experiments.

Three kinds: tensors with exact ring structure, tensors with exact
Tucker structure, and labeled cluster stacks (prototype per class plus a
small uniform perturbation per sample, stacked along the last mode).
"""

import numpy as np

from ._validation import check_ranks
from .solver import init_cores
from .tensor_ops import mode_product, ring_reconstruct


def ring_tensor(shape, ranks, seed=0):
    """Exactly ring-structured nonnegative tensor from uniform cores."""
    check_ranks(ranks)
    return ring_reconstruct(init_cores(shape, ranks, seed))


def tucker_tensor(shape, ranks, seed=0):
    """Exactly Tucker-structured nonnegative tensor from uniform factors."""
    ranks = check_ranks(ranks, shape)
    rng = np.random.default_rng(seed)
    x = rng.random(ranks)
    for n, s in enumerate(shape):
        x = mode_product(x, rng.random((s, ranks[n])), n)
    return x


def cluster_tensor(leading_shape, n_classes, samples_per_class, spread,
                   seed=0):
    """Labeled stack of perturbed class prototypes.

    Each class gets a uniform(0, 1) prototype over ``leading_shape``;
    each sample adds a fresh uniform(0, spread) perturbation. Samples are
    stacked along a new last mode in class-block order. Returns
    ``(tensor, labels)``.
    """
    if n_classes < 1 or samples_per_class < 1:
        raise ValueError("need at least one class and one sample per class")
    if spread < 0:
        raise ValueError("spread must be nonnegative")
    rng = np.random.default_rng(seed)
    prototypes = [rng.random(leading_shape) for _ in range(n_classes)]
    slabs, labels = [], []
    for c, proto in enumerate(prototypes):
        for _ in range(samples_per_class):
            slabs.append(proto + spread * rng.random(leading_shape))
            labels.append(c)
    return np.stack(slabs, axis=-1), np.array(labels, dtype=np.int64)


def separation_ratio(samples, labels):
    """Mean within-class over mean between-class pairwise distance."""
    samples = np.asarray(samples, dtype=np.float64)
    labels = np.asarray(labels)
    diff = samples[:, None, :] - samples[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    same = labels[:, None] == labels[None, :]
    off_diag = ~np.eye(len(labels), dtype=bool)
    within = dist[same & off_diag]
    between = dist[~same]
    if between.size == 0 or within.size == 0:
        raise ValueError("need at least two classes with two samples each")
    return within.mean() / between.mean()
