"""Shared input checks."""

import numpy as np


def as_tensor(x):
    """Coerce to a C-contiguous float64 ndarray."""
    return np.ascontiguousarray(x, dtype=np.float64)


def check_mode(mode, ndim):
    if not isinstance(mode, (int, np.integer)):
        raise TypeError(f"mode must be an integer, got {type(mode).__name__}")
    if not 0 <= mode < ndim:
        raise ValueError(f"mode {mode} out of range for a {ndim}-way tensor")


def check_nonnegative(x, name="tensor"):
    if np.min(x) < 0:
        raise ValueError(f"{name} has negative entries; truncate them first")


def check_finite(x, name="tensor"):
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} has non-finite entries")


def check_ranks(ranks, shape=None):
    ranks = [int(r) for r in ranks]
    if any(r < 1 for r in ranks):
        raise ValueError(f"ranks must be positive, got {ranks}")
    if shape is not None:
        if len(ranks) != len(shape):
            raise ValueError(f"{len(ranks)} ranks for a {len(shape)}-way tensor")
        for r, s in zip(ranks, shape):
            if r > s:
                raise ValueError(f"rank {r} exceeds extent {s}")
    return ranks
