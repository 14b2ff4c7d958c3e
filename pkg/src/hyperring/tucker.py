"""Truncated higher-order SVD for low-rank tensor approximation.

One-pass HOSVD: per-mode orthonormal factors from the leading
eigenvectors of the unfolding Gram, then the core by projecting the
tensor onto them. The core is signed; only the ring cores downstream
carry a nonnegativity constraint.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_tensor, check_ranks
from .tensor_ops import mode_product, unfold


@dataclass(frozen=True)
class TuckerApprox:
    """Core tensor plus per-mode orthonormal factors."""

    core: np.ndarray
    factors: list
    ranks: list

    def __post_init__(self):
        if self.core.ndim != len(self.factors):
            raise ValueError("core order and factor count disagree")
        for n, (u, r) in enumerate(zip(self.factors, self.ranks)):
            if u.shape[1] != r or self.core.shape[n] != r:
                raise ValueError(f"factor {n} inconsistent with rank {r}")

    @property
    def shape(self):
        return tuple(u.shape[0] for u in self.factors)


def _fix_signs(u):
    # deterministic orientation: largest-magnitude entry of each column positive
    lead = np.abs(u).argmax(axis=0)
    signs = np.sign(u[lead, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return u * signs


def hosvd(x, ranks):
    """Truncated HOSVD of ``x`` at the given per-mode ranks.

    Factors are the top eigenvectors of each unfolding Gram
    ``X_(n) X_(n)^T`` (cheaper than a full SVD when the mode extent is
    small against the product of the others); the core is the projection
    of ``x`` onto them.
    """
    x = as_tensor(x)
    ranks = check_ranks(ranks, x.shape)
    factors = []
    for n, r in enumerate(ranks):
        m = unfold(x, n)
        vals, vecs = np.linalg.eigh(m @ m.T)
        top = vecs[:, np.argsort(vals)[::-1][:r]]
        factors.append(_fix_signs(top))
    core = x
    for n, u in enumerate(factors):
        core = mode_product(core, u.T, n)
    return TuckerApprox(core=core, factors=factors, ranks=ranks)


def tucker_reconstruct(t):
    """Expand a :class:`TuckerApprox` back to a full tensor."""
    x = t.core
    for n, u in enumerate(t.factors):
        x = mode_product(x, u, n)
    return x
