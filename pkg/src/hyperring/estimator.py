"""Scikit-learn style front end for the ring factorization solver."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .solver import SolverConfig, factorize


class NonnegativeTensorRing(BaseEstimator, TransformerMixin):
    """Nonnegative tensor ring factorization with manifold regularization.

    Fits a ring of nonnegative 3-way cores to a nonnegative data tensor
    whose last mode indexes samples, optionally smoothing the sample
    features over a k-nearest-neighbor hypergraph (or plain graph). The
    learned features are the last core's sample-by-feature unfolding,
    ready for k-means or any downstream sklearn estimator.

    The factorization is transductive: ``transform`` only accepts the
    tensor it was fitted on.

    Parameters
    ----------
    ranks : list of int
        Ring bond dimensions, one per tensor mode.
    beta : float, default=0.1
        Regularization weight; 0 disables the graph term.
    n_neighbors : int, default=5
        Neighborhood size for the (hyper)graph construction.
    graph : {"hypergraph", "graph", "none"}, default="hypergraph"
        Regularizer structure over samples.
    lra_ranks : list of int, optional
        Tucker ranks for the low-rank-accelerated variant; None runs the
        exact solver.
    inner_iters : int, default=20
        Multiplicative updates per core per sweep.
    max_sweeps : int, default=200
        Outer sweep budget.
    tol : float, default=1e-6
        Relative objective-change stopping threshold.
    epsilon : float, default=1e-12
        Denominator guard in the multiplicative updates.
    random_state : int, default=0
        Seed for the uniform core initialization.

    Attributes
    ----------
    cores_ : list of ndarray
        Fitted nonnegative ring cores.
    features_ : ndarray of shape (n_samples, ranks[-1] * ranks[0])
        Learned per-sample features.
    objective_trace_ : list of float
    fit_trace_ : list of float
        Relative fitting error per sweep.
    n_sweeps_ : int
    wall_times_ : dict
    """

    def __init__(self, ranks, beta=0.1, n_neighbors=5, graph="hypergraph",
                 lra_ranks=None, inner_iters=20, max_sweeps=200, tol=1e-6,
                 epsilon=1e-12, random_state=0):
        self.ranks = ranks
        self.beta = beta
        self.n_neighbors = n_neighbors
        self.graph = graph
        self.lra_ranks = lra_ranks
        self.inner_iters = inner_iters
        self.max_sweeps = max_sweeps
        self.tol = tol
        self.epsilon = epsilon
        self.random_state = random_state

    def _config(self):
        return SolverConfig(
            ranks=list(self.ranks),
            beta=self.beta,
            k_neighbors=self.n_neighbors,
            inner_iters=self.inner_iters,
            max_sweeps=self.max_sweeps,
            tol=self.tol,
            variant="exact" if self.lra_ranks is None else "lra",
            tucker_ranks=None if self.lra_ranks is None else list(self.lra_ranks),
            graph_mode=self.graph,
            epsilon=self.epsilon,
            seed=self.random_state,
        )

    def fit(self, X, y=None):
        """Factorize the tensor ``X`` (last mode = samples)."""
        result = factorize(np.asarray(X, dtype=np.float64), self._config())
        self.cores_ = result.cores
        self.features_ = result.feature_matrix()
        self.objective_trace_ = result.objective_trace
        self.fit_trace_ = result.fit_trace
        self.n_sweeps_ = result.sweeps_run
        self.wall_times_ = result.wall_times
        self._fit_shape = np.asarray(X).shape
        return self

    def transform(self, X):
        """Return the learned features for the fitted tensor."""
        check_is_fitted(self, "cores_")
        if np.asarray(X).shape != self._fit_shape:
            raise ValueError(
                "transform only supports the tensor passed to fit "
                f"(expected shape {self._fit_shape})"
            )
        return self.features_

    def fit_transform(self, X, y=None):
        return self.fit(X).features_
