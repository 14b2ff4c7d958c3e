"""Multiplicative-update solvers for regularized nonnegative ring factorization.

The model fits a nonnegative tensor by a ring of nonnegative 3-way cores,
optionally penalizing the last core's sample features with a (hyper)graph
Laplacian quadratic form:

    0.5 * ||X - ring(cores)||_F^2
    + 0.5 * beta * tr(F^T (D_V - S) F),   F = core_matrix(cores[-1])

Each outer sweep walks the cores in order; per core the sub-chain of the
others is frozen and ``inner_iters`` multiplicative updates run against
it. The update keeps every entry nonnegative and never increases the
objective. The "lra" variant substitutes a truncated Tucker surrogate for
the data tensor in the numerator, shrinking the dominant matrix product
from the full data size down to the Tucker ranks; the denominator reuses
the exact self-contraction Gram either way.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_tensor, check_nonnegative, check_ranks
from .hypergraph import build_hypergraph
from .tensor_ops import (
    check_ring,
    core_matrix,
    fold,
    merge_chain,
    mode_product,
    ring_reconstruct,
    subchain,
    subchain_gram,
    unfold_ring,
)
from .tucker import hosvd

GRAPH_MODES = ("hypergraph", "graph", "none")
VARIANTS = ("exact", "lra")


@dataclass
class SolverConfig:
    """Knobs for :func:`factorize`.

    ranks are the ring bond dimensions; ``tucker_ranks`` only matters for
    the "lra" variant. ``graph_mode`` picks the regularizer construction:
    a kNN hypergraph, a plain pairwise kNN graph, or none at all.
    """

    ranks: list
    beta: float = 0.1
    k_neighbors: int = 5
    inner_iters: int = 20
    max_sweeps: int = 200
    tol: float = 1e-6
    variant: str = "exact"
    tucker_ranks: list = None
    graph_mode: str = "hypergraph"
    epsilon: float = 1e-12
    seed: int = 0
    compute_trace: bool = True

    def validate(self, shape=None):
        check_ranks(self.ranks)
        if shape is not None and len(self.ranks) != len(shape):
            raise ValueError(f"{len(self.ranks)} ranks for a {len(shape)}-way tensor")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if self.k_neighbors < 1:
            raise ValueError("k_neighbors must be at least 1")
        if self.inner_iters < 1 or self.max_sweeps < 1:
            raise ValueError("iteration budgets must be positive")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.tol < 0:
            raise ValueError("tol must be nonnegative")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.graph_mode not in GRAPH_MODES:
            raise ValueError(f"graph_mode must be one of {GRAPH_MODES}")
        if self.variant == "lra":
            if self.tucker_ranks is None:
                raise ValueError("lra variant needs tucker_ranks")
            check_ranks(self.tucker_ranks, shape)


@dataclass
class SolveResult:
    """Factorization output plus convergence and timing records."""

    cores: list
    objective_trace: list
    fit_trace: list
    elapsed_trace: list
    sweeps_run: int
    wall_times: dict
    seed: int
    converged: bool = False
    extras: dict = field(default_factory=dict)

    def feature_matrix(self):
        """Per-sample features: the last core's middle-mode unfolding."""
        return core_matrix(self.cores[-1])


def init_cores(shape, ranks, seed):
    """Seeded uniform(0, 1) ring cores for the given shape and bonds."""
    ranks = check_ranks(ranks)
    rng = np.random.default_rng(seed)
    bonds = list(ranks) + [ranks[0]]
    return [
        rng.random((bonds[i], shape[i], bonds[i + 1])) for i in range(len(shape))
    ]


def objective(x, cores, beta=0.0, smoothing=None, degrees=None):
    """Evaluate the regularized fitting objective at the given cores."""
    resid = x - ring_reconstruct(cores)
    value = 0.5 * np.sum(resid * resid)
    if beta > 0 and smoothing is not None:
        f = core_matrix(cores[-1])
        value += 0.5 * beta * np.sum((degrees[:, None] * f - smoothing @ f) * f)
    return value


def mur_update(g2, numerator_base, gram, beta=0.0, smoothing=None, degrees=None,
               epsilon=1e-12):
    """One multiplicative update of a core's sample-by-feature unfolding.

    ``numerator_base`` is the data-versus-subchain product (already
    clamped nonnegative for the surrogate path); the graph terms are
    added on top when ``beta > 0``. Returns the updated matrix; all
    entries stay nonnegative.
    """
    numer = numerator_base
    denom = g2 @ gram
    if beta > 0 and smoothing is not None:
        numer = numer + beta * (smoothing @ g2)
        denom = denom + beta * (degrees[:, None] * g2)
    return g2 * (numer / (denom + epsilon))


def _lra_numerator(factors, core_unfs, cores, n):
    zs = [mode_product(c, u.T, 1) for c, u in zip(cores, factors)]
    order = [(n + 1 + i) % len(cores) for i in range(len(cores) - 1)]
    z_sub = merge_chain([zs[m] for m in order])
    p = factors[n] @ (core_unfs[n] @ unfold_ring(z_sub, 1))
    return np.maximum(p, 0.0)  # Tucker surrogate can go signed


def factorize(x, config, initial_cores=None, on_inner_iteration=None):
    """Fit a nonnegative ring factorization of ``x`` under ``config``.

    Parameters
    ----------
    x : ndarray
        Nonnegative data tensor; the last mode indexes samples.
    config : SolverConfig
    initial_cores : list of ndarray, optional
        Overrides the seeded uniform initialization.
    on_inner_iteration : callable, optional
        ``f(sweep, core_index, inner_iter, g2)`` called after every
        multiplicative update, e.g. for invariant checking.

    Returns
    -------
    SolveResult
        Cores, per-sweep objective and relative-fit traces, phase wall
        times, and the stopping state.
    """
    x = as_tensor(x)
    config.validate(x.shape)
    check_nonnegative(x, "data tensor")
    ndim = x.ndim
    if ndim < 2:
        raise ValueError("need at least a 2-way tensor")

    wall = {"graph": 0.0, "lra": 0.0, "updates": 0.0}

    beta = config.beta if config.graph_mode != "none" else 0.0
    smoothing = degrees = None
    if beta > 0:
        t0 = time.perf_counter()
        hg = build_hypergraph(unfold_ring(x, ndim - 1), config.k_neighbors,
                              variant=config.graph_mode)
        smoothing = hg.smoothing_matrix()
        degrees = hg.vertex_degrees
        wall["graph"] = time.perf_counter() - t0

    factors = core_unfs = None
    if config.variant == "lra":
        t0 = time.perf_counter()
        approx = hosvd(x, config.tucker_ranks)
        factors = approx.factors
        core_unfs = [unfold_ring(approx.core, n) for n in range(ndim)]
        wall["lra"] = time.perf_counter() - t0

    if initial_cores is None:
        cores = init_cores(x.shape, config.ranks, config.seed)
    else:
        cores = [as_tensor(c).copy() for c in initial_cores]
        check_ring(cores)
        for c in cores:
            check_nonnegative(c, "initial core")
        if [c.shape[1] for c in cores] != list(x.shape):
            raise ValueError("initial cores do not match the tensor shape")
    x_unf = [unfold_ring(x, n) for n in range(ndim)]
    norm_x = np.linalg.norm(x)

    def trace_point():
        resid = x - ring_reconstruct(cores)
        half_sq = 0.5 * np.sum(resid * resid)
        obj = half_sq
        if beta > 0:
            f = core_matrix(cores[-1])
            obj += 0.5 * beta * np.sum((degrees[:, None] * f - smoothing @ f) * f)
        return obj, np.sqrt(2.0 * half_sq) / norm_x

    obj_trace, fit_trace, elapsed = [], [], []
    t_updates = time.perf_counter()
    if config.compute_trace:
        obj, fit = trace_point()
        obj_trace.append(obj)
        fit_trace.append(fit)
        elapsed.append(0.0)

    sweeps_run = 0
    converged = False
    for sweep in range(config.max_sweeps):
        for n in range(ndim):
            last = n == ndim - 1
            gram = subchain_gram(cores, n)
            if config.variant == "lra":
                numer = _lra_numerator(factors, core_unfs, cores, n)
            else:
                numer = x_unf[n] @ unfold_ring(subchain(cores, n), 1)
            g2 = core_matrix(cores[n])
            for t in range(config.inner_iters):
                g2 = mur_update(
                    g2, numer, gram,
                    beta=beta if last else 0.0,
                    smoothing=smoothing, degrees=degrees,
                    epsilon=config.epsilon,
                )
                if np.isnan(g2).any():
                    raise FloatingPointError(
                        f"NaN in core {n} at sweep {sweep}, inner iteration {t}"
                    )
                if on_inner_iteration is not None:
                    on_inner_iteration(sweep, n, t, g2)
            cores[n] = fold(g2, 1, cores[n].shape)
        sweeps_run = sweep + 1
        if config.compute_trace:
            obj, fit = trace_point()
            obj_trace.append(obj)
            fit_trace.append(fit)
            elapsed.append(time.perf_counter() - t_updates)
            prev = obj_trace[-2]
            if prev == 0.0 or abs(prev - obj) / prev < config.tol:
                converged = True
                break
    wall["updates"] = time.perf_counter() - t_updates

    return SolveResult(
        cores=cores,
        objective_trace=obj_trace,
        fit_trace=fit_trace,
        elapsed_trace=elapsed,
        sweeps_run=sweeps_run,
        wall_times=wall,
        seed=config.seed,
        converged=converged,
    )
