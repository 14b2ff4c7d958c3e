"""Nonnegative tensor ring factorization with hypergraph regularization."""

from .estimator import NonnegativeTensorRing
from .evaluation import accuracy, add_gaussian_noise, kmeans, nmi, purity
from .hypergraph import Hypergraph, build_hypergraph
from .io import read_labels, read_tensor, write_labels, write_tensor
from .solver import SolveResult, SolverConfig, factorize, init_cores, objective
from .synth import cluster_tensor, ring_tensor, tucker_tensor
from .tensor_ops import (
    core_matrix,
    fold,
    fold_ring,
    merge_chain,
    merge_cores,
    mode_product,
    ring_reconstruct,
    subchain,
    subchain_gram,
    unfold,
    unfold_ring,
)
from .tucker import TuckerApprox, hosvd, tucker_reconstruct

__version__ = "0.1.0"

__all__ = [
    "Hypergraph",
    "NonnegativeTensorRing",
    "SolveResult",
    "SolverConfig",
    "TuckerApprox",
    "accuracy",
    "add_gaussian_noise",
    "build_hypergraph",
    "cluster_tensor",
    "core_matrix",
    "factorize",
    "fold",
    "fold_ring",
    "hosvd",
    "init_cores",
    "kmeans",
    "merge_chain",
    "merge_cores",
    "mode_product",
    "nmi",
    "objective",
    "purity",
    "read_labels",
    "read_tensor",
    "ring_reconstruct",
    "ring_tensor",
    "subchain",
    "subchain_gram",
    "tucker_reconstruct",
    "tucker_tensor",
    "unfold",
    "unfold_ring",
    "write_labels",
    "write_tensor",
]
