import numpy as np
import pytest
from sklearn.base import clone

from hyperring.estimator import NonnegativeTensorRing
from hyperring.solver import SolverConfig, factorize


def test_get_set_params_roundtrip():
    est = NonnegativeTensorRing(ranks=[2, 2, 2], beta=0.3)
    params = est.get_params()
    assert params["beta"] == 0.3
    assert params["ranks"] == [2, 2, 2]
    est.set_params(beta=0.7, n_neighbors=3)
    assert est.beta == 0.7 and est.n_neighbors == 3


def test_clone_preserves_params():
    est = NonnegativeTensorRing(ranks=[2, 2, 2], lra_ranks=[3, 3, 3], tol=1e-4)
    cloned = clone(est)
    assert cloned.get_params() == est.get_params()


def test_fit_sets_attributes():
    rng = np.random.default_rng(0)
    x = rng.random((4, 5, 12))
    est = NonnegativeTensorRing(ranks=[2, 2, 2], beta=0.1, n_neighbors=3,
                                inner_iters=3, max_sweeps=5, random_state=1)
    est.fit(x)
    assert len(est.cores_) == 3
    assert est.features_.shape == (12, 4)
    assert est.n_sweeps_ >= 1
    assert len(est.objective_trace_) == est.n_sweeps_ + 1
    assert all(c.min() >= 0 for c in est.cores_)


def test_fit_transform_matches_features():
    rng = np.random.default_rng(1)
    x = rng.random((3, 4, 8))
    est = NonnegativeTensorRing(ranks=[2, 2, 2], beta=0.0, graph="none",
                                inner_iters=2, max_sweeps=3, random_state=0)
    feats = est.fit_transform(x)
    np.testing.assert_array_equal(feats, est.features_)
    np.testing.assert_array_equal(est.transform(x), feats)


def test_transform_rejects_other_data():
    rng = np.random.default_rng(2)
    x = rng.random((3, 4, 8))
    est = NonnegativeTensorRing(ranks=[1, 1, 1], beta=0.0, graph="none",
                                max_sweeps=2).fit(x)
    with pytest.raises(ValueError, match="shape"):
        est.transform(rng.random((3, 4, 9)))


def test_transform_before_fit_errors():
    est = NonnegativeTensorRing(ranks=[1, 1, 1])
    with pytest.raises(Exception):
        est.transform(np.ones((2, 2, 2)))


def test_estimator_matches_functional_solver():
    rng = np.random.default_rng(3)
    x = rng.random((4, 4, 10))
    est = NonnegativeTensorRing(ranks=[2, 2, 2], beta=0.1, n_neighbors=3,
                                inner_iters=4, max_sweeps=6, tol=0.0,
                                random_state=7).fit(x)
    config = SolverConfig(ranks=[2, 2, 2], beta=0.1, k_neighbors=3,
                          inner_iters=4, max_sweeps=6, tol=0.0, seed=7)
    result = factorize(x, config)
    for a, b in zip(est.cores_, result.cores):
        np.testing.assert_array_equal(a, b)


def test_lra_variant_through_estimator():
    rng = np.random.default_rng(4)
    x = rng.random((4, 4, 10))
    est = NonnegativeTensorRing(ranks=[2, 2, 2], beta=0.0, graph="none",
                                lra_ranks=[3, 3, 4], inner_iters=2,
                                max_sweeps=4).fit(x)
    assert est.wall_times_["lra"] > 0
    assert est.features_.min() >= 0
