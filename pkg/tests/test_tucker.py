import numpy as np
import pytest

from hyperring.tensor_ops import mode_product
from hyperring.tucker import TuckerApprox, hosvd, tucker_reconstruct


def rel_err(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


def exact_tucker_tensor(rng, shape, ranks):
    core = rng.random(ranks)
    factors = [rng.random((s, r)) for s, r in zip(shape, ranks)]
    x = core
    for n, u in enumerate(factors):
        x = mode_product(x, u, n)
    return x


def test_full_rank_is_exact():
    rng = np.random.default_rng(0)
    x = rng.random((4, 5, 3))
    t = hosvd(x, x.shape)
    assert rel_err(tucker_reconstruct(t), x) <= 1e-9


def test_exact_low_rank_recovered():
    rng = np.random.default_rng(1)
    x = exact_tucker_tensor(rng, (6, 5, 7), (2, 2, 2))
    t = hosvd(x, (2, 2, 2))
    assert rel_err(tucker_reconstruct(t), x) <= 1e-9


def test_rank_one_tensor_rank_one_truncation():
    rng = np.random.default_rng(2)
    x = exact_tucker_tensor(rng, (4, 3, 5), (1, 1, 1))
    t = hosvd(x, (1, 1, 1))
    assert rel_err(tucker_reconstruct(t), x) <= 1e-10


def test_factor_orthonormality():
    rng = np.random.default_rng(3)
    x = rng.random((5, 4, 6))
    t = hosvd(x, (3, 2, 4))
    for u in t.factors:
        np.testing.assert_allclose(u.T @ u, np.eye(u.shape[1]), atol=1e-10)


def test_error_monotone_in_rank():
    rng = np.random.default_rng(4)
    x = rng.random((6, 6, 6))
    errs = [
        rel_err(tucker_reconstruct(hosvd(x, (r, 3, 3))), x) for r in range(1, 7)
    ]
    assert all(e1 <= e0 + 1e-12 for e0, e1 in zip(errs, errs[1:]))


def test_rank_out_of_range():
    x = np.ones((3, 3))
    with pytest.raises(ValueError):
        hosvd(x, (4, 2))
    with pytest.raises(ValueError):
        hosvd(x, (0, 2))


def test_deterministic_signs():
    rng = np.random.default_rng(5)
    x = rng.random((4, 5, 3))
    t1 = hosvd(x, (2, 2, 2))
    t2 = hosvd(x.copy(), (2, 2, 2))
    for u1, u2 in zip(t1.factors, t2.factors):
        np.testing.assert_array_equal(u1, u2)


def test_reconstruct_identity_factors_returns_core():
    rng = np.random.default_rng(6)
    core = rng.random((2, 3, 4))
    t = TuckerApprox(core=core, factors=[np.eye(2), np.eye(3), np.eye(4)], ranks=[2, 3, 4])
    np.testing.assert_allclose(tucker_reconstruct(t), core, atol=1e-15)


def test_reconstruct_zero_core():
    t = TuckerApprox(
        core=np.zeros((2, 2)), factors=[np.eye(3, 2), np.eye(4, 2)], ranks=[2, 2]
    )
    assert not tucker_reconstruct(t).any()


def test_reconstruct_matches_chained_products():
    rng = np.random.default_rng(7)
    x = rng.random((5, 4, 3))
    t = hosvd(x, (2, 3, 2))
    expect = t.core
    for n, u in enumerate(t.factors):
        expect = mode_product(expect, u, n)
    np.testing.assert_allclose(tucker_reconstruct(t), expect, atol=1e-12)


def test_inconsistent_approx_rejected():
    with pytest.raises(ValueError):
        TuckerApprox(core=np.zeros((2, 2)), factors=[np.eye(3, 2)], ranks=[2])
