import numpy as np
import pytest

from sek3.core.errors import DimensionMismatchError, NotConcentratedError, NotPSDError
from sek3.lie.adjoint import adjoint
from sek3.lie.group import GroupElement, Side, TangentVector, compose, exp, inverse, log, log_batch
from sek3.lie.random import random_element
from sek3.metrics import distance
from sek3.uncertainty import ConcentratedGaussian, convert_side, recover, sample, sample_arrays


def _frobenius_rel(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


def test_validation():
    mean = GroupElement.identity(1)
    with pytest.raises(DimensionMismatchError):
        ConcentratedGaussian(mean, np.eye(3))
    asymmetric = np.eye(6)
    asymmetric[0, 1] = 0.5
    with pytest.raises(NotPSDError):
        ConcentratedGaussian(mean, asymmetric)
    with pytest.raises(NotPSDError):
        ConcentratedGaussian(mean, -np.eye(6))
    d = ConcentratedGaussian(mean, np.eye(6), "right")
    assert d.side is Side.RIGHT
    assert d.k == 1


def test_zero_covariance_samples_equal_mean(rng):
    mean = random_element(rng, 2)
    d = ConcentratedGaussian(mean, np.zeros((9, 9)))
    for g in sample(d, seed=0, n=5):
        np.testing.assert_allclose(g.matrix(), mean.matrix(), atol=1e-15)


def test_samples_are_reproducible(rng):
    d = ConcentratedGaussian(random_element(rng, 1), 0.01 * np.eye(6))
    r1, p1 = sample_arrays(d, seed=4, n=20)
    r2, p2 = sample_arrays(d, seed=4, n=20)
    np.testing.assert_array_equal(r1, r2)
    np.testing.assert_array_equal(p1, p2)
    r3, p3 = sample_arrays(d, seed=4, n=8, start=10)
    np.testing.assert_allclose(r3, r1[10:18], atol=1e-14)
    np.testing.assert_allclose(p3, p1[10:18], atol=1e-14)
    r4, _ = sample_arrays(d, seed=5, n=20)
    assert not np.allclose(r4, r1)


def test_sample_rejects_empty_draw(rng):
    d = ConcentratedGaussian(GroupElement.identity(0), np.eye(3))
    with pytest.raises(ValueError):
        sample(d, seed=0, n=0)


@pytest.mark.slow
def test_left_samples_have_requested_covariance():
    cov = 0.01 * np.eye(9)
    d = ConcentratedGaussian(GroupElement.identity(2), cov)
    r, p = sample_arrays(d, seed=1, n=100_000)
    logs = log_batch(r, p)
    assert _frobenius_rel(logs.T @ logs / len(logs), cov) <= 0.1


@pytest.mark.slow
@pytest.mark.parametrize("side", list(Side))
def test_sample_recover_round_trip(rng, side):
    mean = random_element(rng, 2, max_angle=1.0)
    cov = 0.01 * np.eye(9)
    d = ConcentratedGaussian(mean, cov, Side.LEFT)
    if side is Side.RIGHT:
        d = convert_side(d)
    recovered = recover(sample(d, seed=2, n=100_000), side=side)
    assert recovered.side is side
    assert distance(recovered.mean, mean) <= 0.01
    assert _frobenius_rel(recovered.cov, d.cov) <= 0.1


@pytest.mark.slow
def test_converted_distribution_matches_statistically(rng):
    mean = random_element(rng, 1, max_angle=1.0)
    left = ConcentratedGaussian(mean, 0.01 * np.eye(6), Side.LEFT)
    right = convert_side(left)
    from_left = recover(sample(left, seed=3, n=100_000))
    from_right = recover(sample(right, seed=4, n=100_000))
    assert _frobenius_rel(from_right.cov, from_left.cov) <= 0.1


def test_recover_identical_samples(rng):
    g = random_element(rng, 2)
    d = recover([g] * 10)
    np.testing.assert_allclose(d.mean.matrix(), g.matrix(), atol=1e-15)
    np.testing.assert_allclose(d.cov, np.zeros((9, 9)), atol=1e-20)
    single = recover([g])
    np.testing.assert_allclose(single.mean.matrix(), g.matrix(), atol=1e-15)


def test_recover_rejects_spread_samples():
    far = exp(TangentVector([2.0, 0.0, 0.0], np.zeros((1, 3))))
    with pytest.raises(NotConcentratedError):
        recover([GroupElement.identity(1), far])


def test_recover_rejects_empty_and_mixed():
    with pytest.raises(ValueError):
        recover([])
    with pytest.raises(DimensionMismatchError):
        recover([GroupElement.identity(1), GroupElement.identity(2)])


def test_convert_side_at_identity_mean(rng):
    cov = np.diag(rng.uniform(0.01, 0.1, size=6))
    d = ConcentratedGaussian(GroupElement.identity(1), cov)
    converted = convert_side(d)
    assert converted.side is Side.RIGHT
    np.testing.assert_array_equal(converted.cov, cov)


def test_convert_side_round_trip(rng, k):
    a = rng.normal(size=(3 * (k + 1), 3 * (k + 1)))
    d = ConcentratedGaussian(random_element(rng, k), 0.01 * a @ a.T)
    back = convert_side(convert_side(d))
    assert back.side is Side.LEFT
    np.testing.assert_allclose(back.cov, d.cov, atol=1e-12)


def test_convert_side_uses_adjoint(rng):
    mean = random_element(rng, 1)
    d = ConcentratedGaussian(mean, 0.01 * np.eye(6))
    a = adjoint(mean)
    np.testing.assert_allclose(convert_side(d).cov, 0.01 * a @ a.T, atol=1e-14)


def test_quotient_is_invariant_to_common_right_factor(rng):
    t, t_hat, gamma = random_element(rng, 2), random_element(rng, 2), random_element(rng, 2)
    before = compose(t, inverse(t_hat))
    after = compose(compose(t, gamma), inverse(compose(t_hat, gamma)))
    np.testing.assert_allclose(after.matrix(), before.matrix(), atol=1e-12)
    before = compose(inverse(t_hat), t)
    after = compose(inverse(compose(gamma, t_hat)), compose(gamma, t))
    np.testing.assert_allclose(after.matrix(), before.matrix(), atol=1e-12)
    assert log(before).k == 2
