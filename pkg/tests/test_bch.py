import numpy as np
import pytest

from sek3.core.errors import DimensionMismatchError, UnsupportedOrderError
from sek3.lie.bch import (
    MAX_BCH_ORDER,
    bch,
    bch_first_order,
    bch_via_commutators,
    group_difference,
    perturb,
)
from sek3.lie.group import Side, TangentVector, compose, exp, inverse, log
from sek3.lie.random import random_tangent


def _exact(x, y):
    return log(compose(exp(x), exp(y))).as_array()


def _halving_ratios(rng, k, error, eps=1e-2, trials=100):
    ratios = []
    for _ in range(trials):
        a, b = random_tangent(rng, k, max_angle=2.0), random_tangent(rng, k, max_angle=1.0)
        ratios.append(error(a, b, eps) / error(a, b, eps / 2))
    return float(np.median(ratios))


def test_order_four_is_accurate_for_small_arguments(rng, k):
    for _ in range(100):
        x = random_tangent(rng, k, max_angle=0.05, t_scale=0.02)
        y = random_tangent(rng, k, max_angle=0.05, t_scale=0.02)
        assert np.linalg.norm(bch(x, y, 4).as_array() - _exact(x, y)) <= 1e-6


def test_error_shrinks_with_order(rng):
    x = random_tangent(rng, 2, max_angle=0.1, t_scale=0.05)
    y = random_tangent(rng, 2, max_angle=0.1, t_scale=0.05)
    errors = [np.linalg.norm(bch(x, y, order).as_array() - _exact(x, y)) for order in range(1, 5)]
    assert errors[1] < errors[0]
    assert errors[3] < errors[1]


@pytest.mark.parametrize("order", range(1, MAX_BCH_ORDER + 1))
def test_adjoint_and_commutator_forms_agree(rng, k, order):
    for _ in range(20):
        x, y = random_tangent(rng, k), random_tangent(rng, k)
        np.testing.assert_allclose(
            bch(x, y, order).as_array(), bch_via_commutators(x, y, order).as_array(), atol=1e-11
        )


def test_commuting_arguments_add():
    x = TangentVector([0.0, 0.0, 0.3], [[0.0, 0.0, 1.0]])
    y = TangentVector([0.0, 0.0, -0.1], [[0.0, 0.0, 2.0]])
    np.testing.assert_allclose(bch(x, y).as_array(), (x + y).as_array(), atol=1e-15)


@pytest.mark.parametrize("order", [0, 5, -1])
def test_unsupported_order(order):
    with pytest.raises(UnsupportedOrderError):
        bch(TangentVector.zeros(1), TangentVector.zeros(1), order)
    with pytest.raises(UnsupportedOrderError):
        bch_via_commutators(TangentVector.zeros(1), TangentVector.zeros(1), order)


def test_mixed_k_rejected():
    with pytest.raises(DimensionMismatchError):
        bch(TangentVector.zeros(1), TangentVector.zeros(2))


def test_first_order_small_first_converges_quadratically(rng, k):
    def error(a, b, eps):
        small = eps * a
        approx = bch_first_order(small, b, which_small="first").as_array()
        return np.linalg.norm(approx - _exact(small, b))

    assert 3.5 <= _halving_ratios(rng, k, error) <= 4.5


def test_first_order_small_second_converges_quadratically(rng, k):
    def error(a, b, eps):
        small = eps * a
        approx = bch_first_order(b, small, which_small="second").as_array()
        return np.linalg.norm(approx - _exact(b, small))

    assert 3.5 <= _halving_ratios(rng, k, error) <= 4.5


def test_first_order_rejects_unknown_mode():
    with pytest.raises(ValueError):
        bch_first_order(TangentVector.zeros(0), TangentVector.zeros(0), which_small="both")


@pytest.mark.parametrize("side", list(Side))
def test_perturb_is_second_order(rng, side):
    def error(xi, delta, eps):
        d = eps * delta
        exact = exp(xi + d).matrix()
        return np.linalg.norm(exact - perturb(xi, d, side).matrix())

    assert 3.5 <= _halving_ratios(rng, 2, error) <= 4.5


def test_group_difference_right(rng, k):
    def error(xi, delta, eps):
        d = eps * delta
        exact = log(compose(inverse(exp(xi)), exp(xi + d))).as_array()
        return np.linalg.norm(exact - group_difference(xi, d, Side.RIGHT).as_array())

    assert 3.5 <= _halving_ratios(rng, k, error) <= 4.5


def test_group_difference_left(rng, k):
    def error(xi, delta, eps):
        d = eps * delta
        exact = log(compose(exp(xi + d), inverse(exp(xi)))).as_array()
        return np.linalg.norm(exact - group_difference(xi, d, Side.LEFT).as_array())

    assert 3.5 <= _halving_ratios(rng, k, error) <= 4.5


def test_perturb_at_zero_delta(rng):
    xi = random_tangent(rng, 1)
    np.testing.assert_allclose(perturb(xi, TangentVector.zeros(1)).matrix(), exp(xi).matrix(), atol=1e-15)
