"""Baker-Campbell-Hausdorff composition in tangent coordinates and the
Jacobian-based perturbation formulas built on it."""
from typing import Literal

from sek3.core.errors import UnsupportedOrderError, check_same_k
from sek3.lie.adjoint import small_adjoint
from sek3.lie.group import (
    GroupElement,
    Side,
    TangentLike,
    TangentVector,
    as_tangent,
    compose,
    exp,
    hat,
    vee,
)
from sek3.lie.jacobians import jacobian, jacobian_inverse

MAX_BCH_ORDER = 4


def _check_order(order: int) -> None:
    if not 1 <= order <= MAX_BCH_ORDER:
        raise UnsupportedOrderError(f"BCH order must be in 1..{MAX_BCH_ORDER}, got {order}")


def bch(xi1: TangentLike, xi2: TangentLike, order: int = MAX_BCH_ORDER) -> TangentVector:
    """``log(exp(xi1) exp(xi2))`` truncated after the terms of degree ``order``."""
    _check_order(order)
    xi1, xi2 = as_tangent(xi1), as_tangent(xi2)
    check_same_k(xi1.k, xi2.k)
    a, b = xi1.as_array(), xi2.as_array()
    out = a + b
    if order >= 2:
        ad1 = small_adjoint(xi1)
        ad1_b = ad1 @ b
        out = out + 0.5 * ad1_b
    if order >= 3:
        ad2 = small_adjoint(xi2)
        out = out + (ad1 @ ad1_b) / 12.0 + (ad2 @ (ad2 @ a)) / 12.0
    if order >= 4:
        out = out - (ad2 @ (ad1 @ ad1_b)) / 24.0
    return TangentVector.from_array(out)


def bch_via_commutators(xi1: TangentLike, xi2: TangentLike, order: int = MAX_BCH_ORDER) -> TangentVector:
    """Same truncation as :func:`bch`, evaluated with matrix commutators of ``hat``."""
    _check_order(order)
    xi1, xi2 = as_tangent(xi1), as_tangent(xi2)
    check_same_k(xi1.k, xi2.k)

    def comm(x, y):
        return x @ y - y @ x

    x, y = hat(xi1), hat(xi2)
    s = x + y
    if order >= 2:
        xy = comm(x, y)
        s = s + 0.5 * xy
    if order >= 3:
        s = s + comm(x, xy) / 12.0 - comm(y, xy) / 12.0
    if order >= 4:
        s = s - comm(y, comm(x, xy)) / 24.0
    return vee(s)


def bch_first_order(
    xi1: TangentLike,
    xi2: TangentLike,
    which_small: Literal["first", "second"] = "first",
) -> TangentVector:
    """Linearized BCH: ``J_l(xi2)^-1 xi1 + xi2`` when ``xi1`` is small,
    ``xi1 + J_r(xi1)^-1 xi2`` when ``xi2`` is."""
    xi1, xi2 = as_tangent(xi1), as_tangent(xi2)
    check_same_k(xi1.k, xi2.k)
    if which_small == "first":
        return jacobian_inverse(xi2, Side.LEFT) @ xi1 + xi2
    if which_small == "second":
        return xi1 + jacobian_inverse(xi1, Side.RIGHT) @ xi2
    raise ValueError(f"which_small must be 'first' or 'second', got {which_small!r}")


def perturb(xi: TangentLike, delta: TangentLike, side: Side | str = Side.LEFT) -> GroupElement:
    """First-order factorization of ``exp(xi + delta)`` into a perturbation times ``exp(xi)``."""
    side = Side(side)
    xi, delta = as_tangent(xi), as_tangent(delta)
    check_same_k(xi.k, delta.k)
    step = exp(jacobian(xi, side) @ delta)
    if side is Side.LEFT:
        return compose(step, exp(xi))
    return compose(exp(xi), step)


def group_difference(xi: TangentLike, delta: TangentLike, side: Side | str = Side.RIGHT) -> TangentVector:
    """Linearized ``log(exp(xi)^-1 exp(xi + delta))`` (right) or
    ``log(exp(xi + delta) exp(xi)^-1)`` (left)."""
    side = Side(side)
    xi, delta = as_tangent(xi), as_tangent(delta)
    check_same_k(xi.k, delta.k)
    return jacobian(xi, side) @ delta
