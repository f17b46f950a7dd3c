"""Distances, inner products, the invariant volume element, Monte-Carlo
integration over SE_K(3) and interpolation between elements."""
import logging
from typing import Callable, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from sek3.core.config import settings
from sek3.core.errors import DimensionMismatchError, InvalidBoxError, check_same_k
from sek3.core.random import standard_normal_rows, uniform_rows
from sek3.lie.adjoint import small_adjoint
from sek3.lie.bch import bch_first_order
from sek3.lie.group import (
    GroupElement,
    Side,
    TangentLike,
    as_tangent,
    compose,
    exp,
    hat,
    inverse,
    log,
)

logger = logging.getLogger(__name__)


class WeightSpec(BaseModel):
    """Weights of the trace-form inner products.

    ``c`` and ``d`` weight the (K+3)-square algebra matrices, ``a`` and ``b``
    the 3(K+1)-square adjoint matrices. Unset ``d`` means all ones, unset
    ``b`` all zeros; with the defaults both trace forms equal ``xi1 . xi2``.
    """

    c: float = 0.5
    d: Optional[List[float]] = None
    a: float = 0.5
    b: Optional[List[float]] = None

    def hat_weights(self, k: int) -> np.ndarray:
        d = np.ones(k) if self.d is None else np.asarray(self.d, dtype=float)
        if d.shape != (k,):
            raise DimensionMismatchError(f"d needs {k} weights, got {d.size}")
        return np.diag(np.concatenate([np.full(3, self.c), d]))

    def adjoint_weights(self, k: int) -> np.ndarray:
        b = np.zeros(k) if self.b is None else np.asarray(self.b, dtype=float)
        if b.shape != (k,):
            raise DimensionMismatchError(f"b needs {k} weights, got {b.size}")
        return np.diag(np.repeat(np.concatenate([[self.a], b]), 3))


def distance(g1: GroupElement, g2: GroupElement, side: Side | str = Side.LEFT) -> float:
    """``||log(g1^-1 g2)||`` (left-invariant) or ``||log(g2 g1^-1)||`` (right-invariant)."""
    side = Side(side)
    check_same_k(g1.k, g2.k)
    if side is Side.LEFT:
        quotient = compose(inverse(g1), g2)
    else:
        quotient = compose(g2, inverse(g1))
    return log(quotient).norm()


def inner_product(xi1: TangentLike, xi2: TangentLike) -> float:
    xi1, xi2 = as_tangent(xi1), as_tangent(xi2)
    check_same_k(xi1.k, xi2.k)
    return float(xi1.as_array() @ xi2.as_array())


def trace_inner_product(
    xi1: TangentLike,
    xi2: TangentLike,
    weights: Optional[WeightSpec] = None,
    form: Literal["hat", "adjoint"] = "hat",
) -> float:
    """``tr(A W B^T)`` with ``A, B`` the algebra (``hat``) or adjoint matrices.

    The second factor is transposed; without it the adjoint form drops the
    translation terms and changes sign.
    """
    xi1, xi2 = as_tangent(xi1), as_tangent(xi2)
    k = check_same_k(xi1.k, xi2.k)
    weights = weights or WeightSpec()
    if form == "hat":
        a, b, w = hat(xi1), hat(xi2), weights.hat_weights(k)
    elif form == "adjoint":
        a, b, w = small_adjoint(xi1), small_adjoint(xi2), weights.adjoint_weights(k)
    else:
        raise ValueError(f"form must be 'hat' or 'adjoint', got {form!r}")
    return float(np.trace(a @ w @ b.T))


def _volume_factor(theta, k: int) -> np.ndarray:
    # sin(x)/x with x = theta/2 is np.sinc(theta / (2 pi))
    return np.sinc(np.asarray(theta, dtype=float) / (2.0 * np.pi)) ** (2 * (k + 1))


def volume_element(xi: TangentLike) -> float:
    """``|det J| = (sin(theta/2) / (theta/2)) ** (2(K+1))``."""
    xi = as_tangent(xi)
    return float(_volume_factor(xi.theta, xi.k))


def _check_boxes(boxes, k: int) -> tuple[np.ndarray, np.ndarray]:
    boxes = list(boxes or [])
    if len(boxes) != k:
        raise InvalidBoxError(f"need one bounding box per translation (K={k}), got {len(boxes)}")
    lo = np.zeros((k, 3))
    hi = np.zeros((k, 3))
    for i, box in enumerate(boxes):
        try:
            lower, upper = box
        except (TypeError, ValueError) as exc:
            raise InvalidBoxError(f"box {i} must be a (lower, upper) pair") from exc
        lo[i] = np.broadcast_to(np.asarray(lower, dtype=float), 3)
        hi[i] = np.broadcast_to(np.asarray(upper, dtype=float), 3)
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        raise InvalidBoxError("box bounds must be finite")
    if np.any(hi <= lo):
        raise InvalidBoxError("every box needs lower < upper in all three axes")
    return lo, hi


def sample_chart(k: int, n: int, seed: int, lo: np.ndarray, hi: np.ndarray, start: int = 0) -> np.ndarray:
    """Coordinates with ``phi`` uniform in the radius-pi ball and ``t_k`` uniform in the boxes.

    Row ``i`` depends only on ``(seed, start + i)``.
    """
    direction = standard_normal_rows(seed, n, 3, start=start, stream=0)
    norms = np.linalg.norm(direction, axis=1, keepdims=True)
    direction = direction / np.where(norms > 0.0, norms, 1.0)
    radius = np.pi * np.cbrt(uniform_rows(seed, n, 1, start=start, stream=1))
    phi = radius * direction
    u = uniform_rows(seed, n, 3 * k, start=start, stream=2).reshape(n, k, 3)
    t = lo + u * (hi - lo)
    return np.concatenate([phi, t.reshape(n, 3 * k)], axis=1)


def integrate_mc(
    f: Callable,
    k: int,
    samples: int,
    seed: int,
    boxes: Sequence = (),
    on_coordinates: bool = False,
) -> float:
    """Monte-Carlo estimate of ``int f |det J| dxi`` over ``{|phi| < pi} x boxes``.

    ``f`` takes a GroupElement, or with ``on_coordinates=True`` an ``(N, 3(K+1))``
    coordinate batch returning ``N`` values. Draws are processed in blocks of
    ``settings.SAMPLE_CHUNK``; the result depends only on ``(seed, samples)``.
    """
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    lo, hi = _check_boxes(boxes, k)
    volume = 4.0 / 3.0 * np.pi**4 * float(np.prod(hi - lo))

    total = 0.0
    chunk = settings.SAMPLE_CHUNK
    for start in range(0, samples, chunk):
        n = min(chunk, samples - start)
        xis = sample_chart(k, n, seed, lo, hi, start=start)
        if on_coordinates:
            values = np.asarray(f(xis), dtype=float).reshape(n)
        else:
            values = np.array([f(exp(xi)) for xi in xis], dtype=float)
        theta = np.linalg.norm(xis[:, :3], axis=1)
        total += float(np.sum(values * _volume_factor(theta, k)))
    estimate = volume * total / samples
    logger.debug("integrate_mc: %d samples, estimate %.6g", samples, estimate)
    return estimate


def interpolate(g1: GroupElement, g2: GroupElement, alpha: float, approximate: bool = False) -> GroupElement:
    """Point at fraction ``alpha`` on ``exp(alpha log(g2 g1^-1)) g1``.

    With ``approximate=True`` returns ``exp(alpha J_l(xi1)^-1 xi21 + xi1)``
    instead, the first-order coordinate form of the same curve.
    """
    check_same_k(g1.k, g2.k)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    xi21 = log(compose(g2, inverse(g1)))
    if approximate:
        return exp(bch_first_order(alpha * xi21, log(g1), which_small="first"))
    return compose(exp(alpha * xi21), g1)

