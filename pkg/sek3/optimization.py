"""Derivatives of group actions and a Gauss-Newton point registration solver.

A :class:`PointBlock` is the ``(K+3) x K`` homogeneous block whose column ``m``
is the point ``p_m`` over the unit vector ``e_m``; an element acting on it
moves point ``m`` to ``R p_m + p^(g)_m``. Several blocks can be stacked to
observe the same element, which a single block cannot fully determine.
"""
import logging
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from sek3.core.config import settings
from sek3.core.errors import (
    DimensionMismatchError,
    NonDecreasingCostError,
    RankDeficientError,
    check_same_k,
)
from sek3.lie.adjoint import adjoint, exp_adjoint, small_adjoint
from sek3.lie.group import GroupElement, TangentLike, as_tangent, compose, exp
from sek3.lie.jacobians import jacobian
from sek3.lie.so3 import hat3

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PointBlock:
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 3)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def k(self) -> int:
        return self.points.shape[0]

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.k + 3, self.k))
        m[:3, :] = self.points.T
        m[3:, :] = np.eye(self.k)
        return m


@dataclass(frozen=True, eq=False)
class Residual:
    value: float
    gradient: np.ndarray


@dataclass(frozen=True, eq=False)
class Observation:
    m: int
    y: np.ndarray
    w: float = 1.0
    block: int = 0


class FitResult(NamedTuple):
    element: GroupElement
    cost: float
    iterations: int
    # cost at the start and after every accepted step
    history: tuple[float, ...] = ()


def transform_points(g: GroupElement, block: PointBlock) -> np.ndarray:
    """Rows are the transformed points ``R p_m + p^(g)_m``."""
    check_same_k(g.k, block.k, what="element and point block")
    return block.points @ g.r.T + g.p


def d_adjoint_action_left_perturbation(g: GroupElement, x) -> np.ndarray:
    """Derivative of ``exp_adjoint(delta) Ad(g) x`` in ``delta`` at zero: ``-ad(Ad(g) x)``."""
    return -small_adjoint(adjoint(g) @ np.asarray(x, dtype=float))


def d_adjoint_action_algebra(xi: TangentLike, x) -> np.ndarray:
    """Derivative of ``exp_adjoint(xi) x`` in ``xi``: ``-ad(exp_adjoint(xi) x) J_l(xi)``."""
    xi = as_tangent(xi)
    return -small_adjoint(exp_adjoint(xi) @ np.asarray(x, dtype=float)) @ jacobian(xi, "left").matrix


def _point_jacobian(q: np.ndarray, m: int, k: int) -> np.ndarray:
    e = np.zeros((3, 3 * (k + 1)))
    e[:, :3] = -hat3(q)
    e[:, 3 * (m + 1):3 * (m + 2)] = np.eye(3)
    return e


def d_point_action_left_perturbation(g: GroupElement, block: PointBlock, stacked: bool = False):
    """Per-point ``3 x 3(K+1)`` Jacobians ``[-(R p_m + p_m)^ | I_3 in slot m]``."""
    q = transform_points(g, block)
    jacobians = [_point_jacobian(q[m], m, g.k) for m in range(g.k)]
    return np.vstack(jacobians) if stacked else jacobians


def d_point_action_algebra(xi: TangentLike, block: PointBlock, stacked: bool = False):
    """Per-point Jacobians in the algebra parameter, chained through ``J_l(xi)``."""
    xi = as_tangent(xi)
    jl = jacobian(xi, "left").matrix
    jacobians = [e @ jl for e in d_point_action_left_perturbation(exp(xi), block)]
    return np.vstack(jacobians) if stacked else jacobians


BlocksArg = Union[PointBlock, Sequence[PointBlock]]


def _as_blocks(blocks: BlocksArg) -> list[PointBlock]:
    if isinstance(blocks, PointBlock):
        return [blocks]
    return list(blocks)


def _gather(observations: Sequence[Observation], blocks: list[PointBlock], k: int):
    n = len(observations)
    points = np.zeros((n, 3))
    slots = np.zeros(n, dtype=int)
    targets = np.zeros((n, 3))
    weights = np.zeros(n)
    for i, obs in enumerate(observations):
        if not 0 <= obs.block < len(blocks):
            raise DimensionMismatchError(f"observation {i} refers to block {obs.block}, have {len(blocks)}")
        if not 0 <= obs.m < k:
            raise DimensionMismatchError(f"observation {i} refers to point {obs.m}, K = {k}")
        y = np.asarray(obs.y, dtype=float)
        if y.shape != (3,):
            raise DimensionMismatchError(f"observation {i} target must be a 3-vector")
        points[i] = blocks[obs.block].points[obs.m]
        slots[i] = obs.m
        targets[i] = y
        weights[i] = obs.w
    return points, slots, targets, weights


def _residuals(g: GroupElement, points, slots, targets) -> np.ndarray:
    return points @ g.r.T + g.p[slots] - targets


def _cost(r: np.ndarray, weights: np.ndarray) -> float:
    return 0.5 * float(np.sum(weights * np.sum(r * r, axis=1)))


def _stacked_jacobian(g: GroupElement, points, slots) -> np.ndarray:
    q = points @ g.r.T + g.p[slots]
    n = q.shape[0]
    e = np.zeros((n, 3, 3 * (g.k + 1)))
    e[:, :, :3] = -hat3(q)
    for i, m in enumerate(slots):
        e[i, :, 3 * (m + 1):3 * (m + 2)] = np.eye(3)
    return e


def evaluate_cost(g: GroupElement, observations: Sequence[Observation], blocks: BlocksArg) -> Residual:
    """Cost ``1/2 sum w |q_m - y|^2`` and its gradient in a left perturbation of ``g``."""
    blocks = _as_blocks(blocks)
    for block in blocks:
        check_same_k(g.k, block.k, what="element and point block")
    points, slots, targets, weights = _gather(observations, blocks, g.k)
    r = _residuals(g, points, slots, targets)
    e = _stacked_jacobian(g, points, slots)
    gradient = np.einsum("nij,n,ni->j", e, weights, r)
    return Residual(_cost(r, weights), gradient)


def gauss_newton_fit(
    observations: Sequence[Observation],
    blocks: BlocksArg,
    init: GroupElement,
    max_iters: int = 50,
    tol: float = 1e-10,
) -> FitResult:
    """Minimize the weighted point cost with left updates ``g <- exp(delta) g``.

    Each step solves the normal equations built from the left-perturbation
    point Jacobians and is halved until the cost does not increase.
    """
    blocks = _as_blocks(blocks)
    if not blocks:
        raise DimensionMismatchError("need at least one point block")
    for block in blocks:
        check_same_k(init.k, block.k, what="initial element and point block")
    if not observations:
        raise RankDeficientError("no observations", condition=float("inf"))
    points, slots, targets, weights = _gather(observations, blocks, init.k)

    g = init
    r = _residuals(g, points, slots, targets)
    cost = _cost(r, weights)
    iterations = 0
    history = [cost]
    for _ in range(max_iters):
        e = _stacked_jacobian(g, points, slots)
        h = np.einsum("nij,n,nik->jk", e, weights, e)
        b = -np.einsum("nij,n,ni->j", e, weights, r)
        condition = float(np.linalg.cond(h))
        if not np.isfinite(condition) or condition > settings.GN_CONDITION_LIMIT:
            raise RankDeficientError(
                f"normal equations are rank deficient (condition number {condition:.3e})",
                condition=condition,
            )
        delta = np.linalg.solve(h, b)
        if np.linalg.norm(delta) < tol:
            break

        scale = 1.0
        for halving in range(settings.GN_MAX_HALVINGS + 1):
            candidate = compose(exp(scale * delta), g)
            r_new = _residuals(candidate, points, slots, targets)
            cost_new = _cost(r_new, weights)
            if cost_new <= cost * (1.0 + 1e-12):
                break
            scale *= 0.5
            logger.debug("step halving %d: cost %.6e > %.6e", halving + 1, cost_new, cost)
        else:
            raise NonDecreasingCostError(
                f"cost did not decrease after {settings.GN_MAX_HALVINGS} step halvings (cost {cost:.6e})"
            )
        g, r, cost = candidate, r_new, cost_new
        iterations += 1
        history.append(cost)
        logger.debug("iteration %d: cost %.6e, |delta| %.3e", iterations, cost, np.linalg.norm(delta))
    else:
        logger.warning("Gauss-Newton stopped at max_iters=%d (cost %.6e)", max_iters, cost)
    return FitResult(g, cost, iterations, tuple(history))


def synthesize_problem(
    k: int,
    seed: int,
    n_blocks: int = 3,
    noise: float = 0.0,
    scale: float = 1.0,
):
    """Random ground-truth element, point blocks and observations of every point."""
    if k < 1:
        raise ValueError("registration needs at least one translation slot (K >= 1)")
    rng = np.random.default_rng(seed)
    phi = rng.normal(size=3)
    phi *= rng.uniform(0.1, 1.5) / np.linalg.norm(phi)
    xi = np.concatenate([phi, scale * rng.normal(size=3 * k)])
    g_star = exp(xi)
    blocks = [PointBlock(scale * rng.normal(size=(k, 3))) for _ in range(n_blocks)]
    observations = []
    for b, block in enumerate(blocks):
        moved = transform_points(g_star, block)
        for m in range(k):
            y = moved[m] + noise * rng.normal(size=3)
            observations.append(Observation(m=m, y=y, w=1.0, block=b))
    return g_star, blocks, observations
