"""Continuous-time motion on SE_K(3).

Velocities are held constant over each step and integrated with exact
exponential steps. A left (world-frame) velocity moves ``T`` as
``dT/dt = hat(w_l) T``, a right (body-frame) one as ``dT/dt = T hat(w_r)``.
Perturbations are left-multiplicative: ``T' = exp(dxi) T``.
"""
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from sek3.core.errors import FrameMismatchError, check_same_k
from sek3.lie.adjoint import adjoint, adjoint_inverse, exp_adjoint, small_adjoint
from sek3.lie.group import GroupElement, Side, TangentLike, TangentVector, as_tangent, compose, exp
from sek3.lie.jacobians import jacobian, jacobian_inverse


@dataclass(frozen=True, eq=False)
class GeneralizedVelocity:
    frame: Side
    omega: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        omega = np.array(self.omega, dtype=float).reshape(3)
        nu = np.array(self.nu, dtype=float).reshape(-1, 3)
        omega.setflags(write=False)
        nu.setflags(write=False)
        object.__setattr__(self, "frame", Side(self.frame))
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "nu", nu)

    @property
    def k(self) -> int:
        return self.nu.shape[0]

    @classmethod
    def from_array(cls, vec, frame: Side | str) -> "GeneralizedVelocity":
        xi = TangentVector.from_array(vec)
        return cls(Side(frame), xi.phi, xi.t)

    @classmethod
    def zeros(cls, k: int, frame: Side | str = Side.LEFT) -> "GeneralizedVelocity":
        return cls(Side(frame), np.zeros(3), np.zeros((k, 3)))

    def as_tangent(self) -> TangentVector:
        return TangentVector(self.omega, self.nu)

    def as_array(self) -> np.ndarray:
        return self.as_tangent().as_array()


def convert_velocity(v: GeneralizedVelocity, g: GroupElement) -> GeneralizedVelocity:
    """Switch frames: ``w_l = Ad(g) w_r`` and ``w_r = Ad(g)^-1 w_l``."""
    check_same_k(v.k, g.k, what="velocity and element")
    if v.frame is Side.RIGHT:
        return GeneralizedVelocity.from_array(adjoint(g) @ v.as_array(), Side.LEFT)
    return GeneralizedVelocity.from_array(adjoint_inverse(g) @ v.as_array(), Side.RIGHT)


def propagate(g0: GroupElement, v: GeneralizedVelocity, dt: float) -> GroupElement:
    """Exact step for a velocity held constant over ``dt``."""
    if dt < 0:
        raise ValueError(f"dt must be non-negative, got {dt}")
    check_same_k(g0.k, v.k, what="element and velocity")
    step = exp(dt * v.as_tangent())
    if v.frame is Side.LEFT:
        return compose(step, g0)
    return compose(g0, step)


def trajectory(
    g0: GroupElement,
    velocities: Sequence[GeneralizedVelocity],
    dt: Union[float, Sequence[float]],
) -> list[GroupElement]:
    """States ``[g0, g1, ...]`` after each piecewise-constant velocity.

    ``dt`` is one step length for every velocity or one duration per velocity.
    """
    durations = np.broadcast_to(np.asarray(dt, dtype=float), (len(velocities),))
    states = [g0]
    for v, h in zip(velocities, durations):
        states.append(propagate(states[-1], v, float(h)))
    return states


def xi_dot(xi: TangentLike, v: GeneralizedVelocity) -> TangentVector:
    """Coordinate rate ``J^-1(xi) w`` with the Jacobian on the side of ``v.frame``."""
    xi = as_tangent(xi)
    check_same_k(xi.k, v.k, what="coordinates and velocity")
    return jacobian_inverse(xi, v.frame) @ v.as_tangent()


def _require_left(v: GeneralizedVelocity) -> None:
    if v.frame is not Side.LEFT:
        raise FrameMismatchError("perturbation kinematics are defined for left velocities")


def perturbation_transition(v_left: GeneralizedVelocity, dt: float) -> np.ndarray:
    """State-transition matrix ``exp_adjoint(dt w_l)`` of ``d(dxi)/dt = ad(w_l) dxi``."""
    _require_left(v_left)
    return exp_adjoint(dt * v_left.as_tangent())


def propagate_perturbation(
    v_left: GeneralizedVelocity,
    dt: float,
    delta0: TangentLike,
    delta_omega: Optional[TangentLike] = None,
) -> TangentVector:
    """``Phi(dt) dxi0 + dt J_l(dt w_l) dw`` for a forcing ``dw`` held constant over the step."""
    _require_left(v_left)
    delta0 = as_tangent(delta0)
    check_same_k(delta0.k, v_left.k, what="perturbation and velocity")
    out = perturbation_transition(v_left, dt) @ delta0.as_array()
    if delta_omega is not None:
        delta_omega = as_tangent(delta_omega)
        check_same_k(delta_omega.k, v_left.k, what="forcing and velocity")
        out = out + dt * (jacobian(dt * v_left.as_tangent(), Side.LEFT) @ delta_omega.as_array())
    return TangentVector.from_array(out)


def integrate_perturbation(
    velocities: Sequence[GeneralizedVelocity],
    dt: Union[float, Sequence[float]],
    delta0: TangentLike,
    delta_omegas: Optional[Sequence[TangentLike]] = None,
) -> list[TangentVector]:
    durations = np.broadcast_to(np.asarray(dt, dtype=float), (len(velocities),))
    states = [as_tangent(delta0)]
    for i, (v, h) in enumerate(zip(velocities, durations)):
        forcing = None if delta_omegas is None else delta_omegas[i]
        states.append(propagate_perturbation(v, float(h), states[-1], forcing))
    return states


def verify_jacobian_identity(
    xi_path: Callable[[float], TangentLike],
    t: float,
    h: float = 1e-5,
) -> float:
    """Frobenius residual of ``dJ/dt - ad(w) J - d(w)/d(xi)`` along ``xi_path`` at ``t``.

    Uses the left Jacobian with ``w = J(xi) dxi/dt``; ``d(w)/d(xi)`` holds
    ``dxi/dt`` fixed. All derivatives are central differences with step ``h``.
    """
    xi0 = as_tangent(xi_path(t)).as_array()
    xi_plus = as_tangent(xi_path(t + h)).as_array()
    xi_minus = as_tangent(xi_path(t - h)).as_array()
    rate = (xi_plus - xi_minus) / (2.0 * h)

    def jl(x):
        return jacobian(x, Side.LEFT).matrix

    j0 = jl(xi0)
    j_dot = (jl(xi_plus) - jl(xi_minus)) / (2.0 * h)
    omega = j0 @ rate

    n = xi0.size
    d_omega = np.zeros((n, n))
    for i in range(n):
        step = np.zeros(n)
        step[i] = h
        d_omega[:, i] = (jl(xi0 + step) @ rate - jl(xi0 - step) @ rate) / (2.0 * h)

    residual = j_dot - small_adjoint(omega) @ j0 - d_omega
    return float(np.linalg.norm(residual))
