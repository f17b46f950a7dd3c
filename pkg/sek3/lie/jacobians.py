"""Left and right group Jacobians of SE_K(3).

The right-side quantities are always evaluated on ``-xi``:
``J_r(xi) = J_l(-xi)`` and ``Q_r(xi) = Q_l(-xi)``.
"""
from dataclasses import dataclass

import numpy as np

from sek3.core.config import settings
from sek3.lie.adjoint import block_layout, small_adjoint
from sek3.lie.group import Side, TangentLike, TangentVector, as_tangent
from sek3.lie.so3 import coefficient, hat3, jl_inv_so3, jl_so3


@dataclass(frozen=True, eq=False)
class GroupJacobian:
    matrix: np.ndarray
    side: Side

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __matmul__(self, other):
        if isinstance(other, TangentVector):
            return TangentVector.from_array(self.matrix @ other.as_array())
        return self.matrix @ np.asarray(other)

    def __rmatmul__(self, other):
        return np.asarray(other) @ self.matrix

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def q_block_left(phi, tk) -> np.ndarray:
    """Off-diagonal block coupling ``phi`` and one translation ``t_k``."""
    phi = np.asarray(phi, dtype=float)
    theta = float(np.linalg.norm(phi))
    small = settings.ADJOINT_SMALL_ANGLE
    a = coefficient(theta, lambda t: (t - np.sin(t)) / t**3,
                    lambda t: 1.0 / 6.0 - t**2 / 120.0 + t**4 / 5040.0, small)
    b = coefficient(theta, lambda t: (t**2 - 4.0 * np.sin(0.5 * t)**2) / (2.0 * t**4),
                    lambda t: 1.0 / 24.0 - t**2 / 720.0 + t**4 / 40320.0, small)
    c = coefficient(theta, lambda t: (2.0 * t - 3.0 * np.sin(t) + t * np.cos(t)) / (2.0 * t**5),
                    lambda t: 1.0 / 120.0 - t**2 / 2520.0 + t**4 / 120960.0, small)

    ph = hat3(phi)
    th = hat3(tk)
    ph2 = ph @ ph
    pth = ph @ th @ ph
    return (
        0.5 * th
        + a * (ph @ th + th @ ph + pth)
        + b * (ph2 @ th + th @ ph2 - 3.0 * pth)
        + c * (pth @ ph + ph @ pth)
    )


def jacobian_blocks(xi: TangentLike, side: Side | str = Side.LEFT) -> GroupJacobian:
    """Jacobian assembled from ``J`` on the diagonal and the Q-blocks in the first column."""
    side = Side(side)
    xi = as_tangent(xi)
    arg = xi if side is Side.LEFT else -xi
    q = np.stack([q_block_left(arg.phi, tk) for tk in arg.t]) if arg.k else np.zeros((0, 3, 3))
    return GroupJacobian(block_layout(jl_so3(arg.phi), q), side)


def jacobian_quartic_coefficients(theta: float) -> tuple[float, float, float, float]:
    small = settings.ADJOINT_SMALL_ANGLE
    a1 = coefficient(theta, lambda t: (8.0 * np.sin(0.5 * t)**2 - t * np.sin(t)) / (2.0 * t**2),
                     lambda t: 0.5 - t**4 / 720.0 + t**6 / 20160.0, small)
    a2 = coefficient(theta, lambda t: (4.0 * t - 5.0 * np.sin(t) + t * np.cos(t)) / (2.0 * t**3),
                     lambda t: 1.0 / 6.0 - t**4 / 5040.0 + t**6 / 181440.0, small)
    a3 = coefficient(theta, lambda t: (4.0 * np.sin(0.5 * t)**2 - t * np.sin(t)) / (2.0 * t**4),
                     lambda t: 1.0 / 24.0 - t**2 / 360.0 + t**4 / 13440.0, small)
    a4 = coefficient(theta, lambda t: (2.0 * t - 3.0 * np.sin(t) + t * np.cos(t)) / (2.0 * t**5),
                     lambda t: 1.0 / 120.0 - t**2 / 2520.0 + t**4 / 120960.0, small)
    return float(a1), float(a2), float(a3), float(a4)


def jacobian_quartic(xi: TangentLike, side: Side | str = Side.LEFT) -> GroupJacobian:
    """Jacobian as a single quartic polynomial in ``small_adjoint(xi)``."""
    side = Side(side)
    xi = as_tangent(xi)
    arg = xi if side is Side.LEFT else -xi
    ad = small_adjoint(arg)
    ad2 = ad @ ad
    a1, a2, a3, a4 = jacobian_quartic_coefficients(arg.theta)
    m = np.eye(arg.dim) + a1 * ad + a2 * ad2 + a3 * (ad2 @ ad) + a4 * (ad2 @ ad2)
    return GroupJacobian(m, side)


def jacobian(xi: TangentLike, side: Side | str = Side.LEFT) -> GroupJacobian:
    xi = as_tangent(xi)
    if xi.k >= settings.QUARTIC_JACOBIAN_MIN_K:
        return jacobian_quartic(xi, side)
    return jacobian_blocks(xi, side)


def jacobian_inverse(xi: TangentLike, side: Side | str = Side.LEFT) -> GroupJacobian:
    """Block inverse: ``J^-1`` on the diagonal, ``-J^-1 Q J^-1`` in the first column.

    Raises SingularJacobianError within ``SINGULAR_MARGIN`` of a nonzero
    multiple of 2*pi.
    """
    side = Side(side)
    xi = as_tangent(xi)
    arg = xi if side is Side.LEFT else -xi
    j_inv = jl_inv_so3(arg.phi)
    column = np.stack([-j_inv @ q_block_left(arg.phi, tk) @ j_inv for tk in arg.t]) if arg.k \
        else np.zeros((0, 3, 3))
    return GroupJacobian(block_layout(j_inv, column), side)


def jacobian_determinant(xi: TangentLike) -> float:
    """``(2 (1 - cos theta) / theta^2) ** (K+1)``, the same for both sides."""
    xi = as_tangent(xi)
    base = coefficient(xi.theta, lambda t: (2.0 * np.sin(0.5 * t) / t)**2,
                       lambda t: 1.0 - t**2 / 12.0 + t**4 / 360.0, settings.SMALL_ANGLE)
    return float(base) ** (xi.k + 1)
