"""Adjoint machinery of SE_K(3).

``adjoint(g)`` is the ``3(K+1)`` square matrix with ``R`` repeated on the
block diagonal and ``(p_k)^ R`` in the first block column; ``small_adjoint``
has the same layout with ``phi^`` and ``(t_k)^``.
"""
import numpy as np

from sek3.core.config import settings
from sek3.core.errors import MalformedAdjointError, NotSkewError
from sek3.lie.group import GroupElement, TangentLike, TangentVector, as_tangent
from sek3.lie.so3 import coefficient, hat3, is_rotation, jl_inv_so3, log_so3, vee3


def block_layout(diag: np.ndarray, column: np.ndarray) -> np.ndarray:
    """Assemble ``diag`` on the block diagonal and ``column[k]`` in block (k+1, 0)."""
    k = column.shape[0]
    n = 3 * (k + 1)
    m = np.zeros((n, n))
    for i in range(k + 1):
        m[3 * i:3 * i + 3, 3 * i:3 * i + 3] = diag
    for i in range(k):
        m[3 * i + 3:3 * i + 6, :3] = column[i]
    return m


def adjoint(g: GroupElement) -> np.ndarray:
    return block_layout(g.r, hat3(g.p) @ g.r)


def adjoint_inverse(g: GroupElement) -> np.ndarray:
    """``Ad`` of the inverse element, assembled directly: ``R^T`` and ``-R^T (p_k)^``."""
    return block_layout(g.r.T, -g.r.T @ hat3(g.p))


def small_adjoint(xi: TangentLike) -> np.ndarray:
    xi = as_tangent(xi)
    return block_layout(hat3(xi.phi), hat3(xi.t))


def exp_adjoint_coefficients(theta: float) -> tuple[float, float, float, float]:
    """Coefficients of ``I + c1 L + c2 L^2 + c3 L^3 + c4 L^4``."""
    small = settings.ADJOINT_SMALL_ANGLE
    c1 = coefficient(theta, lambda t: (3.0 * np.sin(t) - t * np.cos(t)) / (2.0 * t),
                     lambda t: 1.0 - t**4 / 120.0 + t**6 / 2520.0, small)
    c2 = coefficient(theta, lambda t: (8.0 * np.sin(0.5 * t)**2 - t * np.sin(t)) / (2.0 * t**2),
                     lambda t: 0.5 - t**4 / 720.0 + t**6 / 20160.0, small)
    c3 = coefficient(theta, lambda t: (np.sin(t) - t * np.cos(t)) / (2.0 * t**3),
                     lambda t: 1.0 / 6.0 - t**2 / 60.0 + t**4 / 1680.0, small)
    c4 = coefficient(theta, lambda t: (4.0 * np.sin(0.5 * t)**2 - t * np.sin(t)) / (2.0 * t**4),
                     lambda t: 1.0 / 24.0 - t**2 / 360.0 + t**4 / 13440.0, small)
    return float(c1), float(c2), float(c3), float(c4)


def exp_adjoint(xi: TangentLike) -> np.ndarray:
    """Closed-form exponential of ``small_adjoint(xi)``; equals ``adjoint(exp(xi))``."""
    xi = as_tangent(xi)
    ad = small_adjoint(xi)
    ad2 = ad @ ad
    c1, c2, c3, c4 = exp_adjoint_coefficients(xi.theta)
    return np.eye(xi.dim) + c1 * ad + c2 * ad2 + c3 * (ad2 @ ad) + c4 * (ad2 @ ad2)


def log_adjoint(a) -> TangentVector:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 3 or a.shape[0] % 3:
        raise MalformedAdjointError(f"expected a 3(K+1) square matrix, got {a.shape}")
    k = a.shape[0] // 3 - 1
    tol = settings.STRUCTURE_TOL * max(1.0, float(np.max(np.abs(a))))
    r = a[:3, :3]
    if not is_rotation(r):
        raise MalformedAdjointError("diagonal block is not a rotation")

    expected = block_layout(r, a[3:, :3].reshape(k, 3, 3))
    if np.max(np.abs(a - expected)) > tol:
        raise MalformedAdjointError("matrix does not have the block structure of Ad")

    try:
        p = vee3(a[3:, :3].reshape(k, 3, 3) @ r.T, tol=tol)
    except NotSkewError as exc:
        raise MalformedAdjointError(f"first block column is not (p_k)^ R: {exc}") from exc
    phi = log_so3(r)
    return TangentVector(phi, p @ jl_inv_so3(phi).T)
