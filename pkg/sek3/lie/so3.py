"""Rotation-group primitives.

Every function accepts a single vector ``(3,)`` / matrix ``(3, 3)`` or a stack
with leading batch axes ``(..., 3)`` / ``(..., 3, 3)`` and broadcasts over them.
Trigonometric coefficients switch to their Taylor polynomials below
``settings.SMALL_ANGLE`` so nothing is ever evaluated as 0/0.
"""
import logging
from typing import Callable

import numpy as np

from sek3.core.config import settings
from sek3.core.errors import NotSkewError, SingularJacobianError

logger = logging.getLogger(__name__)

_I3 = np.eye(3)


def coefficient(
    theta,
    closed: Callable[[np.ndarray], np.ndarray],
    taylor: Callable[[np.ndarray], np.ndarray],
    small: float,
) -> np.ndarray:
    """Evaluate ``closed(theta)``, or ``taylor(theta)`` where ``theta < small``."""
    theta = np.asarray(theta, dtype=float)
    is_small = theta < small
    safe = np.where(is_small, 1.0, theta)
    return np.where(is_small, taylor(theta), closed(safe))


def angle(phi) -> np.ndarray:
    return np.linalg.norm(np.asarray(phi, dtype=float), axis=-1)


def hat3(v) -> np.ndarray:
    """Skew matrix with ``hat3(v) @ w == cross(v, w)``."""
    v = np.asarray(v, dtype=float)
    m = np.zeros(v.shape[:-1] + (3, 3))
    m[..., 0, 1] = -v[..., 2]
    m[..., 0, 2] = v[..., 1]
    m[..., 1, 0] = v[..., 2]
    m[..., 1, 2] = -v[..., 0]
    m[..., 2, 0] = -v[..., 1]
    m[..., 2, 1] = v[..., 0]
    return m


def _skew_part(m: np.ndarray) -> np.ndarray:
    return np.stack([m[..., 2, 1], m[..., 0, 2], m[..., 1, 0]], axis=-1)


def vee3(m, tol: float | None = None) -> np.ndarray:
    """Inverse of :func:`hat3`; rejects matrices that are not skew-symmetric."""
    m = np.asarray(m, dtype=float)
    tol = settings.STRUCTURE_TOL if tol is None else tol
    defect = np.linalg.norm(m + np.swapaxes(m, -1, -2), axis=(-2, -1))
    if np.any(defect > tol):
        raise NotSkewError(f"matrix is not skew-symmetric (||M + M^T||_F = {np.max(defect):.3e})")
    return _skew_part(m)


# sin(t)/t, (1 - cos t)/t^2, (t - sin t)/t^3 and the inverse-Jacobian coefficient;
# 1 - cos t is taken as 2 sin^2(t/2) throughout the closed forms
def _sinc(theta):
    return coefficient(theta, lambda t: np.sin(t) / t,
                       lambda t: 1.0 - t**2 / 6.0 + t**4 / 120.0, settings.SMALL_ANGLE)


def _cosc(theta):
    return coefficient(theta, lambda t: 2.0 * np.sin(0.5 * t)**2 / t**2,
                       lambda t: 0.5 - t**2 / 24.0 + t**4 / 720.0, settings.SMALL_ANGLE)


def _sinc3(theta):
    return coefficient(theta, lambda t: (t - np.sin(t)) / t**3,
                       lambda t: 1.0 / 6.0 - t**2 / 120.0 + t**4 / 5040.0, settings.SMALL_ANGLE)


def _inverse_coefficient(theta):
    # (1 - (t/2) cot(t/2)) / t^2, smooth through pi, singular at 2*pi
    return coefficient(theta, lambda t: (1.0 - 0.5 * t / np.tan(0.5 * t)) / t**2,
                       lambda t: 1.0 / 12.0 + t**2 / 720.0 + t**4 / 30240.0, settings.SMALL_ANGLE)


def is_rotation(r, tol: float | None = None) -> bool:
    r = np.asarray(r, dtype=float)
    tol = settings.ORTHOGONALITY_TOL if tol is None else tol
    defect = np.linalg.norm(np.swapaxes(r, -1, -2) @ r - _I3, axis=(-2, -1))
    det = np.linalg.det(r)
    return bool(np.all(defect <= tol) and np.all(np.abs(det - 1.0) <= tol))


def normalize_rotation(r) -> np.ndarray:
    """Nearest rotation matrix (polar factor through the SVD)."""
    u, _, vt = np.linalg.svd(np.asarray(r, dtype=float))
    d = np.sign(np.linalg.det(u @ vt))
    u[..., :, 2] *= d[..., None] if np.ndim(d) else d
    return u @ vt


def ensure_rotation(r) -> np.ndarray:
    """Re-orthonormalize ``r`` only when its orthogonality defect exceeds the tolerance."""
    r = np.asarray(r, dtype=float)
    defect = np.linalg.norm(np.swapaxes(r, -1, -2) @ r - _I3, axis=(-2, -1))
    if np.any(defect > settings.ORTHOGONALITY_TOL):
        logger.debug("re-orthonormalizing rotation (defect %.3e)", float(np.max(defect)))
        return normalize_rotation(r)
    return r


def exp_so3(phi) -> np.ndarray:
    """Rodrigues formula ``I + sin(t)/t phi^ + (1 - cos t)/t^2 phi^2``."""
    phi = np.asarray(phi, dtype=float)
    theta = angle(phi)
    h = hat3(phi)
    a = _sinc(theta)[..., None, None]
    b = _cosc(theta)[..., None, None]
    return ensure_rotation(_I3 + a * h + b * (h @ h))


def _log_near_pi(r: np.ndarray, theta: float) -> np.ndarray:
    # (R + R^T)/2 + I = (1 + cos t) I + (1 - cos t) u u^T: its dominant column is along u
    sym = 0.5 * (r + r.T) + _I3
    i = int(np.argmax(np.diag(sym)))
    u = sym[:, i] / np.linalg.norm(sym[:, i])
    s = 0.5 * _skew_part(r - r.T)
    j = int(np.argmax(np.abs(s)))
    if s[j] * u[j] < 0.0:
        u = -u
    return theta * u


def log_so3(r) -> np.ndarray:
    """Rotation vector with angle in ``[0, pi]``.

    At ``theta = pi`` the axis sign is fixed by the largest skew component of
    ``R``; when that component vanishes the axis keeps the sign of its
    dominant diagonal entry.
    """
    r = np.asarray(r, dtype=float)
    s = 0.5 * _skew_part(r - np.swapaxes(r, -1, -2))
    c = np.clip(0.5 * (np.trace(r, axis1=-2, axis2=-1) - 1.0), -1.0, 1.0)
    theta = np.arctan2(np.linalg.norm(s, axis=-1), c)
    near_pi = theta > np.pi - settings.NEAR_PI_MARGIN
    scale = coefficient(np.where(near_pi, 0.0, theta), lambda t: t / np.sin(t),
                        lambda t: 1.0 + t**2 / 6.0 + 7.0 * t**4 / 360.0, settings.SMALL_ANGLE)
    phi = scale[..., None] * s
    if np.any(near_pi):
        if phi.ndim == 1:
            phi = _log_near_pi(r, float(theta))
        else:
            for idx in zip(*np.nonzero(near_pi)):
                phi[idx] = _log_near_pi(r[idx], float(theta[idx]))
    return phi


def jl_so3(phi) -> np.ndarray:
    """Left Jacobian ``I + (1 - cos t)/t^2 phi^ + (t - sin t)/t^3 phi^2``."""
    phi = np.asarray(phi, dtype=float)
    theta = angle(phi)
    h = hat3(phi)
    return _I3 + _cosc(theta)[..., None, None] * h + _sinc3(theta)[..., None, None] * (h @ h)


def jr_so3(phi) -> np.ndarray:
    return jl_so3(-np.asarray(phi, dtype=float))


def check_invertible(theta) -> None:
    theta = np.asarray(theta, dtype=float)
    turns = np.round(theta / (2.0 * np.pi))
    distance = np.abs(theta - 2.0 * np.pi * turns)
    if np.any((turns >= 1) & (distance < settings.SINGULAR_MARGIN)):
        raise SingularJacobianError(
            f"Jacobian is singular at rotation angle {float(np.max(theta)):.9f} (multiple of 2*pi)"
        )


def jl_inv_so3(phi) -> np.ndarray:
    """Inverse left Jacobian ``I - phi^/2 + (1/t^2 - (1 + cos t)/(2 t sin t)) phi^2``."""
    phi = np.asarray(phi, dtype=float)
    theta = angle(phi)
    check_invertible(theta)
    h = hat3(phi)
    return _I3 - 0.5 * h + _inverse_coefficient(theta)[..., None, None] * (h @ h)


def jr_inv_so3(phi) -> np.ndarray:
    return jl_inv_so3(-np.asarray(phi, dtype=float))
