"""Brute-force reference computations for the test-suite.

No library module imports this one; the `verify` command loads it lazily for
its dense-exponential and double-series identities. Every routine works on
plain dense matrices and trades speed for transparency.
"""
import math
from typing import Callable, Union

import numpy as np
from scipy import integrate, linalg, special

from sek3.core.errors import LogBranchError
from sek3.lie.adjoint import small_adjoint
from sek3.lie.group import Side, TangentLike
from sek3.lie.so3 import hat3


def expm_series(m, terms: int = 30) -> np.ndarray:
    """Scaling and squaring around a truncated Taylor series.

    ``m`` is scaled by ``2**-s`` until its 1-norm is at most 0.5.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    norm = np.linalg.norm(m, 1)
    s = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    a = m / 2.0**s
    out = np.eye(n)
    term = np.eye(n)
    for j in range(1, terms + 1):
        term = term @ a / j
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def logm_inverse_scaling(m, terms: int = 40, max_roots: int = 64) -> np.ndarray:
    """Principal logarithm by repeated square roots and the ``log(I + X)`` series.

    Raises LogBranchError when an eigenvalue sits on the closed negative real axis.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    eig = np.linalg.eigvals(m)
    scale = max(1.0, float(np.max(np.abs(eig))))
    on_cut = (np.abs(eig.imag) <= 1e-8 * scale) & (eig.real <= 1e-12 * scale)
    if np.any(on_cut):
        raise LogBranchError("matrix has an eigenvalue on the branch cut of the logarithm")

    x = m
    roots = 0
    while np.linalg.norm(x - np.eye(n), 1) > 0.25:
        if roots == max_roots:
            raise LogBranchError("square-root iteration did not approach the identity")
        x = np.real_if_close(linalg.sqrtm(x), tol=1e6).real
        roots += 1

    y = x - np.eye(n)
    out = np.zeros((n, n))
    power = np.eye(n)
    for j in range(1, terms + 1):
        power = power @ y
        out = out + ((-1.0) ** (j + 1) / j) * power
    return 2.0**roots * out


def integral_of_exponential(m, points: int = 10_000) -> np.ndarray:
    """Trapezoid rule for ``int_0^1 expm(a m) da`` on ``points`` nodes.

    Node values are successive powers of ``expm(h m)``.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    h = 1.0 / (points - 1)
    step = expm_series(h * m)
    value = np.eye(n)
    total = 0.5 * value
    for _ in range(points - 2):
        value = value @ step
        total = total + value
    value = value @ step
    total = total + 0.5 * value
    return h * total


def integral_jacobian(xi: TangentLike, side: Union[Side, str] = Side.LEFT, points: int = 10_000) -> np.ndarray:
    """Group Jacobian as ``int_0^1 exp(+-a ad(xi)) da``."""
    side = Side(side)
    ad = small_adjoint(xi)
    return integral_of_exponential(ad if side is Side.LEFT else -ad, points)


def rk4_matrix_ode(a_of_t, x0, t_span: tuple[float, float], steps: int) -> np.ndarray:
    """Classical RK4 for ``dX/dt = A(t) X``; ``a_of_t`` is a matrix or a callable of ``t``."""
    a_fn: Callable[[float], np.ndarray]
    if callable(a_of_t):
        a_fn = a_of_t
    else:
        constant = np.asarray(a_of_t, dtype=float)
        a_fn = lambda _t: constant  # noqa: E731
    t0, t1 = t_span
    h = (t1 - t0) / steps
    x = np.array(x0, dtype=float)
    t = t0
    for _ in range(steps):
        k1 = a_fn(t) @ x
        k2 = a_fn(t + 0.5 * h) @ (x + 0.5 * h * k1)
        k3 = a_fn(t + 0.5 * h) @ (x + 0.5 * h * k2)
        k4 = a_fn(t + h) @ (x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
    return x


def rk4(f: Callable[[float, np.ndarray], np.ndarray], x0, t_span: tuple[float, float], steps: int) -> np.ndarray:
    """RK4 for a general vector field ``dx/dt = f(t, x)``."""
    t0, t1 = t_span
    h = (t1 - t0) / steps
    x = np.array(x0, dtype=float)
    t = t0
    for _ in range(steps):
        k1 = f(t, x)
        k2 = f(t + 0.5 * h, x + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, x + 0.5 * h * k2)
        k4 = f(t + h, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
    return x


def central_diff(f: Callable[[np.ndarray], np.ndarray], x, eps: float = 1e-6) -> np.ndarray:
    """Jacobian of ``f`` at ``x`` by central differences; column ``i`` is ``df/dx_i``."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x), dtype=float).reshape(-1)
    out = np.zeros((f0.size, x.size))
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = eps
        fp = np.asarray(f(x + step), dtype=float).reshape(-1)
        fm = np.asarray(f(x - step), dtype=float).reshape(-1)
        out[:, i] = (fp - fm) / (2.0 * eps)
    return out


def bernoulli_inverse_series(xi: TangentLike, side: Union[Side, str] = Side.LEFT, terms: int = 8) -> np.ndarray:
    """``sum_n B_n / n! ad^n`` over ``terms`` terms, with ``B_1 = -1/2``; right side uses ``-ad``."""
    side = Side(side)
    ad = small_adjoint(xi)
    if side is Side.RIGHT:
        ad = -ad
    b = special.bernoulli(terms - 1)
    out = np.zeros_like(ad)
    power = np.eye(ad.shape[0])
    for n in range(terms):
        out = out + (b[n] / math.factorial(n)) * power
        power = power @ ad
    return out


def adjoint_block_series(phi, tk, max_order: int = 30) -> np.ndarray:
    """``sum_{n+m <= max_order} phi^n t^ phi^m / (n+m+1)!``, the first-column block of ``Ad(exp(xi))``."""
    ph = hat3(phi)
    th = hat3(tk)
    powers = [np.eye(3)]
    for _ in range(max_order):
        powers.append(powers[-1] @ ph)
    out = np.zeros((3, 3))
    for n in range(max_order + 1):
        for m in range(max_order + 1 - n):
            out = out + powers[n] @ th @ powers[m] / math.factorial(n + m + 1)
    return out


def radial_quadrature(g: Callable[[float], float], k: int = 0, box_volume: float = 1.0) -> float:
    """``int_{|phi| < pi} g(theta) |det J| dphi`` times the translation box volume.

    With ``|det J| = (2 (1 - cos theta) / theta^2) ** (K+1)`` the angular part
    integrates to ``4 pi``, leaving a 1-D integral over ``theta``.
    """
    def integrand(theta: float) -> float:
        det = (2.0 * (1.0 - np.cos(theta)) / theta**2) ** (k + 1) if theta > 0 else 1.0
        return theta**2 * g(theta) * det

    value, _ = integrate.quad(integrand, 0.0, np.pi, epsabs=1e-13, epsrel=1e-12, limit=200)
    return 4.0 * np.pi * value * box_volume
