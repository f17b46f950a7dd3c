"""Concentrated Gaussians on SE_K(3).

A left distribution draws ``T = mean exp(eps)``, a right one
``T = exp(eps) mean``, with ``eps ~ N(0, cov)`` in tangent coordinates.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from sek3.core.config import settings
from sek3.core.errors import DimensionMismatchError, NotConcentratedError, NotPSDError, check_same_k
from sek3.core.random import standard_normal_rows
from sek3.lie.adjoint import adjoint, adjoint_inverse
from sek3.lie.group import (
    GroupElement,
    Side,
    compose,
    compose_batch,
    elements_from_batch,
    exp,
    exp_batch,
    inverse_batch,
    log_batch,
)

logger = logging.getLogger(__name__)

PSD_TOL = 1e-12


def _symmetrize(c: np.ndarray) -> np.ndarray:
    return 0.5 * (c + c.T)


@dataclass(frozen=True, eq=False)
class ConcentratedGaussian:
    mean: GroupElement
    cov: np.ndarray
    side: Side = Side.LEFT

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        n = 3 * (self.mean.k + 1)
        if cov.shape != (n, n):
            raise DimensionMismatchError(f"covariance must be {n}x{n} for K={self.mean.k}, got {cov.shape}")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > PSD_TOL * scale:
            raise NotPSDError("covariance is not symmetric")
        if np.min(np.linalg.eigvalsh(_symmetrize(cov))) < -PSD_TOL * scale:
            raise NotPSDError("covariance has negative eigenvalues")
        cov.setflags(write=False)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "side", Side(self.side))

    @property
    def k(self) -> int:
        return self.mean.k


def _factor(cov: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        values, vectors = np.linalg.eigh(_symmetrize(cov))
        logger.warning(
            "Cholesky failed, clipping %d eigenvalue(s) at zero",
            int(np.sum(values <= 0.0)),
        )
        return vectors * np.sqrt(np.clip(values, 0.0, None))


def sample_arrays(d: ConcentratedGaussian, seed: int, n: int, start: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Draws ``start .. start+n-1`` as ``(N, 3, 3)`` rotations and ``(N, K, 3)`` translations."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    dim = 3 * (d.k + 1)
    eps = standard_normal_rows(seed, n, dim, start=start) @ _factor(d.cov).T
    r_eps, p_eps = exp_batch(eps)
    if d.side is Side.LEFT:
        return compose_batch(d.mean.r, d.mean.p, r_eps, p_eps)
    return compose_batch(r_eps, p_eps, d.mean.r, d.mean.p)


def sample(d: ConcentratedGaussian, seed: int, n: int) -> list[GroupElement]:
    """``n`` draws; sample ``i`` depends only on ``(seed, i)``."""
    return elements_from_batch(*sample_arrays(d, seed, n))


def _quotient_logs(mean: GroupElement, r: np.ndarray, p: np.ndarray) -> np.ndarray:
    inv_r, inv_p = inverse_batch(mean.r, mean.p)
    q_r, q_p = compose_batch(inv_r, inv_p, r, p)
    return log_batch(q_r, q_p)


def recover(samples: Sequence[GroupElement], side: Side | str = Side.LEFT) -> ConcentratedGaussian:
    """Empirical mean and covariance of concentrated samples.

    The mean solves ``mean(log(m^-1 T_i)) = 0`` by fixed-point iteration; the
    result is converted when a right distribution is requested.
    """
    side = Side(side)
    if not samples:
        raise ValueError("need at least one sample")
    k = check_same_k(*(g.k for g in samples), what="samples")
    r = np.stack([g.r for g in samples])
    p = np.stack([g.p for g in samples]).reshape(len(samples), k, 3)

    mean = samples[0]
    for iteration in range(settings.RECOVER_MAX_ITERS):
        logs = _quotient_logs(mean, r, p)
        theta = np.linalg.norm(logs[:, :3], axis=1)
        if np.any(theta > 0.5 * np.pi):
            raise NotConcentratedError(
                f"sample rotation {float(np.max(theta)):.3f} rad from the running mean exceeds pi/2"
            )
        step = logs.mean(axis=0)
        logger.debug("recover iteration %d: |mean log| %.3e", iteration, np.linalg.norm(step))
        if np.linalg.norm(step) < settings.RECOVER_TOL:
            break
        mean = compose(mean, exp(step))
    else:
        logs = _quotient_logs(mean, r, p)
        logger.warning("recover stopped after %d iterations", settings.RECOVER_MAX_ITERS)

    cov = _symmetrize(logs.T @ logs / len(samples))
    left = ConcentratedGaussian(mean, cov, Side.LEFT)
    return left if side is Side.LEFT else convert_side(left)


def convert_side(d: ConcentratedGaussian) -> ConcentratedGaussian:
    """Same distribution with the other side convention: ``eps_r = Ad(mean) eps_l``."""
    if d.side is Side.LEFT:
        a = adjoint(d.mean)
    else:
        a = adjoint_inverse(d.mean)
    return ConcentratedGaussian(d.mean, _symmetrize(a @ d.cov @ a.T), d.side.other)
