"""Seeded random tangent vectors and elements, used by ``verify`` and the tests."""
import numpy as np

from sek3.lie.group import GroupElement, TangentVector, exp


def random_tangent(
    rng: np.random.Generator,
    k: int,
    max_angle: float = 3.0,
    min_angle: float = 0.0,
    t_scale: float = 1.0,
) -> TangentVector:
    """Rotation part with angle uniform in ``[min_angle, max_angle]``, translations normal."""
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    phi = rng.uniform(min_angle, max_angle) * direction
    return TangentVector(phi, t_scale * rng.normal(size=(k, 3)))


def random_element(rng: np.random.Generator, k: int, max_angle: float = np.pi - 0.1) -> GroupElement:
    return exp(random_tangent(rng, k, max_angle=max_angle))


def random_vector(rng: np.random.Generator, k: int, scale: float = 1.0) -> np.ndarray:
    return scale * rng.normal(size=3 * (k + 1))
