"""The extended-pose group SE_K(3).

An element holds one rotation ``r`` and ``K`` translation-like 3-vectors ``p``
(rows of a ``(K, 3)`` array). Tangent coordinates are ordered
``(phi, t_1, ..., t_K)`` everywhere in the library.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from sek3.core.config import settings
from sek3.core.errors import (
    DimensionMismatchError,
    MalformedAlgebraError,
    MalformedElementError,
    check_same_k,
)
from sek3.lie.so3 import (
    angle,
    ensure_rotation,
    exp_so3,
    hat3,
    is_rotation,
    jl_inv_so3,
    jl_so3,
    log_so3,
)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TangentVector:
    phi: np.ndarray
    t: np.ndarray

    # numpy scalars defer to the reflected operators below
    __array_ufunc__ = None

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=float).reshape(-1)
        t = np.asarray(self.t, dtype=float)
        if phi.shape != (3,):
            raise DimensionMismatchError(f"phi must have 3 entries, got {phi.shape}")
        if t.size % 3:
            raise DimensionMismatchError(f"t must hold 3-vectors, got {t.size} entries")
        object.__setattr__(self, "phi", _frozen(phi))
        object.__setattr__(self, "t", _frozen(t.reshape(-1, 3)))

    @property
    def k(self) -> int:
        return self.t.shape[0]

    @property
    def dim(self) -> int:
        return 3 * (self.k + 1)

    @classmethod
    def zeros(cls, k: int) -> "TangentVector":
        return cls(np.zeros(3), np.zeros((k, 3)))

    @classmethod
    def from_array(cls, vec) -> "TangentVector":
        vec = np.asarray(vec, dtype=float).reshape(-1)
        if vec.size < 3 or vec.size % 3:
            raise DimensionMismatchError(f"tangent coordinates need 3(K+1) entries, got {vec.size}")
        return cls(vec[:3], vec[3:].reshape(-1, 3))

    @classmethod
    def basis(cls, k: int, i: int) -> "TangentVector":
        e = np.zeros(3 * (k + 1))
        e[i] = 1.0
        return cls.from_array(e)

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.phi, self.t.reshape(-1)])

    def __array__(self, dtype=None, copy=None):
        out = self.as_array()
        return out if dtype is None else out.astype(dtype)

    @property
    def theta(self) -> float:
        return float(np.linalg.norm(self.phi))

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def __add__(self, other: "TangentVector") -> "TangentVector":
        check_same_k(self.k, other.k)
        return TangentVector(self.phi + other.phi, self.t + other.t)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        check_same_k(self.k, other.k)
        return TangentVector(self.phi - other.phi, self.t - other.t)

    def __neg__(self) -> "TangentVector":
        return TangentVector(-self.phi, -self.t)

    def __mul__(self, scalar: float) -> "TangentVector":
        return TangentVector(scalar * self.phi, scalar * self.t)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"TangentVector(k={self.k}, xi={np.array2string(self.as_array(), precision=6)})"


TangentLike = Union[TangentVector, np.ndarray, Sequence[float]]


def as_tangent(xi: TangentLike) -> TangentVector:
    if isinstance(xi, TangentVector):
        return xi
    return TangentVector.from_array(xi)


@dataclass(frozen=True, eq=False)
class GroupElement:
    r: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if r.shape != (3, 3):
            raise MalformedElementError(f"rotation must be 3x3, got {r.shape}")
        if p.size % 3:
            raise MalformedElementError(f"translations must be 3-vectors, got {p.size} entries")
        object.__setattr__(self, "r", _frozen(r))
        object.__setattr__(self, "p", _frozen(p.reshape(-1, 3)))

    @property
    def k(self) -> int:
        return self.p.shape[0]

    @classmethod
    def identity(cls, k: int) -> "GroupElement":
        return cls(np.eye(3), np.zeros((k, 3)))

    def matrix(self) -> np.ndarray:
        """Dense ``(K+3) x (K+3)`` embedding ``[[R, p_1 .. p_K], [0, I_K]]``."""
        n = self.k + 3
        m = np.eye(n)
        m[:3, :3] = self.r
        m[:3, 3:] = self.p.T
        return m

    @classmethod
    def from_matrix(cls, m) -> "GroupElement":
        m = np.asarray(m, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 3:
            raise MalformedElementError(f"expected a square (K+3)x(K+3) matrix, got {m.shape}")
        k = m.shape[0] - 3
        tol = settings.STRUCTURE_TOL
        if np.any(np.abs(m[3:, :3]) > tol) or np.any(np.abs(m[3:, 3:] - np.eye(k)) > tol):
            raise MalformedElementError("bottom rows of the embedding must be [0 | I_K]")
        if not is_rotation(m[:3, :3]):
            raise MalformedElementError("top-left block is not a rotation")
        return cls(m[:3, :3], m[:3, 3:].T)

    @property
    def rotation_angle(self) -> float:
        return float(angle(log_so3(self.r)))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"GroupElement(k={self.k}, r={self.r.tolist()}, p={self.p.tolist()})"


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    check_same_k(a.k, b.k)
    return GroupElement(ensure_rotation(a.r @ b.r), b.p @ a.r.T + a.p)


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.r.T, -g.p @ g.r)


def hat(xi: TangentLike) -> np.ndarray:
    xi = as_tangent(xi)
    m = np.zeros((xi.k + 3, xi.k + 3))
    m[:3, :3] = hat3(xi.phi)
    m[:3, 3:] = xi.t.T
    return m


def vee(s) -> TangentVector:
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] < 3:
        raise MalformedAlgebraError(f"expected a square (K+3)x(K+3) matrix, got {s.shape}")
    tol = settings.STRUCTURE_TOL
    top = s[:3, :3]
    if np.linalg.norm(top + top.T) > tol:
        raise MalformedAlgebraError("rotation block of an algebra matrix must be skew-symmetric")
    if np.any(np.abs(s[3:, :]) > tol):
        raise MalformedAlgebraError("rows below the third must vanish")
    return TangentVector(np.array([top[2, 1], top[0, 2], top[1, 0]]), s[:3, 3:].T)


def generators(k: int) -> np.ndarray:
    """The ``3(K+1)`` generators ``G_i = hat(e_i)`` stacked along axis 0."""
    return np.stack([hat(TangentVector.basis(k, i)) for i in range(3 * (k + 1))])


def bracket(xi1: TangentLike, xi2: TangentLike) -> TangentVector:
    xi1, xi2 = as_tangent(xi1), as_tangent(xi2)
    check_same_k(xi1.k, xi2.k)
    phi = np.cross(xi1.phi, xi2.phi)
    t = np.cross(xi1.phi, xi2.t) - np.cross(xi2.phi, xi1.t)
    return TangentVector(phi, t)


def exp(xi: TangentLike) -> GroupElement:
    xi = as_tangent(xi)
    return GroupElement(exp_so3(xi.phi), xi.t @ jl_so3(xi.phi).T)


def log(g: GroupElement) -> TangentVector:
    phi = log_so3(g.r)
    return TangentVector(phi, g.p @ jl_inv_so3(phi).T)


def act(g: GroupElement, b, gamma) -> np.ndarray:
    """Parametric action ``R b + sum_i gamma_i p_i``."""
    gamma = np.asarray(gamma, dtype=float).reshape(-1)
    if gamma.size != g.k:
        raise DimensionMismatchError(f"gamma has {gamma.size} entries, element has K={g.k}")
    return g.r @ np.asarray(b, dtype=float) + gamma @ g.p


# Batched chart maps: coordinates as rows of an (N, 3(K+1)) array, elements as
# (N, 3, 3) rotations with (N, K, 3) translations.

def exp_batch(xis) -> tuple[np.ndarray, np.ndarray]:
    xis = np.asarray(xis, dtype=float)
    phi = xis[:, :3]
    t = xis[:, 3:].reshape(xis.shape[0], -1, 3)
    return exp_so3(phi), t @ np.swapaxes(jl_so3(phi), -1, -2)


def log_batch(r, p) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    p = np.asarray(p, dtype=float)
    phi = log_so3(r)
    t = p @ np.swapaxes(jl_inv_so3(phi), -1, -2)
    return np.concatenate([phi, t.reshape(phi.shape[0], -1)], axis=1)


def compose_batch(r1, p1, r2, p2) -> tuple[np.ndarray, np.ndarray]:
    """Broadcasting ``compose`` on raw arrays."""
    r1 = np.asarray(r1, dtype=float)
    return r1 @ r2, np.asarray(p2) @ np.swapaxes(r1, -1, -2) + p1


def inverse_batch(r, p) -> tuple[np.ndarray, np.ndarray]:
    r = np.asarray(r, dtype=float)
    return np.swapaxes(r, -1, -2), -np.asarray(p) @ r


def elements_from_batch(r, p) -> list[GroupElement]:
    return [GroupElement(ri, pi) for ri, pi in zip(r, p)]
