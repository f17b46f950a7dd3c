"""Randomized check of the group identities the library relies on.

Each identity returns a residual per trial; the largest residual over all
trials is compared with the identity's tolerance. Residuals marked relative
are divided by ``max(1, |reference|)``; the quartic and quintic algebra
identities by ``max(1, theta^4)`` and ``max(1, theta^5)``. The Cholesky check
reports 0 on success and 1 on failure.
"""
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from sek3.commands.common import EXIT_IDENTITY_FAILURE, EXIT_OK
from sek3.kinematics import GeneralizedVelocity, convert_velocity, verify_jacobian_identity
from sek3.lie.adjoint import adjoint, exp_adjoint, small_adjoint
from sek3.lie.bch import bch, bch_via_commutators
from sek3.lie.group import TangentVector, act, bracket, compose, exp, hat, log, vee
from sek3.lie.jacobians import (
    jacobian,
    jacobian_blocks,
    jacobian_determinant,
    jacobian_inverse,
    jacobian_quartic,
    q_block_left,
)
from sek3.lie.random import random_element, random_tangent
from sek3.lie.so3 import exp_so3, hat3, jl_so3, jr_so3
from sek3.metrics import WeightSpec, inner_product, trace_inner_product

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Check the group identities on random inputs")
    parser.add_argument("--k", type=int, required=True, help="Number of translation slots")
    parser.add_argument("--trials", type=int, default=100, help="Random trials per identity")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the random inputs")
    parser.set_defaults(handler=run)


@dataclass(frozen=True)
class Identity:
    name: str
    tol: float
    check: Callable[[np.random.Generator, int], float]
    min_k: int = 0


def _rel(a, b) -> float:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b), initial=0.0) / max(1.0, float(np.max(np.abs(b), initial=0.0))))


def _rotation_vector(rng, max_angle=np.pi - 1e-3):
    return random_tangent(rng, 0, max_angle=max_angle, min_angle=1e-6).phi


def _left_jacobian_conjugation(rng, k):
    phi = _rotation_vector(rng)
    r = exp_so3(_rotation_vector(rng))
    return _rel(jl_so3(r @ phi), r @ jl_so3(phi) @ r.T)


def _left_jacobian_hat(rng, k):
    phi = _rotation_vector(rng)
    return _rel(jl_so3(phi) @ hat3(phi), exp_so3(phi) - np.eye(3))


def _right_jacobian_hat(rng, k):
    phi = _rotation_vector(rng)
    return _rel(jr_so3(phi) @ hat3(phi), np.eye(3) - exp_so3(-phi))


def _quartic_algebra(rng, k):
    xi = random_tangent(rng, k)
    s = hat(xi)
    s2 = s @ s
    return float(np.max(np.abs(s2 @ s2 + xi.theta**2 * s2))) / max(1.0, xi.theta**4)


def _quintic_adjoint(rng, k):
    xi = random_tangent(rng, k)
    ad = small_adjoint(xi)
    ad2 = ad @ ad
    ad3 = ad2 @ ad
    residual = ad3 @ ad2 + 2.0 * xi.theta**2 * ad3 + xi.theta**4 * ad
    return float(np.max(np.abs(residual))) / max(1.0, xi.theta**5)


def _exp_series(rng, k):
    # dense reference from the test-support package, loaded only when verify runs
    from sek3.testing.oracle import expm_series

    xi = random_tangent(rng, k, max_angle=3.0)
    return _rel(exp(xi).matrix(), expm_series(hat(xi)))


def _log_exp(rng, k):
    xi = random_tangent(rng, k, max_angle=np.pi - 0.1)
    return _rel(log(exp(xi)).as_array(), xi.as_array())


def _adjoint_diagram(rng, k):
    xi = random_tangent(rng, k)
    return _rel(exp_adjoint(xi), adjoint(exp(xi)))


def _adjoint_block_series(rng, k):
    from sek3.testing.oracle import adjoint_block_series

    xi = random_tangent(rng, k)
    phi, t = xi.phi, xi.t[0]
    return _rel(hat3(jl_so3(phi) @ t) @ exp_so3(phi), adjoint_block_series(phi, t))


def _adjoint_homomorphism(rng, k):
    a, b = random_element(rng, k), random_element(rng, k)
    return _rel(adjoint(compose(a, b)), adjoint(a) @ adjoint(b))


def _bracket_commutator(rng, k):
    x, y = random_tangent(rng, k), random_tangent(rng, k)
    s1, s2 = hat(x), hat(y)
    return _rel(vee(s1 @ s2 - s2 @ s1).as_array(), bracket(x, y).as_array())


def _adjoint_closure(rng, k):
    x, y = random_tangent(rng, k), random_tangent(rng, k)
    a1, a2 = small_adjoint(x), small_adjoint(y)
    return _rel(a1 @ a2 - a2 @ a1, small_adjoint(a1 @ y.as_array()))


def _action_homomorphism(rng, k):
    g, h = random_element(rng, k), random_element(rng, k)
    b = rng.normal(size=3)
    gamma = rng.normal(size=k)
    return _rel(act(g, act(h, b, gamma), gamma), act(compose(g, h), b, gamma))


def _jacobian_forms(rng, k):
    xi = random_tangent(rng, k)
    return _rel(jacobian_quartic(xi).matrix, jacobian_blocks(xi).matrix)


def _jacobian_sides(rng, k):
    xi = random_tangent(rng, k)
    return _rel(jacobian(xi, "left").matrix, exp_adjoint(xi) @ jacobian(xi, "right").matrix)


def _adjoint_from_jacobian(rng, k):
    xi = random_tangent(rng, k)
    return _rel(np.eye(xi.dim) + small_adjoint(xi) @ jacobian(xi, "left").matrix, exp_adjoint(xi))


def _q_relation(rng, k):
    xi = random_tangent(rng, k)
    phi, t = xi.phi, xi.t[0]
    r = exp_so3(phi)
    rhs = r @ q_block_left(-phi, -t) + hat3(jl_so3(phi) @ t) @ r @ jr_so3(phi)
    return _rel(q_block_left(phi, t), rhs)


def _determinant(rng, k):
    xi = random_tangent(rng, k)
    dense = abs(np.linalg.det(jacobian(xi).matrix))
    closed = jacobian_determinant(xi)
    return abs(dense - closed) / max(closed, 1e-300)


def _jacobian_inverse(rng, k):
    xi = random_tangent(rng, k)
    return _rel(jacobian(xi).matrix @ jacobian_inverse(xi).matrix, np.eye(xi.dim))


def _jacobian_gram_positive(rng, k):
    xi = random_tangent(rng, k, max_angle=2.0 * np.pi - 0.1)
    for side in ("left", "right"):
        j = jacobian(xi, side).matrix
        try:
            np.linalg.cholesky(j @ j.T)
        except np.linalg.LinAlgError:
            return 1.0
    return 0.0


def _trace_forms(rng, k):
    x, y = random_tangent(rng, k), random_tangent(rng, k)
    reference = inner_product(x, y)
    weights = WeightSpec()
    return max(
        _rel(trace_inner_product(x, y, weights, "hat"), reference),
        _rel(trace_inner_product(x, y, weights, "adjoint"), reference),
    )


def _bch_forms(rng, k):
    x, y = random_tangent(rng, k, max_angle=0.5), random_tangent(rng, k, max_angle=0.5)
    return _rel(bch(x, y, 4).as_array(), bch_via_commutators(x, y, 4).as_array())


def _velocity_blocks(rng, k):
    g = random_element(rng, k)
    v = GeneralizedVelocity("right", rng.normal(size=3), rng.normal(size=(k, 3)))
    left = convert_velocity(v, g)
    nu1 = hat3(g.p[0]) @ g.r @ v.omega + g.r @ v.nu[0]
    return _rel(left.nu[0], nu1)


def _side_conversion(rng, k):
    mean = random_element(rng, k)
    eps = TangentVector.from_array(0.1 * rng.normal(size=3 * (k + 1)))
    left = compose(mean, exp(eps))
    right = compose(exp(adjoint(mean) @ eps.as_array()), mean)
    return _rel(left.matrix(), right.matrix())


def _jacobian_time_identity(rng, k):
    xi0 = random_tangent(rng, k, max_angle=1.0, t_scale=0.5).as_array()
    rate = random_tangent(rng, k, max_angle=1.0, t_scale=0.5).as_array()
    return verify_jacobian_identity(lambda t: xi0 + t * rate, 0.0)


IDENTITIES = [
    Identity("so3 left jacobian conjugation", 1e-10, _left_jacobian_conjugation),
    Identity("so3 left jacobian times hat", 1e-10, _left_jacobian_hat),
    Identity("so3 right jacobian times hat", 1e-10, _right_jacobian_hat),
    Identity("algebra quartic identity", 1e-10, _quartic_algebra),
    Identity("adjoint quintic identity", 1e-9, _quintic_adjoint),
    Identity("exp vs series exponential", 1e-12, _exp_series),
    Identity("log(exp(xi)) round trip", 1e-10, _log_exp),
    Identity("exp_adjoint = Ad(exp)", 1e-11, _adjoint_diagram),
    Identity("(J_l t)^ R double series", 1e-10, _adjoint_block_series, min_k=1),
    Identity("Ad homomorphism", 1e-11, _adjoint_homomorphism),
    Identity("bracket vs matrix commutator", 1e-12, _bracket_commutator),
    Identity("ad closure", 1e-12, _adjoint_closure),
    Identity("group action homomorphism", 1e-12, _action_homomorphism),
    Identity("jacobian quartic vs blocks", 1e-10, _jacobian_forms),
    Identity("J_l = Ad J_r", 1e-10, _jacobian_sides),
    Identity("Ad = I + ad J_l", 1e-10, _adjoint_from_jacobian),
    Identity("Q_l = R Q_r + (J t)^ R J_r", 1e-10, _q_relation, min_k=1),
    Identity("jacobian determinant", 1e-8, _determinant),
    Identity("jacobian inverse", 1e-9, _jacobian_inverse),
    Identity("J J^T positive definite", 0.0, _jacobian_gram_positive),
    Identity("trace inner products", 1e-12, _trace_forms),
    Identity("bch hat vs ad forms", 1e-12, _bch_forms),
    Identity("velocity frame blocks", 1e-12, _velocity_blocks, min_k=1),
    Identity("left/right noise conversion", 1e-11, _side_conversion),
    Identity("jacobian time derivative identity", 1e-4, _jacobian_time_identity),
]


def run_identities(k: int, trials: int, seed: int) -> list[tuple[Identity, float]]:
    """Largest residual of every applicable identity, in declaration order."""
    results = []
    for index, identity in enumerate(IDENTITIES):
        if k < identity.min_k:
            continue
        rng = np.random.default_rng([seed, index])
        worst = max(identity.check(rng, k) for _ in range(trials))
        logger.debug("%s: %.3e", identity.name, worst)
        results.append((identity, worst))
    return results


def run(args) -> int:
    results = run_identities(args.k, args.trials, args.seed)
    failed = 0
    for identity, worst in results:
        ok = worst <= identity.tol
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {identity.name:<36} max residual {worst:.3e} (tol {identity.tol:.0e})")
    logger.info("%d of %d identities passed", len(results) - failed, len(results))
    return EXIT_OK if failed == 0 else EXIT_IDENTITY_FAILURE
