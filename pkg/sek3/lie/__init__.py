from sek3.lie.adjoint import adjoint, adjoint_inverse, exp_adjoint, log_adjoint, small_adjoint
from sek3.lie.bch import bch, bch_first_order, bch_via_commutators, group_difference, perturb
from sek3.lie.group import (
    GroupElement,
    Side,
    TangentVector,
    act,
    bracket,
    compose,
    exp,
    generators,
    hat,
    inverse,
    log,
    vee,
)
from sek3.lie.jacobians import (
    GroupJacobian,
    jacobian,
    jacobian_determinant,
    jacobian_inverse,
    q_block_left,
)
