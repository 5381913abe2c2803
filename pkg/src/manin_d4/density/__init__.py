"""Archimedean and local densities and the leading constant."""
from .archimedean import (
    DEFAULT_CONFIG,
    T_MAX,
    OmegaInfinity,
    QuadratureConfig,
    QuadratureError,
    g1,
    g2,
    h,
    h_array,
    omega_infinity,
    omega_infinity_mc,
    omega_infinity_quad,
)
from .local import (
    EulerProduct,
    Psi,
    Theta,
    WeightedSumReport,
    euler_product_omega_H,
    local_factor_closed,
    local_factor_Theta,
    local_factor_Theta_bruteforce,
    local_factor_Theta_exact,
    local_identity_holds,
    omega_p,
    psi_weighted_sum_check,
    theta1,
    theta2,
    upsilon,
)
from .peyre import BETA, PeyreBreakdown, peyre_constant
from .polytope import Polytope, PolytopeError, alpha_polytope, alpha_volume, cube, simplex_from_vertices, standard_simplex
