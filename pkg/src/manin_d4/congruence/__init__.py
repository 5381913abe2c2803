"""Lattice-point counts under a linear congruence."""
from .counts import (
    affine_error_bound,
    count_D,
    count_D_bruteforce,
    count_D_star,
    count_N,
    count_N_star,
    count_quadratic_interval,
    main_term_D,
    quadratic_interval_bound,
    quadratic_interval_bound_general,
)
from .geometry import DyadicErrorSum, dyadic_error_sum, heath_brown_bound, heath_brown_count, heath_brown_holds
from .sums import (
    error_E,
    error_E0,
    error_E0_direct,
    error_E0_fast,
    error_E1,
    error_E2,
    error_E_fast,
    exp_sum_S_closed,
    exp_sum_S_direct,
    exp_sum_table_closed,
    exp_sum_table_direct,
)
from .types import CongruenceInstance, IntegerRange, PrimitiveVectorQuery, RegionS
