"""Point counts on U via brute force and via the universal torsor."""
from .counting import (
    BRUTE_FORCE_CAP,
    NOTE,
    TORSOR_CAP,
    AsymptoticRow,
    BijectionReport,
    CapError,
    CountResult,
    FiberAggregate,
    admissible_tuples,
    asymptotic_report,
    bijection_check,
    brute_force_count,
    degenerate_count,
    degenerate_ratio,
    fiber_aggregate,
    fiber_count,
    fiber_main_term,
    fiber_partition,
    fiber_points,
    squarefree_renormalize,
    torsor_count,
    torsor_to_point,
)
from .types import FiberContext, InvariantError, SurfacePoint, TorsorPoint, canonical
from .export import POINT_HEADER, TORSOR_HEADER, points_csv, torsor_csv
