"""Bohr and Bohr-Rogosinski radii for Ma-Minda type classes of analytic functions."""

from .coeff_bounds import CoeffBoundProvider, bound, bounds_array
from .errors import (
    BohrError,
    ConditionViolated,
    DivergenceBeforeRoot,
    DivergenceError,
    NoRootInRange,
    QuadratureError,
    SeriesPreconditionError,
)
from .extremal import (
    build_extremal_pair,
    convex_distance,
    cs_distance,
    ks_distance,
    starlike_distance,
)
from .psi import PsiModel, load_custom, psi_eval, psi_majorant_tail, psi_series
from .series import MajorantSeries, Series
from .solvers import (
    ClassTag,
    NumericConfig,
    RadiusProblem,
    RadiusResult,
    sharpness_probe,
    solve,
    solve_cc,
    solve_classical,
    solve_cs,
    solve_gen_starlike,
    solve_gen_starlike_extremal,
    solve_janowski,
    solve_ks,
    solve_order_alpha,
    solve_sc,
)
from .weights import WeightSequence, parse_weights, weighted_sum

__all__ = [name for name in dir() if not name.startswith("_")]
