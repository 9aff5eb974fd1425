"""Numerical toolkit for a planar monetary economy in (liabilities, inflation).

Submodules
----------
prefs     : preference/technology parameters and the CES portfolio kernel
policy    : interest-rate rules and fiscal regimes
steady    : steady-state location for both regimes
localdyn  : Jacobians, eigen-classification, comparative statics, predicates
flow      : vector fields, trajectory integration, solvency diagnostics
portrait  : isoclines, manifolds, connecting orbits, basins of attraction
calib     : calibration presets, point checks, robustness sweeps
config    : JSON run configuration and named presets
cli       : command-line front end
"""

from .calib import BASELINE, CalibrationPreset, SweepReport, j22_local, sweep_j22
from .config import PRESET_NAMES, RunConfig, dump_config, load_config, preset
from .errors import (
    ConfigError,
    DomainError,
    MultipleRootsDetected,
    NoConnection,
    NoLowSteadyState,
    NonpositiveLiabilities,
    NotASaddle,
    OlgdynError,
    SingularBranch,
    StiffnessError,
    WrongClassification,
)
from .flow import (
    Box,
    SolvencyReport,
    Trajectory,
    integrate,
    solvency_report,
    vector_field,
)
from .localdyn import (
    ActivistConditionReport,
    EigenReport,
    Jacobian2,
    activist_conditions,
    comparative_statics,
    eigen2,
    jacobian_activist,
    jacobian_debt,
    saddle_arm_slope,
    stable_eigendirection,
    unstable_branch_slope,
)
from .policy import (
    Activist,
    DebtTargeting,
    FiscalRegime,
    TaylorRule,
    gamma,
    gamma_prime,
    surplus,
    theta,
    theta_prime,
)
from .portrait import (
    PhasePortrait,
    Polyline,
    basin_grid,
    build_portrait,
    heteroclinic,
    isoclines,
    manifold,
)
from .prefs import (
    ModelParams,
    calibrate_delta,
    lambda_big,
    lambda_prime,
    omega,
)
from .steady import (
    SteadyState,
    fisher_residual,
    solve_activist,
    solve_debt_targeting,
)

__version__ = "1.0.0"
