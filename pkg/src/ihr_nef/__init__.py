"""Two-component NEF mixtures with a certified nondecreasing hazard."""

from .errors import ConvergenceError, DomainError, IhrError
from .families import (
    FamilyDescriptor,
    FamilyKind,
    TailGrowth,
    b_second,
    laplace,
    make_family,
    nef_density,
    parse_family,
    t_value,
)
from .mixture import (
    FeasibilityReport,
    HazardReport,
    MixturePlan,
    build_plan,
    feasibility_analytic,
    feasibility_numeric,
    hazard,
    mixture_density,
    plan_from_weights,
)
from .numerics import (
    DEFAULT_TOL,
    QuadratureResult,
    ToleranceConfig,
    find_root_monotone,
    integrate_adaptive,
    minimize_unimodal,
)
from .verify import SignScanReport, check_hazard_monotone, sign_scan_b2

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "IhrError",
    "FamilyDescriptor",
    "FamilyKind",
    "TailGrowth",
    "b_second",
    "laplace",
    "make_family",
    "nef_density",
    "parse_family",
    "t_value",
    "FeasibilityReport",
    "HazardReport",
    "MixturePlan",
    "build_plan",
    "feasibility_analytic",
    "feasibility_numeric",
    "hazard",
    "mixture_density",
    "plan_from_weights",
    "DEFAULT_TOL",
    "QuadratureResult",
    "ToleranceConfig",
    "find_root_monotone",
    "integrate_adaptive",
    "minimize_unimodal",
    "SignScanReport",
    "check_hazard_monotone",
    "sign_scan_b2",
]
