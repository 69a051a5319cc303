"""Stability, stabilizability and sub-stabilizability analyses."""

from .algebra import Factorization, QuadraticSurd, RootOf, factor_linear, rational_roots, real_roots
from .asymptotic import (
    StabilityCheck,
    asym_compare,
    is_stable,
    power_coeffs,
    simultaneous_conditions,
    stability_conditions,
    stabilizable_disproof,
    substab_optimize,
)
from .numeric import (
    DEFAULT_GRID,
    compound_mean,
    functional_eq_residual,
    resultant_eval,
    substab_sweep,
)
from .reports import (
    AsymCompareResult,
    Condition,
    DisproofReport,
    Report,
    Residual,
    SimultaneousReport,
    Solution,
    StabilityReport,
    SubStabReport,
    report_from_dict,
)

__all__ = [
    "AsymCompareResult",
    "Condition",
    "DEFAULT_GRID",
    "DisproofReport",
    "Factorization",
    "QuadraticSurd",
    "Report",
    "Residual",
    "RootOf",
    "SimultaneousReport",
    "Solution",
    "StabilityCheck",
    "StabilityReport",
    "SubStabReport",
    "asym_compare",
    "compound_mean",
    "factor_linear",
    "functional_eq_residual",
    "is_stable",
    "power_coeffs",
    "rational_roots",
    "real_roots",
    "report_from_dict",
    "resultant_eval",
    "simultaneous_conditions",
    "stability_conditions",
    "stabilizable_disproof",
    "substab_optimize",
    "substab_sweep",
]
