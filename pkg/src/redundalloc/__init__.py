"""Optimal redundancy allocation for coherent systems with dependent,
multi-type components."""

from .costs import CostModel, cost1, cost2, cost3, cost4
from .dependence import ClaytonCopula, CustomCopula, GumbelCopula, IndependenceCopula
from .errors import NumericalError, ParseError, RedundAllocError, ValidationError
from .expectations import (
    expectation_report,
    expected_failed_at_failure,
    expected_failed_at_failure_given_early_failure,
    expected_failures_by_tau_given_survival,
)
from .marginals import CustomMarginal, Exponential, ParetoLinear, Weibull
from .optimizer import optimize_allocation, optimize_subsystem_sizes, optimize_tau
from .reliability import SystemModel, mttf, redundant_reliability, system_reliability
from .structure import (
    SystemStructure,
    signature_from_paths,
    signature_from_table,
    signature_k_out_of_n,
    signature_series_parallel,
)

__version__ = "0.1.0"

__all__ = [
    "ClaytonCopula",
    "CostModel",
    "CustomCopula",
    "CustomMarginal",
    "Exponential",
    "GumbelCopula",
    "IndependenceCopula",
    "NumericalError",
    "ParetoLinear",
    "ParseError",
    "RedundAllocError",
    "SystemModel",
    "SystemStructure",
    "ValidationError",
    "Weibull",
    "cost1",
    "cost2",
    "cost3",
    "cost4",
    "expectation_report",
    "expected_failed_at_failure",
    "expected_failed_at_failure_given_early_failure",
    "expected_failures_by_tau_given_survival",
    "mttf",
    "optimize_allocation",
    "optimize_subsystem_sizes",
    "optimize_tau",
    "redundant_reliability",
    "signature_from_paths",
    "signature_from_table",
    "signature_k_out_of_n",
    "signature_series_parallel",
    "system_reliability",
]
