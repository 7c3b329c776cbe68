"""Exact and Monte Carlo analysis of planarity at the random-graph critical window."""

from .series import (
    PowerSeries,
    Rational,
    FixedPointDivergence,
    log_inv_one_minus,
    poly_residual,
    solve_fixed_point,
)
from .enumeration import (
    ALL,
    OUTERPLANAR,
    PLANAR,
    SERIES_PARALLEL,
    KernelWeightTable,
    PlanarSystemSolution,
    TreeSeries,
    all_cubic_weight,
    kernel_table,
    nonic_residual,
    outerplanar_table,
    pairing_oracle,
    solve_planar_system,
    solve_sp_system,
    tree_series,
)
from .airy import AiryEvalResult, AiryEvaluationError, airy_A, reciprocal_gamma
from .probability import (
    ClassProbability,
    KernelSizePmf,
    ProbabilityCurve,
    class_probability,
    kernel_size_pmf,
    probability_curve,
    zero_lambda_closed_form,
)
from .simulator import (
    ExperimentReport,
    InvariantViolation,
    MultiGraph,
    TrialOutcome,
    critical_edge_count,
    is_planar,
    is_series_parallel,
    kernel,
    kernel_decomposition,
    run_experiment,
    sample_gnm,
    two_core,
)

__version__ = "0.1.0"

__all__ = [
    "PowerSeries",
    "Rational",
    "FixedPointDivergence",
    "log_inv_one_minus",
    "poly_residual",
    "solve_fixed_point",
    "ALL",
    "PLANAR",
    "SERIES_PARALLEL",
    "OUTERPLANAR",
    "KernelWeightTable",
    "PlanarSystemSolution",
    "TreeSeries",
    "all_cubic_weight",
    "kernel_table",
    "nonic_residual",
    "outerplanar_table",
    "pairing_oracle",
    "solve_planar_system",
    "solve_sp_system",
    "tree_series",
    "AiryEvalResult",
    "AiryEvaluationError",
    "airy_A",
    "reciprocal_gamma",
    "ClassProbability",
    "KernelSizePmf",
    "ProbabilityCurve",
    "class_probability",
    "kernel_size_pmf",
    "probability_curve",
    "zero_lambda_closed_form",
    "ExperimentReport",
    "InvariantViolation",
    "MultiGraph",
    "TrialOutcome",
    "critical_edge_count",
    "is_planar",
    "is_series_parallel",
    "kernel",
    "kernel_decomposition",
    "run_experiment",
    "sample_gnm",
    "two_core",
]
