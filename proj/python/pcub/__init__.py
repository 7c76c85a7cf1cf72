"""Polyharmonic cubature on annuli: Gaussian rules, Cauchy kernels and error bounds."""

from ._core import (
    ConfigError,
    DegenerateMeasure,
    DomainError,
    RadialMeasure,
    SolverError,
    basis_exponents,
    cubature,
    dim_harmonics,
    error_report,
    eval_harmonic,
    evaluate,
    gauss_rule,
    h2_norm,
    hl2_norm,
    ingest_function,
    interpolate,
    kernel,
    kernel_bound,
    kernel_series,
    reproduce_component,
    riesz_set,
    run_cli,
    split,
    verify,
    zonal_order,
)

__all__ = [
    "ConfigError",
    "DegenerateMeasure",
    "DomainError",
    "RadialMeasure",
    "SolverError",
    "basis_exponents",
    "cubature",
    "dim_harmonics",
    "error_report",
    "eval_harmonic",
    "evaluate",
    "gauss_rule",
    "h2_norm",
    "hl2_norm",
    "ingest_function",
    "interpolate",
    "kernel",
    "kernel_bound",
    "kernel_series",
    "reproduce_component",
    "riesz_set",
    "run_cli",
    "split",
    "verify",
    "zonal_order",
]
