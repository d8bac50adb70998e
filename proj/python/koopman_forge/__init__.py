"""Python access to the forge check registry and numerical kernels."""

from ._core import (
    ConfigError,
    DivergedError,
    PreconditionError,
    StructuralError,
    bfa_identities,
    discrete_determinant,
    energy,
    gaussian_inverse_det,
    integrate,
    library_names,
    list_checks,
    report_json,
    run_suite,
    suite_names,
    tangent_map,
)

__all__ = [
    "ConfigError",
    "DivergedError",
    "PreconditionError",
    "StructuralError",
    "bfa_identities",
    "discrete_determinant",
    "energy",
    "gaussian_inverse_det",
    "integrate",
    "library_names",
    "list_checks",
    "report_json",
    "run_suite",
    "suite_names",
    "tangent_map",
]
