"""Exact-arithmetic inflation (substitution) tilings of the plane.

The heavy lifting lives in the compiled ``_core`` module; this package just
re-exports its surface.
"""

from ._core import (  # noqa: F401
    InflationRule,
    Patch,
    TessellaError,
    adjacency_census_size,
    boundary_ratio,
    builtin,
    check_hypotheses,
    frequency_convergence,
    inflate,
    parse_rule,
    patch_json,
    render_svg,
    spectral_radius,
    substitution_matrix,
    twisted_matrix,
    validate,
    weyl_sum,
)

__all__ = [
    "InflationRule",
    "Patch",
    "TessellaError",
    "adjacency_census_size",
    "boundary_ratio",
    "builtin",
    "check_hypotheses",
    "frequency_convergence",
    "inflate",
    "parse_rule",
    "patch_json",
    "render_svg",
    "spectral_radius",
    "substitution_matrix",
    "twisted_matrix",
    "validate",
    "weyl_sum",
]

__version__ = "0.1.0"
