"""Discrete KdV on the quarter lattice: bilinear, interchanged and nonlinear forms."""

from .boundary import (
    BILINEAR,
    DELTA,
    NONLINEAR,
    SCHEMES,
    TILDE,
    BoundaryData,
    CorrespondenceTables,
    bilinear_boundary,
    boundary_transform,
    delta_tilde,
    nonlinear_boundary,
    parse_delta,
    ring_B,
    ring_B_tilde,
    symbol_monomial_units,
    symbolic_bilinear,
    symbolic_nonlinear,
    symbolic_tilde,
    tilde_boundary,
    w_initial_names,
    w_monomial_units,
    w_name,
)
from .lattice import (
    LatticeWindow,
    bilinear_residual_failures,
    evolve_bilinear,
    evolve_bilinear_tilde,
    evolve_nonlinear,
    nonlinear_residual_failures,
    tilde_residual_failures,
    w_from_a,
    w_from_a_tilde,
    window_mismatches,
)
from .pipeline import PipelineResult, run_pipeline

__all__ = [
    "BILINEAR",
    "DELTA",
    "NONLINEAR",
    "SCHEMES",
    "TILDE",
    "BoundaryData",
    "CorrespondenceTables",
    "LatticeWindow",
    "PipelineResult",
    "bilinear_boundary",
    "bilinear_residual_failures",
    "boundary_transform",
    "delta_tilde",
    "evolve_bilinear",
    "evolve_bilinear_tilde",
    "evolve_nonlinear",
    "nonlinear_boundary",
    "nonlinear_residual_failures",
    "parse_delta",
    "ring_B",
    "ring_B_tilde",
    "run_pipeline",
    "symbol_monomial_units",
    "symbolic_bilinear",
    "symbolic_nonlinear",
    "symbolic_tilde",
    "tilde_boundary",
    "tilde_residual_failures",
    "w_from_a",
    "w_from_a_tilde",
    "w_initial_names",
    "w_monomial_units",
    "w_name",
    "window_mismatches",
]
