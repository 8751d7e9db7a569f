"""Exact critical-arrow computations for simplicial toric singularities."""
from .conecore import (
    SimplicialCone,
    classify_singularity,
    discrepancy,
    dual_basis,
    dual_generators,
    essential_candidates,
    hilbert_basis,
    level_one_lattice_points,
    minimal_face,
)
from .critarrows import (
    AnalysisReport,
    CritProfile,
    c_min,
    crit_vectors,
    delta_cone,
    delta_dual_generators,
    diameter_bound,
    dim_tau,
    polytope_condition,
    reconstruct_arrow,
    validate_arrow,
    volume_criterion,
)
from .quotient import build_quotient, classify_cyclic_3d, terminal_hilbert_basis

__version__ = "0.1.0"
