from .engine import (
    GenusFamily,
    census_coefficients,
    closed_f0_f02,
    compute_F,
    marked_series,
    rooting_defect,
    unroot_series,
    vertex_series,
)
from .operators import (
    SeriesOperators,
    apply_delta,
    apply_gamma,
    apply_gamma_series,
    apply_omega,
    apply_operator,
    apply_pi,
    apply_xi,
)
from .quadrangulations import (
    planar_quadrangulation_oracle,
    quadrangulation_series,
    torus_quadrangulation_oracle,
    tutte_sigma_series,
)

__all__ = [
    "GenusFamily",
    "SeriesOperators",
    "apply_delta",
    "apply_gamma",
    "apply_gamma_series",
    "apply_omega",
    "apply_operator",
    "apply_pi",
    "apply_xi",
    "census_coefficients",
    "closed_f0_f02",
    "compute_F",
    "marked_series",
    "planar_quadrangulation_oracle",
    "quadrangulation_series",
    "rooting_defect",
    "torus_quadrangulation_oracle",
    "tutte_sigma_series",
    "unroot_series",
    "vertex_series",
]
