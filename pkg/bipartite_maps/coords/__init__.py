from .change_of_variables import (
    DEFAULT_GREEK_INDEX,
    CoordData,
    binomial_w_series,
    s_power_series,
    solve_coords,
)
from .derivatives import DerivativeCheck, diff_table, gamma_series_zup
from .greek_series import (
    CONSTANT,
    GreekCombo,
    atom_coefficient,
    catalan_weight,
    combo_series,
    greek_series,
    parse_atom,
)
from .kernel import KernelData, count_small_zeros, kernel_build
from .taylor import LatticeSeries, lattice_oracles, taylor_direct, taylor_kernel
from .theta import (
    LaurentS,
    check_theta_inverse,
    d_op,
    d_series,
    inverse_d,
    laurent,
    theta_closed,
    theta_inverse,
    theta_inverse_basis,
    theta_of_combo,
    theta_series,
)

__all__ = [
    "CONSTANT",
    "DEFAULT_GREEK_INDEX",
    "CoordData",
    "DerivativeCheck",
    "GreekCombo",
    "KernelData",
    "LatticeSeries",
    "LaurentS",
    "atom_coefficient",
    "binomial_w_series",
    "catalan_weight",
    "check_theta_inverse",
    "combo_series",
    "count_small_zeros",
    "d_op",
    "d_series",
    "diff_table",
    "gamma_series_zup",
    "greek_series",
    "inverse_d",
    "kernel_build",
    "lattice_oracles",
    "laurent",
    "parse_atom",
    "s_power_series",
    "solve_coords",
    "taylor_direct",
    "taylor_kernel",
    "theta_closed",
    "theta_inverse",
    "theta_inverse_basis",
    "theta_of_combo",
    "theta_series",
]
