from .basis import column_key, enumerate_basis, expand_term, exponent_bound
from .solver import HELD_OUT_ORDERS, expand_columns, fit, fit_closed_form, fit_determined

__all__ = [
    "HELD_OUT_ORDERS",
    "column_key",
    "enumerate_basis",
    "expand_columns",
    "expand_term",
    "exponent_bound",
    "fit",
    "fit_closed_form",
    "fit_determined",
]
