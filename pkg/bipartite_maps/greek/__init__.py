from .field import (
    ONE,
    ZERO,
    GreekElem,
    basis_term_elem,
    closed_form_elem,
    closed_form_terms,
    combo_to_elem,
    gf_eval,
    gf_normalize_eval,
    one_minus_w_inverse,
    one_plus_w_inverse,
)
from .gamma import GreekMonomial, degree_drop_holds, degrees, gamma_calc, gamma_monomial
from .local import LocalExp, expand_xtPY, local_expand
from .toprec import (
    closed_form_f,
    compare_closed_forms,
    reference_f1,
    residue_sum,
    toprec_F,
)
from .unroot import (
    GammaQuotient,
    LinearOperators,
    closed_form_series,
    linear_ops,
    log_series,
    reference_l2,
    unroot_L,
)

__all__ = [
    "ONE",
    "ZERO",
    "GammaQuotient",
    "GreekElem",
    "GreekMonomial",
    "LinearOperators",
    "LocalExp",
    "basis_term_elem",
    "closed_form_elem",
    "closed_form_f",
    "closed_form_series",
    "closed_form_terms",
    "combo_to_elem",
    "compare_closed_forms",
    "degree_drop_holds",
    "degrees",
    "expand_xtPY",
    "gamma_calc",
    "gamma_monomial",
    "gf_eval",
    "gf_normalize_eval",
    "linear_ops",
    "local_expand",
    "log_series",
    "one_minus_w_inverse",
    "one_plus_w_inverse",
    "reference_f1",
    "reference_l2",
    "residue_sum",
    "toprec_F",
    "unroot_L",
]
