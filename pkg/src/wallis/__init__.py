"""Certified evaluation and closed forms of generalized Wallis products."""

from .arith import Ball, PrecCtx
from .closedform import ClosedForm, eval_closed_form, parse_closed_form, print_closed_form
from .errors import (
    ConstraintViolation,
    DomainError,
    IdentityFalsified,
    IncompatibleSpecs,
    InvalidSpec,
    InvalidTarget,
    InvalidTransform,
    IrreducibleClosedForm,
    SpecParseError,
    ToleranceNotMet,
    WallisError,
)
from .identities import (
    analogue_type2,
    closed_form,
    closed_form_type1,
    closed_form_type2,
    closed_form_typen,
    double_product_reduce,
    gen_radical,
    gen_rational,
)
from .products import ProductSpec, binom_exponent, check_moments, eval_product
from .pte import PTEQuery, PTESolution, pte_search, pte_to_spec
from .specfile import parse_spec_file, read_spec_file, render_spec_file

__version__ = "0.1.0"
