"""The table of known product identities, and a reproducer that certifies each row."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from .arith import Ball, PrecCtx, with_escalation
from .closedform import RatConst, eval_closed_form, parse_closed_form, print_closed_form
from .identities import analogue_type2, closed_form, gen_radical, gen_rational, radical_text
from .products import ProductSpec, eval_product
from .specfile import render_exponent

__all__ = ["Row", "RowResult", "identity_rows", "certify_row", "reproduce", "spec_summary"]

WALLIS = ProductSpec((0, 0), (F(-1, 2), F(1, 2)))
GOLDEN = ProductSpec((F(3, 10), F(7, 10)), (F(1, 6), F(5, 6)), (1,), 0)
EXP_CATALAN = ProductSpec(
    (F(-1, 4), F(-1, 4), F(-1, 4), F(3, 4)), (F(-3, 4), F(1, 4), F(1, 4), F(1, 4)), (0, 1)
)
FOUR_FIFTHS = ProductSpec(
    (F(1, 3), F(5, 3), F(5, 3), F(7, 3)), (F(2, 3), F(4, 3), F(4, 3), F(8, 3)), (0, 1)
)
ROOT_TWO_II = ProductSpec(
    (F(-1, 2), F(-1, 2), F(1, 4), F(3, 4)), (F(-3, 4), F(-1, 4), F(1, 2), F(1, 2)), (0, 1)
)
TYPE3_SHIFTS = ((0, 0, 0, F(3, 2), F(3, 2), F(3, 2)), (F(-1, 2), F(1, 2), F(1, 2), 1, 1, 2))
TYPE3 = ProductSpec(*TYPE3_SHIFTS, (0, 0, 1))
TYPE3_LINEAR = ProductSpec(*TYPE3_SHIFTS, (0, 1))


@dataclass(frozen=True)
class Row:
    name: str
    spec: ProductSpec
    expect: str


@dataclass(frozen=True)
class RowResult:
    row: Row
    product: Ball
    expected: Ball
    closed_form: str
    delta_bound: float
    ok: bool


def identity_rows() -> list:
    rows = [
        Row("wallis", WALLIS, "pi/2"),
        Row("golden", GOLDEN, "2*sinpi(3/10)"),
    ]
    for k in (1, 2, 3):
        spec, _ = gen_radical(k)
        rows.append(Row(f"root-two k={k}", spec, radical_text(k)))
    spec, _ = gen_rational(7, 3)
    rows.append(Row("rational 7/3", spec, "7/3"))
    rows += [
        Row("exp(2K/pi)", EXP_CATALAN, "exp(2*K/pi)"),
        Row("four-fifths", FOUR_FIFTHS, "4/5"),
        Row("root-two II", ROOT_TWO_II, "2^(1/2)"),
        Row("wallis II", analogue_type2(WALLIS), "pi/2"),
        Row("type-3", TYPE3, "8*A^12 / (e*pi^3*2^(1/3))"),
    ]
    return rows


def spec_summary(spec: ProductSpec) -> str:
    a = ", ".join(map(str, spec.a))
    b = ", ".join(map(str, spec.b))
    return f"a=[{a}] b=[{b}] E={render_exponent(spec.exponent_poly)} start={spec.start}"


def _delta_bound(x: Ball, y: Ball) -> float:
    # |x - y| <= |mid_x - mid_y| + rad_x + rad_y
    d = abs(x.mid_fraction - y.mid_fraction) + x.rad_fraction + y.rad_fraction
    return float(d)


def certify_row(row: Row, ctx: PrecCtx, cap_bits: int | None = None, perturb=None) -> RowResult:
    """Evaluate the product and the expected closed form; OK iff the balls meet.

    The expected text must also agree exactly with the closed form derived
    from the spec, otherwise the row fails.
    """
    expected_cf = parse_closed_form(row.expect)
    derived = closed_form(row.spec)
    if perturb is not None:
        expected_cf = expected_cf * RatConst(perturb)
    prod = with_escalation(lambda c: eval_product(row.spec, c).value, ctx, cap_bits)
    exp_val = with_escalation(lambda c: eval_closed_form(expected_cf, c), ctx, cap_bits)
    ok = prod.overlaps(exp_val)
    if derived.fully_reduced:
        der_val = with_escalation(lambda c: eval_closed_form(derived, c), ctx, cap_bits)
        ok = ok and der_val.overlaps(exp_val)
    return RowResult(row, prod, exp_val, print_closed_form(derived), _delta_bound(prod, exp_val), ok)


def reproduce(ctx: PrecCtx | None = None, cap_bits: int | None = None, corrupt: str | None = None) -> list:
    """Certify every identity row; ``corrupt`` names a row whose constant is perturbed by 1e-20."""
    ctx = ctx or PrecCtx()
    out = []
    for row in identity_rows():
        perturb = F(1) + F(1, 10 ** 20) if row.name == corrupt else None
        out.append(certify_row(row, ctx, cap_bits, perturb))
    return out
