"""Closed forms of Wallis-type products and transforms between product families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Ball, PrecCtx
from .closedform import (
    ClosedForm,
    GammaAt,
    MultiGammaAt,
    RatConst,
    SinPi,
    eval_closed_form,
)
from .errors import ConstraintViolation, InvalidTarget
from .products import (
    ProductSpec,
    _require_convergent,
    _tail,
    binom_exponent,
)
from .special import _lngamma

__all__ = [
    "closed_form",
    "closed_form_type1",
    "closed_form_type2",
    "closed_form_typen",
    "binomial_weights",
    "shift_start",
    "cancel_common",
    "analogue_type2",
    "DoubleProductResult",
    "double_product_reduce",
    "eval_double_product",
    "gen_radical",
    "gen_rational",
    "eval_closed_form",
]


def binomial_weights(exponent_poly) -> tuple:
    """Weights w_n with E(k) = sum_n w_n binom(n+k-2, n-1), n = 1..deg+1."""
    coeffs = [Fraction(c) for c in exponent_poly]
    d = len(coeffs) - 1
    basis = [binom_exponent(n) for n in range(1, d + 2)]
    weights = [Fraction(0)] * (d + 1)
    rest = coeffs[:]
    for n in range(d + 1, 0, -1):
        b = basis[n - 1]
        w = rest[n - 1] / b[n - 1]
        weights[n - 1] = w
        for m, c in enumerate(b):
            rest[m] -= w * c
    return tuple(weights)


def _level_form(spec: ProductSpec, n: int) -> ClosedForm:
    """prod_j Gamma_n(1+b_j)/Gamma_n(1+a_j): the start-1 product with E = binom(n+k-2, n-1)."""
    out = ClosedForm()
    for x in spec.b:
        out = out * MultiGammaAt(n, 1 + x)
    for x in spec.a:
        out = out / MultiGammaAt(n, 1 + x)
    return out


def closed_form(spec: ProductSpec) -> ClosedForm:
    """Closed form for any convergent spec, via the binomial basis of its exponent."""
    _require_convergent(spec)
    out = ClosedForm()
    for n, w in enumerate(binomial_weights(spec.exponent_poly), start=1):
        if w:
            out = out * _level_form(spec, n) ** w
    if spec.start == 0:
        e0 = spec.exponent(0)
        if e0:
            out = out * RatConst(spec.ratio(0)) ** e0
    return out


def _require_exponent(spec: ProductSpec, poly, label):
    if spec.exponent_poly != tuple(Fraction(c) for c in poly):
        raise ConstraintViolation(f"spec exponent is not {label}")
    _require_convergent(spec)


def closed_form_type1(spec: ProductSpec) -> ClosedForm:
    """prod Gamma(b+start)/Gamma(a+start) for an E = 1 product."""
    _require_exponent(spec, (1,), "1")
    out = ClosedForm()
    s = spec.start
    for x in spec.b:
        out = out * GammaAt(x + s)
    for x in spec.a:
        out = out / GammaAt(x + s)
    return out


def closed_form_type2(spec: ProductSpec) -> ClosedForm:
    """Barnes G form of an E = k product."""
    _require_exponent(spec, (0, 1), "k")
    return closed_form(spec)


def closed_form_typen(spec: ProductSpec, n: int) -> ClosedForm:
    """Multiple-gamma form of an E = binom(n+k-2, n-1) product.

    The result may keep ``Gamma_n`` atoms; check ``fully_reduced`` before
    evaluating it.
    """
    _require_exponent(spec, binom_exponent(n), f"binom({n}+k-2, {n - 1})")
    return closed_form(spec)


def shift_start(spec: ProductSpec) -> ProductSpec:
    """Equivalent start-1 spec for a start-0 spec (k -> k-1)."""
    if spec.start == 1:
        return spec
    # E'(k) = E(k-1)
    d = spec.degree
    new = [Fraction(0)] * (d + 1)
    for m, c in enumerate(spec.exponent_poly):
        for t in range(m + 1):
            new[t] += c * math.comb(m, t) * (-1) ** (m - t)
    return ProductSpec(tuple(x - 1 for x in spec.a), tuple(x - 1 for x in spec.b), tuple(new), 1)


def cancel_common(spec: ProductSpec) -> ProductSpec:
    """Drop shifts that appear in both a and b (keeps one pair if all cancel)."""
    a = sorted(spec.a)
    b = list(spec.b)
    keep_a = []
    for x in a:
        if x in b:
            b.remove(x)
        else:
            keep_a.append(x)
    if not keep_a:
        keep_a, b = [Fraction(0)], [Fraction(0)]
    return ProductSpec(tuple(keep_a), tuple(sorted(b)), spec.exponent_poly, spec.start)


def analogue_type2(spec1: ProductSpec) -> ProductSpec:
    """Type-II spec with E = k whose value equals the Type-I product ``spec1``.

    Uses a' = a + (b+1), b' = (a+1) + b, then cancels common shifts.
    """
    _require_exponent(spec1, (1,), "1")
    s = shift_start(spec1)
    a2 = s.a + tuple(x + 1 for x in s.b)
    b2 = tuple(x + 1 for x in s.a) + s.b
    return cancel_common(ProductSpec(a2, b2, (0, 1), 1))


@dataclass(frozen=True)
class DoubleProductResult:
    """Per-r factor of a Type-II product written as prod_{r>=0} R(r).

    ``residual`` lists ``(offset, power)`` with R(r) = prod Gamma(r+offset)**power.
    When R is a rational function of r, ``reduced`` is the Type-I spec
    (start 0) with the same value.
    """

    residual: tuple
    reducible: bool
    reduced: ProductSpec | None

    def template(self) -> str:
        num, den = [], []
        for off, p in self.residual:
            tok = f"Gamma(r+{off})" + (f"^{abs(p)}" if abs(p) != 1 else "")
            (num if p > 0 else den).append(tok)
        top = "*".join(num) if num else "1"
        if not den:
            return top
        if len(den) == 1:
            return f"{top}/{den[0]}"
        return f"{top} / ({'*'.join(den)})"


def _as_type2(spec2: ProductSpec) -> ProductSpec:
    if spec2.exponent_poly != (Fraction(0), Fraction(1)):
        raise ConstraintViolation("spec exponent is not k")
    _require_convergent(spec2)
    if spec2.start == 0:
        # the k = 0 factor has exponent 0
        return ProductSpec(spec2.a, spec2.b, spec2.exponent_poly, 1)
    return spec2


def double_product_reduce(spec2: ProductSpec) -> DoubleProductResult:
    """Rewrite prod_k ratio(k)**k as prod_{r>=0} prod_{n>=1} ratio(n+r)."""
    s = _as_type2(spec2)
    counts = {}
    for x in s.b:
        counts[1 + x] = counts.get(1 + x, 0) + 1
    for x in s.a:
        counts[1 + x] = counts.get(1 + x, 0) - 1
    residual = tuple(sorted((o, p) for o, p in counts.items() if p))
    classes = {}
    for off, p in residual:
        frac = off - math.floor(off)
        classes.setdefault(frac, []).append((off, p))
    if any(sum(p for _, p in grp) for grp in classes.values()):
        return DoubleProductResult(residual, False, None)
    # pair numerator and denominator offsets inside each class
    num_lin, den_lin = [], []
    for grp in classes.values():
        tops = sorted(o for o, p in grp if p > 0 for _ in range(p))
        bots = sorted(o for o, p in grp if p < 0 for _ in range(-p))
        for x, y in zip(tops, bots):
            # Gamma(r+x)/Gamma(r+y)
            lo, hi = (y, x) if x > y else (x, y)
            factors = [lo + t for t in range(int(hi - lo))]
            (num_lin if x > y else den_lin).extend(factors)
    if len(num_lin) != len(den_lin):
        return DoubleProductResult(residual, False, None)
    if not num_lin:
        num_lin, den_lin = [Fraction(1)], [Fraction(1)]
    reduced = cancel_common(ProductSpec(tuple(sorted(num_lin)), tuple(sorted(den_lin)), (1,), 0))
    return DoubleProductResult(residual, True, reduced)


def eval_double_product(spec2: ProductSpec, ctx: PrecCtx | None = None, rows=None) -> Ball:
    """Value of a Type-II product summed row by row from its Gamma residual.

    sum_{r=0}^{R} ln R(r) uses log-gamma values; the remaining rows equal
    sum_{k>R+1} (k-R-1) ln ratio(k), computed like a product tail.
    """
    ctx = ctx or PrecCtx()
    s = _as_type2(spec2)
    res = double_product_reduce(s)
    M = s.max_shift()
    R = rows if rows is not None else max(32, 4 * math.ceil(M) + 2)
    wp = ctx.prec_bits + 40 + R.bit_length() * 2
    total = Ball.exact(0, wp)
    lg = {}
    for r in range(R + 1):
        for off, p in res.residual:
            z = off + r
            if z not in lg:
                lg[z] = _lngamma(z, wp)
            total = total + lg[z] * p
    K = R + 1
    # rows r > R: sum_{k>K} (k-K) ln ratio(k)
    tail_spec = _ShiftedExponent(s, (-Fraction(K), Fraction(1)))
    tail, _ = _tail(tail_spec, K, 2, wp, Fraction(1, 2 ** (ctx.prec_bits + 8)))
    value = (total + tail).exp()
    return ctx.check(value, "double product value")


class _ShiftedExponent:
    """Duck-typed spec view with a replaced exponent polynomial, for tail sums."""

    def __init__(self, spec, poly):
        self.a, self.b = spec.a, spec.b
        self.exponent_poly = tuple(poly)
        self.size = spec.size
        self.degree = len(poly) - 1

    def max_shift(self):
        return max(abs(x) for x in self.a + self.b)


def gen_radical(k: int):
    """Type-I spec (start 0) for 2 cos(pi/2**(k+1)) and its closed form."""
    if k < 1:
        raise InvalidTarget("k must be >= 1")
    u, v = Fraction(1, 2 ** k), Fraction(1, 2 ** (k + 1))
    spec = ProductSpec((u, 1 - u), (v, 1 - v), (1,), 0)
    return spec, SinPi(u) / SinPi(v)


def radical_text(k: int) -> str:
    return f"sinpi(1/{2 ** k})/sinpi(1/{2 ** (k + 1)})"


def gen_rational(p: int, q: int):
    """Type-I spec converging to p/q, and the rational closed form.

    prod_{n>=1} (n+1)(n+(p-q)/q) / (n (n+p/q)) telescopes to p/q.
    """
    if q == 0:
        raise InvalidTarget("q must be nonzero")
    t = Fraction(p, q)
    if t <= 0:
        raise InvalidTarget(f"p/q = {t} must be positive, since (p-q)/q must exceed -1")
    spec = cancel_common(ProductSpec((Fraction(1), t - 1), (Fraction(0), t), (1,), 1))
    return spec, RatConst(t)
