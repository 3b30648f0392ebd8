"""Wallis-type products and their certified evaluation.

A product is

    prod_{k >= start} [ (k+a_1)...(k+a_i) / ((k+b_1)...(k+b_i)) ] ** E(k)

with rational shifts and an integer-valued polynomial exponent ``E``.  It
converges iff the power sums of the shifts agree through order
``deg(E) + 1``.  Evaluation sums ``E(k) * ln ratio(k)`` exactly-rounded up to
a cut-off ``K`` and adds the remaining tail in closed form through Hurwitz
zeta values, using

    ln ratio(k) = sum_j (-1)**(j-1) (S_a(j) - S_b(j)) / (j k**j),   k > max|shift|.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import Ball, PrecCtx, rat_pow_sum
from .errors import ConstraintViolation, IncompatibleSpecs, InvalidSpec
from .special import _fbound, _hurwitz

__all__ = [
    "ProductSpec",
    "MomentRow",
    "MomentReport",
    "EvalReport",
    "check_moments",
    "required_order",
    "binom_exponent",
    "eval_product",
    "multiply_specs",
    "partial_log_sum",
    "brute_force_log",
]

CHUNK = 256


def _poly_eval(coeffs, k) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * k + c
    return acc


def _strip(coeffs):
    coeffs = [Fraction(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs) if coeffs else (Fraction(0),)


@dataclass(frozen=True)
class ProductSpec:
    a: tuple
    b: tuple
    exponent_poly: tuple = (Fraction(1),)
    start: int = 1

    def __post_init__(self):
        a = tuple(Fraction(x) for x in self.a)
        b = tuple(Fraction(x) for x in self.b)
        e = _strip(self.exponent_poly)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "exponent_poly", e)
        if self.start not in (0, 1):
            raise InvalidSpec(f"start must be 0 or 1, got {self.start}")
        if len(a) != len(b) or not a:
            raise InvalidSpec("a and b must be non-empty lists of equal length")
        for x in a + b:
            if x <= -self.start:
                raise InvalidSpec(
                    f"shift {x} gives a non-positive factor k + ({x}) at k = {self.start}"
                )
        d = len(e) - 1
        if e[-1] < 0:
            raise InvalidSpec("exponent polynomial must have a nonnegative leading coefficient")
        # integer-valued on d+1 consecutive integers => integer-valued everywhere;
        # scan up to a Cauchy root bound for nonnegativity
        top = self.start + d + 1
        if d > 0:
            lead = e[-1]
            top = max(top, self.start + math.ceil(1 + max(abs(c / lead) for c in e[:-1])))
        for k in range(self.start, top + 1):
            v = _poly_eval(e, k)
            if v.denominator != 1 or v < 0:
                raise InvalidSpec(f"exponent E({k}) = {v} is not a nonnegative integer")

    @property
    def degree(self) -> int:
        return len(self.exponent_poly) - 1

    @property
    def size(self) -> int:
        return len(self.a)

    def exponent(self, k) -> Fraction:
        return _poly_eval(self.exponent_poly, k)

    def ratio(self, k) -> Fraction:
        num = Fraction(1)
        for x in self.a:
            num *= k + x
        den = Fraction(1)
        for x in self.b:
            den *= k + x
        return num / den

    def max_shift(self) -> Fraction:
        return max(abs(x) for x in self.a + self.b)


@dataclass(frozen=True)
class MomentRow:
    order: int
    sum_a: Fraction
    sum_b: Fraction

    @property
    def equal(self) -> bool:
        return self.sum_a == self.sum_b


@dataclass(frozen=True)
class MomentReport:
    rows: tuple
    max_matched_order: int

    def row(self, j) -> MomentRow:
        return self.rows[j - 1]


@dataclass(frozen=True)
class EvalReport:
    log_partial: Ball
    tail: Ball
    value: Ball
    K_used: int
    constraint_order_used: int
    tail_terms: int = 0
    log_total: Ball = field(default=None, repr=False)


def check_moments(spec: ProductSpec, j_max: int) -> MomentReport:
    """Exact power-sum comparison of the shifts for orders 1..j_max."""
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    rows = tuple(
        MomentRow(j, rat_pow_sum(spec.a, j), rat_pow_sum(spec.b, j))
        for j in range(1, j_max + 1)
    )
    matched = 0
    for row in rows:
        if not row.equal:
            break
        matched = row.order
    return MomentReport(rows, matched)


def required_order(spec: ProductSpec) -> int:
    return spec.degree + 1


def binom_exponent(n: int) -> tuple:
    """Monomial coefficients of binom(n+k-2, n-1) = k(k+1)...(k+n-2)/(n-1)!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    coeffs = [Fraction(1)]
    for i in range(n - 1):
        # multiply by (k + i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for m, c in enumerate(coeffs):
            nxt[m] += c * i
            nxt[m + 1] += c
        coeffs = nxt
    f = math.factorial(n - 1)
    return tuple(c / f for c in coeffs)


def _require_convergent(spec: ProductSpec) -> int:
    r = required_order(spec)
    report = check_moments(spec, r)
    if report.max_matched_order < r:
        bad = report.row(report.max_matched_order + 1)
        raise ConstraintViolation(
            f"order {bad.order} power sums differ ({bad.sum_a} != {bad.sum_b}); "
            f"exponent of degree {spec.degree} needs orders 1..{r}"
        )
    return r


def _chunk_sum(args):
    spec, lo, hi, wp = args
    acc = Ball.exact(0, wp)
    for k in range(lo, hi):
        e = spec.exponent(k)
        if e == 0:
            continue
        acc = acc + Ball.exact(spec.ratio(k), wp).log() * e
    return acc


def _tree_sum(parts, wp):
    if not parts:
        return Ball.exact(0, wp)
    while len(parts) > 1:
        paired = [parts[i] + parts[i + 1] for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            paired.append(parts[-1])
        parts = paired
    return parts[0]


def partial_log_sum(spec: ProductSpec, K: int, prec=128, workers=1) -> Ball:
    """Certified sum_{k=start}^{K} E(k) ln ratio(k), no tail and no constraint check.

    The range is cut into fixed chunks reduced by a fixed pairwise tree, so
    the result is bit-identical for any ``workers``.
    """
    bounds = [(lo, min(lo + CHUNK, K + 1)) for lo in range(spec.start, K + 1, CHUNK)]
    jobs = [(spec, lo, hi, prec) for lo, hi in bounds]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk_sum, jobs))
    else:
        parts = [_chunk_sum(job) for job in jobs]
    return _tree_sum(parts, prec)


def brute_force_log(spec: ProductSpec, K: int) -> float:
    """Float64 partial log-sum up to K, for large instrumented runs."""
    k = np.arange(spec.start, K + 1, dtype=np.float64)
    logs = np.zeros_like(k)
    for x in spec.a:
        logs += np.log1p(float(x) / k) if spec.start > 0 else np.log(k + float(x))
    for x in spec.b:
        logs -= np.log1p(float(x) / k) if spec.start > 0 else np.log(k + float(x))
    e = np.zeros_like(k)
    for c in reversed(spec.exponent_poly):
        e = e * k + float(c)
    return float(np.sum(e * logs))


def _tail(spec: ProductSpec, K: int, r: int, wp: int, target: Fraction):
    """sum_{k>K} E(k) ln ratio(k) as a ball, and the number of orders used."""
    M = spec.max_shift()
    if M == 0:
        return Ball.exact(0, wp), 0
    i = spec.size
    d = spec.degree
    C = sum(abs(c) for c in spec.exponent_poly)
    q = M / (K + 1)
    zetas = {}
    tail = Ball.exact(0, wp)
    j = r
    while True:
        j += 1
        delta = rat_pow_sum(spec.a, j) - rat_pow_sum(spec.b, j)
        if delta:
            coef = Fraction((-1) ** (j - 1)) * delta / j
            for m, c in enumerate(spec.exponent_poly):
                if c == 0:
                    continue
                s = j - m
                if s not in zetas:
                    zetas[s] = _hurwitz(Fraction(s), Fraction(K + 1), wp)
                tail = tail + zetas[s] * (coef * c)
        # sum_{k>K} C k^d sum_{l>j} 2i M^l/(l k^l)
        #   <= C 2i M^(j+1) / ((j+1)(1-q)) * K^(d-j) / (j-d)
        rem = C * 2 * i * M ** (j + 1) / ((j + 1) * (1 - q)) * Fraction(K) ** (d - j) / (j - d)
        if rem <= target:
            break
    return tail.inflate(_fbound(rem, wp)), j - r


def eval_product(spec: ProductSpec, ctx: PrecCtx | None = None, terms=None, tail=True, workers=1) -> EvalReport:
    """Certified value of the infinite product.

    Raises ConstraintViolation if the power sums do not match through the
    order the exponent needs, and ToleranceNotMet if the final radius
    exceeds ``ctx.target_abs_tol``.
    """
    ctx = ctx or PrecCtx()
    r = _require_convergent(spec)
    M = spec.max_shift()
    K = terms if terms is not None else max(64, 4 * math.ceil(M))
    K = max(K, spec.start)
    if tail:
        K = max(K, 2 * math.ceil(M) + 1)
    wp = ctx.prec_bits + 32 + K.bit_length() * (spec.degree + 1)
    log_partial = partial_log_sum(spec, K, wp, workers)
    if tail:
        est = abs(log_partial.mid_fraction)
        scale = Fraction(math.exp(min(float(est), 700))) if est > 1 else Fraction(1)
        target = min(Fraction(1, 2 ** (ctx.prec_bits + 8)), Fraction(ctx.target_abs_tol) / (16 * scale))
        tail_ball, used = _tail(spec, K, r, wp, target)
    else:
        tail_ball, used = Ball.exact(0, wp), 0
    total = log_partial + tail_ball
    value = total.exp()
    ctx.check(value, "product value")
    return EvalReport(log_partial, tail_ball, value, K, r, used, total)


def multiply_specs(s1: ProductSpec, s2: ProductSpec) -> ProductSpec:
    """Spec whose product is the product of the two limits."""
    if s1.exponent_poly != s2.exponent_poly or s1.start != s2.start:
        raise IncompatibleSpecs("specs must share exponent polynomial and start index")
    return ProductSpec(s1.a + s2.a, s1.b + s2.b, s1.exponent_poly, s1.start)
