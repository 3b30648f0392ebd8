from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallis.arith import Ball, PrecCtx, parse_rat, rat_pow_sum, with_escalation
from wallis.errors import DomainError, SpecParseError, ToleranceNotMet

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6)
positive = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10 ** 6)


def mp_ref(value, err=Fraction(1, 10 ** 70)):
    with mpmath.workdps(90):
        return Ball.exact(Fraction(mpmath.nstr(value, 85, min_fixed=-1, max_fixed=1)), 320).inflate(err)


@given(fractions, fractions)
def test_exact_ops_contain_rational_result(x, y):
    bx, by = Ball.exact(x, 64), Ball.exact(y, 64)
    assert (bx + by).contains(x + y)
    assert (bx - by).contains(x - y)
    assert (bx * by).contains(x * y)
    if y != 0:
        assert (bx / by).contains(x / y)


@given(fractions, fractions, fractions)
def test_operations_stay_enclosing_with_radius(x, y, z):
    a = Ball.exact(x, 53).inflate(Fraction(1, 10 ** 6))
    for shift in (Fraction(-1, 10 ** 6), Fraction(0), Fraction(1, 10 ** 6)):
        assert (a * y + z).contains((x + shift) * y + z)


@settings(max_examples=60)
@given(positive)
def test_log_exp_sqrt_enclose_high_precision_values(x):
    b = Ball.exact(x, 96)
    with mpmath.workdps(90):
        mx = mpmath.mpf(x.numerator) / x.denominator
        assert b.log().overlaps(mp_ref(mpmath.log(mx)))
        assert b.sqrt().overlaps(mp_ref(mpmath.sqrt(mx)))
        if x < 50:
            assert b.exp().overlaps(mp_ref(mpmath.exp(mx)))


@settings(max_examples=40)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=1000))
def test_sin_cos_enclose(x):
    b = Ball.exact(x, 96)
    with mpmath.workdps(90):
        mx = mpmath.mpf(x.numerator) / x.denominator
        assert b.sin().overlaps(mp_ref(mpmath.sin(mx)))
        assert b.cos().overlaps(mp_ref(mpmath.cos(mx)))


def test_pow_rat_and_pow_int():
    two = Ball.exact(2, 128)
    assert two.pow_int(10).contains(1024)
    assert two.pow_int(-2).contains(Fraction(1, 4))
    cube_root = two.pow_rat(Fraction(1, 3))
    assert cube_root.pow_int(3).contains(2)
    assert (two ** Fraction(1, 2)).pow_int(2).contains(2)


def test_domain_errors():
    with pytest.raises(DomainError):
        Ball.exact(0, 64).log()
    with pytest.raises(DomainError):
        Ball.exact(-1, 64).log()
    with pytest.raises(DomainError):
        Ball.exact(1, 64) / Ball.exact(0, 64).inflate(Fraction(1, 10))


def test_radius_and_containment_queries():
    b = Ball.exact(Fraction(1, 3), 64)
    assert not b.is_exact()
    assert b.contains(Fraction(1, 3))
    assert Ball.exact(1, 64).is_exact()
    wide = Ball.exact(1, 64).inflate(Fraction(1, 2))
    assert wide.contains(Fraction(3, 2)) and not wide.contains(Fraction(8, 5))
    assert wide.overlaps(Ball.exact(2, 64).inflate(Fraction(1, 2)))
    assert not wide.overlaps(Ball.exact(3, 64))
    assert wide.contains_zero() is False
    assert Ball.exact(0, 64).inflate(Fraction(1, 10)).contains_zero()


def test_to_str_shows_only_certified_digits():
    b = Ball.exact(Fraction(1, 3), 128).inflate(Fraction(1, 10 ** 20))
    s = b.to_str()
    mid, rad = s.split(" ± ")
    assert mid.startswith("0.3333333333333333333")
    assert len(mid) < 30
    assert rad.endswith("e-20")


def test_prec_ctx_check_and_escalation():
    ctx = PrecCtx(64, 1e-30)
    with pytest.raises(ToleranceNotMet):
        ctx.check(Ball.exact(Fraction(1, 3), 64))
    calls = []

    def fn(c):
        calls.append(c.prec_bits)
        return c.check(Ball.exact(Fraction(1, 3), c.prec_bits))

    value = with_escalation(fn, ctx)
    assert calls == [64, 128]
    assert value.contains(Fraction(1, 3))
    with pytest.raises(ToleranceNotMet):
        with_escalation(fn, PrecCtx(32, 1e-60), cap_bits=64)
    with pytest.raises(ValueError):
        PrecCtx(8)
    with pytest.raises(ValueError):
        PrecCtx(64, 0)


def test_parse_rat():
    assert parse_rat("-3/4") == Fraction(-3, 4)
    assert parse_rat(" 7 ") == 7
    assert parse_rat("0.25") == Fraction(1, 4)
    for bad in ("1/0", "", "x", "1/2/3"):
        with pytest.raises(SpecParseError):
            parse_rat(bad)


def test_rat_pow_sum():
    assert rat_pow_sum([Fraction(-1, 2), Fraction(1, 2)], 2) == Fraction(1, 2)
    assert rat_pow_sum([0, 0], 2) == 0
    with pytest.raises(ValueError):
        rat_pow_sum([], 1)
