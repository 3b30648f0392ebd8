"""Acceptance criteria 1-11, one test each.

Every test records its outcome in ``RESULTS``; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.
"""

import functools
import random
import time
from fractions import Fraction as F

import pytest
from click.testing import CliRunner

from oracles import PTE_DISTINCT, PTE_MULTISET, TYPE3_VALUE, agrees, brute_pte
from wallis import special
from wallis.arith import Ball, PrecCtx, with_escalation
from wallis.catalog import EXP_CATALAN, FOUR_FIFTHS, GOLDEN, ROOT_TWO_II, TYPE3, TYPE3_LINEAR, WALLIS
from wallis.cli import cli
from wallis.closedform import eval_closed_form, parse_closed_form
from wallis.errors import ConstraintViolation
from wallis.identities import analogue_type2, double_product_reduce, gen_radical, gen_rational
from wallis.products import ProductSpec, brute_force_log, eval_product
from wallis.pte import PTEQuery, canonical_pair, matched_order, pte_search

RESULTS = {}


def criterion(n, desc):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS[n] = (False, desc)
                raise
            RESULTS[n] = (True, desc)

        return run

    return wrap


def certified(spec, tol, prec=128):
    """Product ball with radius <= tol, escalating precision if needed."""
    return with_escalation(lambda c: c.check(eval_product(spec, c).value), PrecCtx(prec, tol))


def cf_value(text, tol, prec=128):
    return with_escalation(lambda c: eval_closed_form(parse_closed_form(text), c), PrecCtx(prec, tol))


@criterion(1, "Wallis product certified against pi/2 at 1e-30, 128 bits, K <= 1e4")
def test_c01_wallis(spec_dir):
    t0 = time.perf_counter()
    ctx = PrecCtx(128, 1e-30)
    rep = eval_product(WALLIS, ctx)
    assert rep.K_used <= 10 ** 4
    assert rep.value.rad_le(F(1, 10 ** 30))
    half_pi = special.const_pi(ctx) / 2
    assert rep.value.overlaps(half_pi)
    result = CliRunner().invoke(cli, ["compare", "--tol", "1e-30", "--prec", "128", str(spec_dir / "wallis.spec")])
    assert result.exit_code == 0 and "verdict: OK" in result.output
    assert time.perf_counter() - t0 < 1.0


@criterion(2, "golden-ratio product contains (1+sqrt 5)/2 at 1e-30")
def test_c02_golden():
    value = certified(GOLDEN, 1e-30)
    phi = (Ball.exact(5, 192).sqrt() + 1) / 2
    assert value.overlaps(phi)
    assert value.rad_le(F(1, 10 ** 30))


@criterion(3, "nested-radical products k = 1..6 contain 2cos(pi/2^(k+1)) at 1e-30")
def test_c03_radicals():
    ctx = PrecCtx(192, 1e-40)
    pi = special.const_pi(ctx)
    for k in range(1, 7):
        spec, _ = gen_radical(k)
        value = certified(spec, 1e-30)
        assert value.overlaps(2 * (pi / 2 ** (k + 1)).cos())
        # nested square roots, an independent route
        nest = Ball.exact(0, 192)
        for _ in range(k):
            nest = (nest + 2).sqrt()
        assert value.overlaps(nest)
    # the three displayed instances, written over the integer denominators 4, 8, 16
    for k, m in [(1, 4), (2, 8), (3, 16)]:
        spec, _ = gen_radical(k)
        shown = ProductSpec([F(2, m), F(m - 2, m)], [F(1, m), F(m - 1, m)], start=0)
        assert spec == shown


@criterion(4, "20 random rational targets p/q (p, q <= 50) contained at 1e-25")
def test_c04_rationals():
    rng = random.Random(4)
    for _ in range(20):
        p, q = rng.randint(1, 50), rng.randint(1, 50)
        spec, _ = gen_rational(p, q)
        value = certified(spec, 1e-25)
        assert value.contains(F(p, q)), (p, q)


@criterion(5, "four Type-II identities certify at 1e-25; 2K/pi cross-checked from K and pi")
def test_c05_type2_suite():
    rows = [
        (EXP_CATALAN, "exp(2*K/pi)"),
        (FOUR_FIFTHS, "4/5"),
        (ROOT_TWO_II, "2^(1/2)"),
        (analogue_type2(WALLIS), "pi/2"),
    ]
    for spec, text in rows:
        value = certified(spec, 1e-25)
        assert value.overlaps(cf_value(text, 1e-25)), text
        assert value.rad_le(F(1, 10 ** 25))
    ctx = PrecCtx(128, 1e-30)
    log_value = certified(EXP_CATALAN, 1e-30).log()
    assert log_value.overlaps(2 * special.const_catalan(ctx) / special.const_pi(ctx))
    assert certified(FOUR_FIFTHS, 1e-25).contains(F(4, 5))
    assert certified(ROOT_TWO_II, 1e-25).pow_int(2).contains(2)


@criterion(6, "Type-3 product (E=k^2) at 1e-20 and its E=k companion equals pi^2/8 at 1e-25")
def test_c06_type3():
    t0 = time.perf_counter()
    value = certified(TYPE3, 1e-20)
    assert value.rad_le(F(1, 10 ** 20))
    assert value.overlaps(cf_value("8*A^12/(e*pi^3*2^(1/3))", 1e-20))
    assert agrees(value.inflate(F(1, 10 ** 20)), TYPE3_VALUE)
    linear = certified(TYPE3_LINEAR, 1e-25)
    pi = special.const_pi(PrecCtx(128, 1e-30))
    assert linear.overlaps(pi * pi / 8)
    assert time.perf_counter() - t0 < 10.0


def _random_type1(rng):
    n = rng.randint(1, 3)
    a = [F(rng.randint(-11, 36), 12) for _ in range(n)]
    b = [F(rng.randint(-11, 36), 12) for _ in range(n)]
    b[-1] += sum(a) - sum(b)
    if min(a + b) <= -1:
        return None
    return ProductSpec(a, b)


@criterion(7, "analogue_type2 equivalence on 100 random specs; double-product reduction and irreducibility")
def test_c07_transforms():
    rng = random.Random(7)
    ctx = PrecCtx(96, 1e-20)
    done = 0
    while done < 100:
        spec = _random_type1(rng)
        if spec is None:
            continue
        assert eval_product(analogue_type2(spec), ctx).value.overlaps(eval_product(spec, ctx).value), spec
        done += 1
    res = double_product_reduce(ROOT_TWO_II)
    catalan_root_two = ProductSpec([F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)], start=0)
    assert res.reducible and res.reduced == catalan_root_two
    assert not double_product_reduce(EXP_CATALAN).reducible


@criterion(8, "divergent Wallis constants with E=k raise; partial logs at K=1e3 and 1e6 differ by > 1e-3")
def test_c08_divergence():
    bad = ProductSpec(WALLIS.a, WALLIS.b, (0, 1))
    with pytest.raises(ConstraintViolation):
        eval_product(bad, PrecCtx(128, 1e-25))
    gap = abs(brute_force_log(bad, 10 ** 3) - brute_force_log(bad, 10 ** 6))
    assert gap > 1e-3


@criterion(9, "special-function suite: reflection, recurrences, G duplication, K and A digits")
def test_c09_special_functions():
    ctx = PrecCtx(128, 1e-30)
    rng = random.Random(9)
    for _ in range(50):
        z = F(rng.randint(1, 400), rng.randint(2, 97))
        if z.denominator == 1:
            z += F(1, 3)
        assert special.check_reflection(z, ctx).contains_zero()
    for _ in range(50):
        x = F(rng.randint(1, 2000), rng.randint(1, 300))
        lg = special.lngamma(x, ctx)
        assert (special.lngamma(x + 1, ctx) - lg - Ball.exact(x, 160).log()).contains_zero()
        assert (special.barnes_lng(x + 1, ctx) - special.barnes_lng(x, ctx) - lg).contains_zero()
    for z in (F(1, 2), F(3, 4), F(1)):
        assert special.check_g_duplication(z, ctx).contains_zero()
    assert special.const_catalan(ctx).to_str().startswith("0.915965594177")
    assert special.const_glaisher(ctx).to_str().startswith("1.2824271291")


@criterion(10, "PTE search matches frozen brute-force fixtures, finds planted solutions, moments exact")
def test_c10_pte():
    assert [(s.a, s.b) for s in pte_search(PTEQuery(1, 2, 3))] == [((0, 3), (1, 2))]
    for key, want in PTE_DISTINCT.items():
        got = pte_search(PTEQuery(*key))
        assert [(s.a, s.b) for s in got] == want
        for s in got:
            assert matched_order(s.a, s.b) >= key[0]
    for key, want in PTE_MULTISET.items():
        assert [(s.a, s.b) for s in pte_search(PTEQuery(*key, multiset=True))] == want
    assert [(s.a, s.b) for s in pte_search(PTEQuery(2, 3, 10))] == brute_pte(2, 3, 10)
    # planted: (A + (B+h), B + (A+h)) raises the order by one
    for a, b, h in [((0, 3), (1, 2), 4), ((0, 4, 5), (1, 2, 6), 7)]:
        big_a = a + tuple(x + h for x in b)
        big_b = b + tuple(x + h for x in a)
        order = matched_order(a, b) + 1
        assert matched_order(big_a, big_b) >= order
        found = [(s.a, s.b) for s in pte_search(PTEQuery(order, len(big_a), max(big_a + big_b)))]
        assert canonical_pair(big_a, big_b) in found


@criterion(11, "reproduce exits 0 with every row OK at default settings in < 60 s")
def test_c11_reproduce():
    t0 = time.perf_counter()
    result = CliRunner().invoke(cli, ["reproduce"])
    elapsed = time.perf_counter() - t0
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines and all(line.endswith(" OK") for line in lines)
    assert elapsed < 60.0
