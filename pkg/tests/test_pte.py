from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import PTE_DISTINCT, PTE_MULTISET, brute_pte
from wallis.arith import PrecCtx
from wallis.errors import InvalidTransform
from wallis.identities import closed_form
from wallis.closedform import eval_closed_form
from wallis.products import check_moments, eval_product
from wallis.pte import PTEQuery, PTESolution, canonical_pair, matched_order, pte_search, pte_to_spec


def pairs(sols):
    return [(s.a, s.b) for s in sols]


@pytest.mark.parametrize("key", sorted(PTE_DISTINCT))
def test_distinct_fixtures(key):
    assert pairs(pte_search(PTEQuery(*key))) == PTE_DISTINCT[key]


@pytest.mark.parametrize("key", sorted(PTE_MULTISET))
def test_multiset_fixtures(key):
    assert pairs(pte_search(PTEQuery(*key, multiset=True))) == PTE_MULTISET[key]


@pytest.mark.parametrize("order,size,height", [(1, 2, 8), (2, 3, 12), (1, 3, 6), (2, 4, 8)])
def test_agrees_with_brute_force(order, size, height):
    assert pairs(pte_search(PTEQuery(order, size, height))) == brute_pte(order, size, height)
    got = pairs(pte_search(PTEQuery(order, size, height, multiset=True)))
    assert got == brute_pte(order, size, height, multiset=True)


def test_solutions_are_valid_and_canonical():
    for sol in pte_search(PTEQuery(2, 4, 10)):
        assert matched_order(sol.a, sol.b) >= 2
        assert sol.matched_order >= 2
        assert min(sol.a + sol.b) == 0
        assert set(sol.a).isdisjoint(sol.b)
        assert canonical_pair(sol.a, sol.b) == (sol.a, sol.b)


def test_planted_solution_is_found():
    # (A, B) of order n gives (A + (B+h), B + (A+h)) of order n+1
    a, b = (0, 3), (1, 2)
    h = 5
    big_a = sorted(a + tuple(x + h for x in b))
    big_b = sorted(b + tuple(x + h for x in a))
    assert matched_order(big_a, big_b) == 2
    want = canonical_pair(big_a, big_b)
    assert want in pairs(pte_search(PTEQuery(2, 4, max(big_a + big_b))))


pair_sides = st.integers(2, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 30), min_size=n, max_size=n, unique=True),
        st.lists(st.integers(0, 30), min_size=n, max_size=n, unique=True),
    )
)


@settings(max_examples=60, deadline=None)
@given(pair_sides, st.integers(-20, 20))
def test_canonicalization_idempotent_and_invariant(sides, t):
    a, b = sides
    try:
        c = canonical_pair(a, b)
    except ValueError:
        return
    assert canonical_pair(*c) == c
    assert canonical_pair([x + t for x in b], [x + t for x in a]) == c
    hi = max(a + b)
    assert canonical_pair([hi - x for x in a], [hi - x for x in b]) == c


def test_degenerate_queries():
    assert pte_search(PTEQuery(3, 3, 20)) == []
    assert pte_search(PTEQuery(1, 2, 1)) == []
    assert len(pte_search(PTEQuery(1, 2, 5, limit=2))) == 2
    for bad in [(0, 2, 3), (1, 0, 3), (1, 2, 0)]:
        with pytest.raises(ValueError):
            PTEQuery(*bad)
    with pytest.raises(ValueError):
        PTEQuery(1, 2, 3, limit=0)
    with pytest.raises(ValueError):
        canonical_pair([1, 2], [2, 1])


def test_text():
    assert pte_search(PTEQuery(1, 2, 3))[0].text() == "(0,3) | (1,2)"


def test_pte_to_spec_type3():
    sol = pte_search(PTEQuery(3, 4, 11))[0]
    spec = pte_to_spec(sol, 3, scale=F(1, 3))
    assert check_moments(spec, 3).max_matched_order == 3
    assert spec.exponent_poly == (0, F(1, 2), F(1, 2))
    ctx = PrecCtx(128, 1e-25)
    assert eval_product(spec, ctx).value.overlaps(eval_closed_form(closed_form(spec), ctx))


def test_pte_to_spec_half_scale_wallis_like():
    spec = pte_to_spec(PTESolution((0, 3), (1, 2), 1), 1, scale=F(1, 2), shift=0)
    assert spec.a == (0, F(3, 2)) and spec.b == (F(1, 2), 1)
    ctx = PrecCtx(128, 1e-25)
    assert eval_product(spec, ctx).value.overlaps(eval_closed_form(closed_form(spec), ctx))


def test_pte_to_spec_rejections():
    sol = PTESolution((0, 3), (1, 2), 1)
    with pytest.raises(InvalidTransform):
        pte_to_spec(sol, 1, scale=0)
    with pytest.raises(InvalidTransform):
        pte_to_spec(sol, 2)
    with pytest.raises(InvalidTransform):
        pte_to_spec(sol, 1, shift=-1)
