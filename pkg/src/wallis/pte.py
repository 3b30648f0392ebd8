"""Prouhet-Tarry-Escott solutions and their use as product shifts.

A solution of order n and size i is a pair of disjoint collections a, b of
i integers with equal power sums of orders 1..n.  By default each side has
distinct entries; ``multiset=True`` also allows repeats such as (0,2)/(1,1).
Solutions are reported in a canonical form: smallest entry 0, ``a``
lexicographically before ``b``, and the lexicographically smaller of the
solution and its reflection ``x -> max - x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .errors import InvalidTransform
from .products import ProductSpec, binom_exponent

__all__ = ["PTEQuery", "PTESolution", "pte_search", "pte_to_spec", "canonical_pair", "matched_order"]


@dataclass(frozen=True)
class PTEQuery:
    order: int
    size: int
    height: int
    limit: int | None = None
    multiset: bool = False

    def __post_init__(self):
        if self.order < 1 or self.size < 1 or self.height < 1:
            raise ValueError("order, size and height must be >= 1")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be >= 1")


@dataclass(frozen=True)
class PTESolution:
    a: tuple
    b: tuple
    matched_order: int

    def text(self) -> str:
        return f"({','.join(map(str, self.a))}) | ({','.join(map(str, self.b))})"


def matched_order(a, b, cap=None) -> int:
    """Largest n with equal power sums for orders 1..n (capped)."""
    cap = cap if cap is not None else len(a)
    n = 0
    while n < cap and sum(x ** (n + 1) for x in a) == sum(x ** (n + 1) for x in b):
        n += 1
    return n


def canonical_pair(a, b):
    """Canonical representative under common-element removal, shift, swap and reflection."""
    a, b = list(a), list(b)
    for x in list(a):
        if x in b:
            a.remove(x)
            b.remove(x)
    if not a:
        raise ValueError("solution is trivial after removing common elements")
    lo = min(a + b)
    a = sorted(x - lo for x in a)
    b = sorted(x - lo for x in b)
    hi = max(a + b)
    ra = sorted(hi - x for x in a)
    rb = sorted(hi - x for x in b)
    return min(tuple(sorted([tuple(a), tuple(b)])), tuple(sorted([tuple(ra), tuple(rb)])))


def pte_search(query: PTEQuery) -> list:
    """All canonical solutions with entries in [0, height], sorted.

    Subsets containing 0 are hashed by their power-sum vector; every other
    subset is matched against that table, so each canonical pair (which has
    0 on one side) is found exactly.
    """
    n, i, H = query.order, query.size, query.height
    pick = combinations_with_replacement if query.multiset else combinations
    if n >= i:
        return []
    table = {}
    for combo in pick(range(0 if query.multiset else 1, H + 1), i - 1):
        s = (0,) + combo
        key = tuple(sum(x ** j for x in s) for j in range(1, n + 1))
        table.setdefault(key, []).append(s)
    found = set()
    for s in pick(range(1, H + 1), i):
        key = tuple(sum(x ** j for x in s) for j in range(1, n + 1))
        for t in table.get(key, ()):
            if set(s).isdisjoint(t):
                found.add(canonical_pair(t, s))
    out = [PTESolution(a, b, matched_order(a, b, cap=i - 1 if i > 1 else 1)) for a, b in sorted(found)]
    if query.limit is not None:
        out = out[: query.limit]
    return out


def pte_to_spec(sol: PTESolution, n: int, scale=1, shift=0, start: int = 1) -> ProductSpec:
    """Type-n product spec with shifts scale*x + shift and E = binom(n+k-2, n-1)."""
    scale, shift = Fraction(scale), Fraction(shift)
    if scale == 0:
        raise InvalidTransform("scale must be nonzero")
    if sol.matched_order < n:
        raise InvalidTransform(f"solution matches power sums only to order {sol.matched_order} < {n}")
    a = tuple(scale * x + shift for x in sol.a)
    b = tuple(scale * x + shift for x in sol.b)
    if min(a + b) <= -start:
        raise InvalidTransform(f"shifts must exceed {-start} so every factor is positive")
    return ProductSpec(a, b, binom_exponent(n), start)
