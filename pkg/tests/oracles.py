"""Reference values and independent routes used by the tests.

Decimal strings were produced once with mpmath at 60 significant digits and
frozen here; the functions below compute the same quantities by routes that
share no code with the package.
"""

from decimal import Decimal
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from wallis.arith import Ball

PI = "3.141592653589793238462643383279502884197169399375105821"
E = "2.718281828459045235360287471352662497757247093699959575"
EULER_GAMMA = "0.5772156649015328606065120900824024310421593359399235988"
CATALAN = "0.9159655941772190150546035149323841107741493742816721343"
GLAISHER = "1.282427129100622636875342568869791727767688927325001192"
ZETA_PRIME_MINUS1 = "-0.1654211437004509292139196602427806427640363803352017837"
PHI = "1.618033988749894848204586834365638117720309179805762862"
EXP_2K_PI = "1.791622812069593424730547089342982432268134393132954768"
TYPE3_VALUE = "1.490716010287679221306125406012620546368719130873346815"

LNGAMMA = {
    Fraction(1, 3): "0.9854206469277670691871740369779613917355564963858858542",
    Fraction(5, 2): "0.2846828704729191596324946696827019243201376955598947293",
    Fraction(7, 10): "0.2608672465316665143857324170167595781424621621257028993",
    Fraction(40, 3): "20.83361598642660172932277584445522420980222783485295235",
    Fraction(1, 100): "4.599479878042021722513945411008748087261001413385289652",
}

LN_BARNES_G = {
    Fraction(1, 3): "-0.9160944434130750694895699173612811046232446648645303747",
    Fraction(2, 3): "-0.252508788103921374892195994925375057329957444339846215",
    Fraction(3, 2): "0.06693188843500470427402868586818440410224830499103585297",
    Fraction(5, 4): "0.06301661850380737394239687816470237115578692490465381343",
    Fraction(17, 5): "0.1677290990738404966402293427394936832321587278226027367",
    Fraction(1, 7): "-1.833929966296999449016913121111170181266992375630786323",
}

HURWITZ = {
    (2, Fraction(1)): "1.644934066848226436472415166646025189218949901206798438",
    (3, Fraction(1, 2)): "8.414398322117159997798167130580149935354904046383492173",
    (5, Fraction(7, 3)): "0.01798527691887506223678644729249365169335607906750435895",
    (2, Fraction(65)): "0.01550356543933893015574400307135046450730050703443861374",
}

# brute-force enumeration (pairs of subsets, all power sums compared),
# run once and frozen; (order, size, height) -> canonical solutions
PTE_DISTINCT = {
    (1, 2, 3): [((0, 3), (1, 2))],
    (1, 2, 5): [((0, 3), (1, 2)), ((0, 4), (1, 3)), ((0, 5), (1, 4)), ((0, 5), (2, 3))],
    (2, 3, 7): [((0, 4, 5), (1, 2, 6))],
    (2, 3, 9): [((0, 4, 5), (1, 2, 6)), ((0, 5, 7), (1, 3, 8))],
    (3, 4, 11): [((0, 4, 7, 11), (1, 2, 9, 10))],
    (2, 4, 6): [],
}
PTE_MULTISET = {
    (1, 2, 3): [((0, 2), (1, 1)), ((0, 3), (1, 2))],
    (2, 3, 6): [((0, 3, 3), (1, 1, 4)), ((0, 4, 5), (1, 2, 6))],
}


def ref(text: str, err=Fraction(1, 10 ** 52)) -> Ball:
    """Ball around a frozen decimal, wide enough for its last digits."""
    return Ball.exact(Fraction(Decimal(text)), 256).inflate(err)


def agrees(ball: Ball, text: str) -> bool:
    return ball.overlaps(ref(text))


def _arctan_inv_bracket(n: int, terms: int):
    """Alternating-series bracket for arctan(1/n)."""
    s = Fraction(0)
    for k in range(terms):
        s += Fraction((-1) ** k, (2 * k + 1) * n ** (2 * k + 1))
    nxt = s + Fraction((-1) ** terms, (2 * terms + 1) * n ** (2 * terms + 1))
    return min(s, nxt), max(s, nxt)


def machin_pi_bracket(terms: int = 40):
    """pi = 16 arctan(1/5) - 4 arctan(1/239), as an exact rational bracket."""
    lo5, hi5 = _arctan_inv_bracket(5, terms)
    lo239, hi239 = _arctan_inv_bracket(239, terms)
    return 16 * lo5 - 4 * hi239, 16 * hi5 - 4 * lo239


def factorial_e_bracket(n: int = 40):
    """sum_{k<=n} 1/k! < e < that + 1/(n! n)."""
    s, f = Fraction(0), 1
    for k in range(n + 1):
        if k:
            f *= k
        s += Fraction(1, f)
    return s, s + Fraction(1, f * n)


def catalan_bracket(n: int):
    """Consecutive partial sums of sum (-1)^k/(2k+1)^2 bracket K."""
    s = sum((Fraction((-1) ** k, (2 * k + 1) ** 2) for k in range(n)), Fraction(0))
    t = s + Fraction((-1) ** n, (2 * n + 1) ** 2)
    return min(s, t), max(s, t)


def brute_pte(order, size, height, multiset=False):
    """Every canonical solution by comparing all pairs of subsets."""
    pick = combinations_with_replacement if multiset else combinations
    subs = list(pick(range(height + 1), size))
    out = set()
    for x in subs:
        for y in subs:
            if x < y and not set(x) & set(y) and all(
                sum(v ** j for v in x) == sum(v ** j for v in y) for j in range(1, order + 1)
            ):
                lo = min(x + y)
                a = sorted(v - lo for v in x)
                b = sorted(v - lo for v in y)
                hi = max(a + b)
                ra = sorted(hi - v for v in a)
                rb = sorted(hi - v for v in b)
                out.add(min(tuple(sorted([tuple(a), tuple(b)])), tuple(sorted([tuple(ra), tuple(rb)]))))
    return sorted(out)


def brute_partial_product(spec, K: int) -> Fraction:
    """Exact partial product up to K (small K only)."""
    p = Fraction(1)
    for k in range(spec.start, K + 1):
        p *= spec.ratio(k) ** int(spec.exponent(k))
    return p
