"""Certified special functions on the positive real axis.

``lngamma``, ``hurwitz_zeta`` and ``barnes_lng`` accept an exact
``Fraction`` (preferred: the shifted products stay exact and cost a single
logarithm) or a :class:`~wallis.arith.Ball`.  All error terms are rigorous:
the Stirling and Euler-Maclaurin remainders are bounded by the magnitude of
the first omitted (respectively last retained) correction term, which holds
because the relevant derivatives keep a fixed sign on the summation range.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

import mpmath.libmp as L

from .arith import Ball, PrecCtx, RAD_PREC, _radd, _rup, _ulps
from .errors import DomainError

__all__ = [
    "bernoulli",
    "const_pi",
    "const_e",
    "const_ln2",
    "const_gamma",
    "const_catalan",
    "const_glaisher",
    "lngamma",
    "hurwitz_zeta",
    "zeta_deriv_at_minus1",
    "barnes_lng",
    "check_reflection",
    "check_g_duplication",
    "glaisher_limit",
    "catalan_partial_sum",
]

GUARD = 16


def _wp(ctx) -> int:
    if isinstance(ctx, PrecCtx):
        return ctx.prec_bits + GUARD
    return int(ctx)


# -- Bernoulli numbers ---------------------------------------------------

class _BernoulliTable:
    """B_0, B_1 = -1/2, B_2, ... as exact Fractions, extended on demand."""

    def __init__(self):
        self._values = [Fraction(1), Fraction(-1, 2)]
        self._lock = threading.Lock()

    def __getitem__(self, m: int) -> Fraction:
        values = self._values
        if m < len(values):
            return values[m]
        with self._lock:
            self._extend(m)
        return self._values[m]

    def _extend(self, m):
        values = list(self._values)
        while len(values) <= m:
            n = len(values)
            if n % 2:
                values.append(Fraction(0))
                continue
            # sum_{k<=n} C(n+1, k) B_k = 0, skipping the odd zeros
            s = Fraction(n + 1) * values[1]
            for k in range(0, n, 2):
                s += math.comb(n + 1, k) * values[k]
            values.append(-s / (n + 1))
        self._values = values


bernoulli = _BernoulliTable()


# -- constants -------------------------------------------------------------

_cache = {}
_cache_lock = threading.Lock()


def _cached(name, wp, compute):
    key = (name, wp)
    value = _cache.get(key)
    if value is None:
        value = compute(wp)
        with _cache_lock:
            _cache.setdefault(key, value)
    return value


def _from_libmp(fn):
    def compute(wp):
        mid = fn(wp, L.round_nearest)
        return Ball(mid, _ulps(mid, wp), wp)

    return compute


def _pi(wp):
    return _cached("pi", wp, _from_libmp(L.mpf_pi))


def _e(wp):
    return _cached("e", wp, _from_libmp(L.mpf_e))


def _ln2(wp):
    return _cached("ln2", wp, _from_libmp(L.mpf_ln2))


def _ln2pi(wp):
    return _cached("ln2pi", wp, lambda p: (_pi(p) * 2).log())


def _fbound(x: Fraction, wp):
    """Raw mpf upper bound for a nonnegative Fraction."""
    return L.from_rational(x.numerator, x.denominator, RAD_PREC, L.round_ceiling)


def _euler_gamma(wp):
    # gamma = H_{N-1} - ln N + 1/(2N) + sum_{k<=M} B_2k/(2k N^2k) - R,
    # |R| <= |B_{2M+2}| / ((2M+2) N^(2M+2))
    n = wp // 6 + 10
    target = Fraction(1, 2 ** (wp + 4))
    acc = sum((Fraction(1, i) for i in range(1, n)), Fraction(0)) + Fraction(1, 2 * n)
    k = 1
    while True:
        term = bernoulli[2 * k] / (2 * k * Fraction(n) ** (2 * k))
        nxt = abs(bernoulli[2 * k + 2]) / ((2 * k + 2) * Fraction(n) ** (2 * k + 2))
        acc += term
        if nxt <= target:
            break
        k += 1
    value = Ball.exact(acc, wp) - Ball.exact(n, wp).log()
    return value.inflate(_fbound(nxt, wp))


def _catalan(wp):
    # K = (pi/8) ln(2 + sqrt 3) + (3/8) sum_n 1/((2n+1)^2 C(2n, n));
    # consecutive term ratio <= 1/2, so the tail after N terms is <= 2 t_N
    target = Fraction(1, 2 ** (wp + 4))
    s = Ball.exact(0, wp)
    n = 0
    while True:
        t = Fraction(1, (2 * n + 1) ** 2 * math.comb(2 * n, n))
        if 2 * t <= target:
            break
        s = s + Ball.exact(t, wp)
        n += 1
    s = s.inflate(_fbound(2 * t, wp))
    three = Ball.exact(3, wp)
    head = _pi(wp) / 8 * (three.sqrt() + 2).log()
    return head + s * Fraction(3, 8)


def _zeta_prime_2(wp):
    """zeta'(2) = -sum ln(n)/n^2 by Euler-Maclaurin on g(x) = ln(x)/x^2."""
    n = wp // 3 + 16
    target = Fraction(1, 2 ** (wp + 6))
    direct = Ball.exact(0, wp)
    for i in range(2, n):
        direct = direct + Ball.exact(i, wp).log() / (i * i)
    ln_n = Ball.exact(n, wp).log()
    # integral (ln N + 1)/N plus g(N)/2
    tail = (ln_n + 1) / n + ln_n / (2 * n * n)
    # -B_2k/(2k)! g^(2k-1)(N) = B_2k N^(-2k-1) (ln N - H_2k + 1)
    harmonic = Fraction(0)
    k = 1
    last = None
    while True:
        harmonic += Fraction(1, 2 * k - 1) + Fraction(1, 2 * k)
        coef = bernoulli[2 * k] / Fraction(n) ** (2 * k + 1)
        term = (ln_n - (harmonic - 1)) * coef
        tail = tail + term
        last = term.mag()
        # remainder valid while g^(2k) keeps its sign on [N, inf): N >= 2k + 1
        if L.mpf_le(last, _fbound(target, wp)) or 2 * k + 3 > n:
            break
        k += 1
    tail = tail.inflate(last)
    return -(direct + tail)


def _glaisher_log(wp):
    # ln A = (gamma + ln 2 pi)/12 - zeta'(2)/(2 pi^2)
    pi = _pi(wp)
    return (_gamma_c(wp) + _ln2pi(wp)) / 12 - _zeta_prime_2(wp) / (pi * pi * 2)


def _gamma_c(wp):
    return _cached("gamma", wp, _euler_gamma)


def _catalan_c(wp):
    return _cached("catalan", wp, _catalan)


def _ln_glaisher(wp):
    return _cached("lnA", wp, _glaisher_log)


def const_pi(ctx) -> Ball:
    return _pi(_wp(ctx))


def const_e(ctx) -> Ball:
    return _e(_wp(ctx))


def const_ln2(ctx) -> Ball:
    return _ln2(_wp(ctx))


def const_gamma(ctx) -> Ball:
    """Euler-Mascheroni constant."""
    return _gamma_c(_wp(ctx))


def const_catalan(ctx) -> Ball:
    return _catalan_c(_wp(ctx))


def const_glaisher(ctx) -> Ball:
    """Glaisher-Kinkelin constant A = exp(1/12 - zeta'(-1))."""
    wp = _wp(ctx)
    return _cached("A", wp, lambda p: _ln_glaisher(p).exp())


def ln_glaisher(ctx) -> Ball:
    return _ln_glaisher(_wp(ctx))


def zeta_deriv_at_minus1(ctx) -> Ball:
    wp = _wp(ctx)
    return Ball.exact(Fraction(1, 12), wp) - _ln_glaisher(wp)


def glaisher_limit(n: int, prec=64) -> Ball:
    """A_n from the defining limit, computed at ``n``; A_n -> A as n -> inf.

    Returns a ball for the finite-``n`` expression only (no limit error).
    """
    wp = prec
    # ln G(n+1) = sum_{m<n} (n - m) ln m
    lng = Ball.exact(0, wp)
    for m in range(2, n):
        lng = lng + Ball.exact(m, wp).log() * (n - m)
    nb = Ball.exact(n, wp)
    val = (
        _ln2pi(wp) * Fraction(n, 2)
        + nb.log() * (Fraction(n * n, 2) - Fraction(1, 12))
        - Fraction(3 * n * n, 4)
        + Fraction(1, 12)
        - lng
    )
    return val.exp()


def catalan_partial_sum(n: int) -> Fraction:
    """Exact partial sum of sum_{k<n} (-1)^k/(2k+1)^2."""
    return sum((Fraction((-1) ** k, (2 * k + 1) ** 2) for k in range(n)), Fraction(0))


# -- log gamma -------------------------------------------------------------

def _as_arg(x, wp):
    if isinstance(x, Ball):
        return x if x.prec >= wp else x.with_prec(wp)
    return Fraction(x)


def _positive(x):
    if isinstance(x, Ball):
        return x.is_positive()
    return x > 0


def _lngamma(x, wp):
    if not _positive(x):
        raise DomainError(f"lngamma needs a positive argument, got {x!r}")
    threshold = max(8, int(0.15 * wp) + 8)
    lo = x if isinstance(x, Fraction) else x.mid_fraction - x.rad_fraction
    shift = max(0, math.ceil(threshold - lo))
    if isinstance(x, Fraction):
        prod = Fraction(1)
        for k in range(shift):
            prod *= x + k
        y = Ball.exact(x + shift, wp)
        y_lo = x + shift
        correction = Ball.exact(prod, wp).log() if shift else None
    else:
        prod = Ball.exact(1, wp)
        for k in range(shift):
            prod = prod * (x + k)
        y = x + shift
        y_lo = lo + shift
        correction = prod.log() if shift else None
    half = Fraction(1, 2)
    result = (y - half) * y.log() - y + _ln2pi(wp) * half
    target = Fraction(1, 2 ** (wp + 2))
    y2inv = 1 / (y * y)
    power = 1 / y
    k = 1
    while True:
        result = result + power * (bernoulli[2 * k] / (2 * k * (2 * k - 1)))
        nxt = abs(bernoulli[2 * k + 2]) / ((2 * k + 2) * (2 * k + 1) * y_lo ** (2 * k + 1))
        if nxt <= target:
            break
        power = power * y2inv
        k += 1
    result = result.inflate(_fbound(nxt, wp))
    if correction is not None:
        result = result - correction
    return result


def lngamma(x, ctx=None) -> Ball:
    """ln Gamma(x) for x > 0 (Fraction, int, or Ball)."""
    wp = _wp(ctx) if ctx is not None else (x.prec if isinstance(x, Ball) else 128)
    return _lngamma(_as_arg(x, wp), wp)


# -- Hurwitz zeta ------------------------------------------------------------

def _hurwitz(s: Fraction, a, wp):
    if s <= 1:
        raise DomainError("hurwitz_zeta needs s > 1")
    if not _positive(a):
        raise DomainError("hurwitz_zeta needs a > 0")
    exact = isinstance(a, Fraction) and s.denominator == 1
    lo = a if isinstance(a, Fraction) else a.mid_fraction - a.rad_fraction
    threshold = Fraction(int(0.2 * wp) + 4) + s
    shift = max(0, math.ceil(threshold - lo))
    si = int(s) if s.denominator == 1 else None

    def neg_pow(v, e):
        # v**(-e); v Fraction or Ball
        if isinstance(v, Fraction) and e.denominator == 1:
            return Ball.exact(Fraction(1) / v ** int(e), wp)
        if not isinstance(v, Ball):
            v = Ball.exact(v, wp)
        return v.pow_rat(-e)

    total = Ball.exact(0, wp)
    for n in range(shift):
        total = total + neg_pow(a + n, s)
    x = a + shift
    x_pow = neg_pow(x, s)  # x^-s
    # integral x^(1-s)/(s-1) and f(x)/2
    total = total + x_pow * x / (s - 1) + x_pow / 2
    # relative target: the result is at least x^-s
    scale = x_pow.mig()
    target = L.mpf_shift(scale, -(wp + 4))
    # B_2k/(2k)! (s)_(2k-1) x^(1-s-2k)
    poch = s  # (s)_1
    if exact:
        xf = x
        xinv2 = Fraction(1) / (xf * xf)
        xp = Fraction(1) / xf ** (si + 1)  # x^(-s-1)
    else:
        xb = x if isinstance(x, Ball) else Ball.exact(x, wp)
        xinv2_b = 1 / (xb * xb)
        xp_b = x_pow / xb
    k = 1
    last = None
    while True:
        coef = bernoulli[2 * k] / math.factorial(2 * k) * poch
        if exact:
            term = Ball.exact(coef * xp, wp)
        else:
            term = xp_b * coef
        total = total + term
        last = term.mag()
        if L.mpf_le(last, target) or k > 4 * wp:
            break
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        if exact:
            xp *= xinv2
        else:
            xp_b = xp_b * xinv2_b
        k += 1
    return total.inflate(last)


def hurwitz_zeta(s, a, ctx=None) -> Ball:
    """zeta(s, a) = sum_{n>=0} (n + a)^-s for rational s > 1 and a > 0."""
    wp = _wp(ctx) if ctx is not None else (a.prec if isinstance(a, Ball) else 128)
    return _hurwitz(Fraction(s), _as_arg(a, wp), wp)


# -- Barnes G ------------------------------------------------------------------

_BARNES_N = 32


def _lng_core(z: Fraction | Ball, wp):
    """ln G(1 + z) for z in (0, 1] from the Weierstrass product.

    The n-th log-factor n ln(1+z/n) + z^2/(2n) - z equals
    sum_{j>=3} (-1)^(j-1) z^j / (j n^(j-1)); its tail over n > N is
    sum_j (-1)^(j-1) z^j/j * zeta(j-1, N+1).
    """
    N = _BARNES_N
    exact = isinstance(z, Fraction)
    zb = Ball.exact(z, wp) if exact else z
    half = Fraction(1, 2)
    if exact:
        prod = Fraction(1)
        for n in range(1, N + 1):
            prod *= (1 + z / n) ** n
        harm = sum((Fraction(1, n) for n in range(1, N + 1)), Fraction(0))
        head_exact = z * z / 2 * harm - N * z - z / 2 - z * z / 2
        partial = Ball.exact(prod, wp).log() + Ball.exact(head_exact, wp)
    else:
        partial = Ball.exact(0, wp)
        for n in range(1, N + 1):
            partial = partial + (1 + zb / n).log() * n
        harm = sum((Fraction(1, n) for n in range(1, N + 1)), Fraction(0))
        partial = partial + zb * zb * (harm / 2) - zb * N - zb * half - zb * zb * half
    result = partial + _ln2pi(wp) * zb * half - _gamma_c(wp) * zb * zb * half
    zmax = Fraction(z) if exact else zb.mid_fraction + zb.rad_fraction
    if zmax > Fraction(11, 10):
        raise DomainError("reduced Barnes argument out of range")
    ratio = zmax / N
    target = Fraction(1, 2 ** (wp + 4))
    tail = Ball.exact(0, wp)
    j = 3
    while True:
        zeta = _hurwitz(Fraction(j - 1), Fraction(N + 1), wp)
        if exact:
            c = Fraction((-1) ** (j - 1)) * z ** j / j
            tail = tail + zeta * c
        else:
            tail = tail + zeta * zb.pow_int(j) * Fraction((-1) ** (j - 1), j)
        # sum_{i>j} zmax^i N^(2-i)/(i(i-2)) <= N^2 ratio^(j+1)/((j+1)(j-1)(1-ratio))
        rem = N * N * ratio ** (j + 1) / ((j + 1) * (j - 1) * (1 - ratio))
        if rem <= target:
            break
        j += 1
    return result + tail.inflate(_fbound(rem, wp))


def _barnes(x, wp):
    if not _positive(x):
        raise DomainError(f"barnes_lng needs a positive argument, got {x!r}")
    exact = isinstance(x, Fraction)
    center = x if exact else x.mid_fraction
    # y = x - m in (1, 2]
    m = math.ceil(center) - 2
    y = x - m
    if exact:
        z = y - 1
    else:
        z = y - 1
    core = _lng_core(z, wp)
    if m == 0:
        return core
    lg_y = _lngamma(y if exact else y, wp)
    if m > 0:
        # ln G(x) = ln G(y) + m ln Gamma(y) + sum_{l<=m-2} (m-1-l) ln(y+l)
        if exact:
            prod = Fraction(1)
            for l in range(m - 1):
                prod *= (y + l) ** (m - 1 - l)
            extra = Ball.exact(prod, wp).log()
        else:
            extra = Ball.exact(0, wp)
            for l in range(m - 1):
                extra = extra + (y + l).log() * (m - 1 - l)
        return core + lg_y * m + extra
    mm = -m
    # ln G(x) = ln G(y) - mm ln Gamma(y) + sum_{l<mm} (l+1) ln(x+l)
    if exact:
        prod = Fraction(1)
        for l in range(mm):
            prod *= (x + l) ** (l + 1)
        extra = Ball.exact(prod, wp).log()
    else:
        extra = Ball.exact(0, wp)
        for l in range(mm):
            extra = extra + (x + l).log() * (l + 1)
    return core - lg_y * mm + extra


def barnes_lng(x, ctx=None) -> Ball:
    """ln G(x) for x > 0, G the Barnes G-function."""
    wp = _wp(ctx) if ctx is not None else (x.prec if isinstance(x, Ball) else 128)
    return _barnes(_as_arg(x, wp), wp)


# -- identity residuals ----------------------------------------------------------

def sinpi(r: Fraction, wp) -> Ball:
    """sin(pi r) for rational r."""
    r = Fraction(r)
    # reduce to [0, 2) and use symmetry to keep the argument small
    r = r - 2 * math.floor(r / 2)
    sign = 1
    if r >= 1:
        r -= 1
        sign = -1
    if r > Fraction(1, 2):
        r = 1 - r
    if r == 0:
        return Ball.exact(0, wp)
    value = (_pi(wp) * r).sin()
    return value if sign > 0 else -value


def check_reflection(z, ctx) -> Ball:
    """Gamma(z) Gamma(1-z) sin(pi z)/pi - 1, a ball that should contain 0."""
    z = Fraction(z)
    if z.denominator == 1:
        raise DomainError("reflection formula needs a non-integer argument")
    wp = _wp(ctx)
    z = z - math.floor(z)
    lg = _lngamma(z, wp) + _lngamma(1 - z, wp)
    return lg.exp() * sinpi(z, wp) / _pi(wp) - 1


def check_g_duplication(z, ctx) -> Ball:
    """Residual (log form) of the Barnes G duplication formula at z > 0."""
    z = Fraction(z)
    if z <= 0:
        raise DomainError("duplication check needs z > 0")
    wp = _wp(ctx)
    half = Fraction(1, 2)
    rhs = (
        Ball.exact(Fraction(-1, 4), wp)
        + _ln_glaisher(wp) * 3
        + _ln2(wp) * (2 * z * z - 3 * z + Fraction(11, 12))
        + _pi(wp).log() * (half - z)
        + _barnes(z, wp)
        + _barnes(z + half, wp) * 2
        + _barnes(z + 1, wp)
    )
    return _barnes(2 * z, wp) - rhs
