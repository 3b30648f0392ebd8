"""Exact rationals and mid-radius ball arithmetic.

Rationals are plain :class:`fractions.Fraction` values (always normalized,
arbitrary-size numerator and denominator).  Real numbers are carried as
:class:`Ball` objects: a binary floating-point midpoint together with a
non-negative radius such that the exact value lies in ``[mid - rad, mid + rad]``.

Midpoints are computed with :mod:`mpmath.libmp` at the ball's precision and
rounded to nearest; radii are kept at low precision and always rounded up.
The elementary functions of ``mpmath.libmp`` return results within one ulp;
we charge four ulps for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from decimal import Decimal, ROUND_CEILING
from fractions import Fraction
from numbers import Rational

import mpmath.libmp as L

from .errors import DomainError, SpecParseError, ToleranceNotMet

__all__ = [
    "Ball",
    "PrecCtx",
    "rat",
    "parse_rat",
    "rat_pow_sum",
    "with_escalation",
]

# precision used for radius arithmetic
RAD_PREC = 30

_ZERO = L.fzero
_ONE = L.fone
_CEIL = L.round_ceiling
_FLOOR = L.round_floor
_NEAR = L.round_nearest


def _rup(x):
    """Round a nonnegative raw mpf up to RAD_PREC bits."""
    return L.mpf_pos(x, RAD_PREC, _CEIL)


def _radd(*xs):
    s = _ZERO
    for x in xs:
        s = L.mpf_add(s, x, RAD_PREC, _CEIL)
    return s


def _rmul(a, b):
    return L.mpf_mul(a, b, RAD_PREC, _CEIL)


def _ulps(mid, prec, k=1):
    """Upper bound ``|mid| * 2**(k - prec)`` for the rounding error of ``mid``."""
    if mid == _ZERO:
        return _ZERO
    return _rup(L.mpf_shift(L.mpf_abs(mid), k - prec))


# multiplicative slack applied when an upper bound is taken from a
# transcendental function evaluated at low precision
_SLACK_UP = L.mpf_add(_ONE, L.mpf_shift(_ONE, -20), 53, _CEIL)
_SLACK_DOWN = L.mpf_sub(_ONE, L.mpf_shift(_ONE, -20), 53, _FLOOR)


def _to_fraction(x) -> Fraction:
    p, q = L.to_rational(x)
    return Fraction(p, q)


class Ball:
    """A real number enclosure ``mid ± rad`` at ``prec`` significand bits."""

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad=_ZERO, prec=128):
        if prec < 16:
            raise ValueError("precision must be at least 16 bits")
        if L.mpf_sign(rad) < 0 or rad in (L.finf, L.fninf, L.fnan):
            raise ValueError("radius must be finite and nonnegative")
        self.mid = mid
        self.rad = rad
        self.prec = prec

    # -- construction ---------------------------------------------------

    @classmethod
    def exact(cls, x, prec=128) -> "Ball":
        """Enclose an int, Fraction, or decimal string."""
        if isinstance(x, Ball):
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            mid = L.from_int(x, prec, _NEAR)
            return cls(mid, _ZERO if L.to_int(mid) == x else _ulps(mid, prec), prec)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Rational):
            x = Fraction(x)
            mid = L.from_rational(x.numerator, x.denominator, prec, _NEAR)
            if _to_fraction(mid) == x:
                return cls(mid, _ZERO, prec)
            return cls(mid, _ulps(mid, prec), prec)
        if isinstance(x, float):
            return cls(L.from_float(x), _ZERO, prec)
        raise TypeError(f"cannot make a Ball from {type(x).__name__}")

    def _coerce(self, other) -> "Ball":
        if isinstance(other, Ball):
            return other
        return Ball.exact(other, self.prec)

    def with_prec(self, prec) -> "Ball":
        if prec >= self.prec:
            return Ball(self.mid, self.rad, prec)
        mid = L.mpf_pos(self.mid, prec, _NEAR)
        return Ball(mid, _radd(self.rad, _ulps(mid, prec)), prec)

    # -- inspection -----------------------------------------------------

    def lower(self):
        return L.mpf_sub(self.mid, self.rad, self.prec + RAD_PREC, _FLOOR)

    def upper(self):
        return L.mpf_add(self.mid, self.rad, self.prec + RAD_PREC, _CEIL)

    def mag(self):
        """Upper bound for ``|x|`` over the ball (raw mpf)."""
        return _radd(L.mpf_abs(self.mid), self.rad)

    def mig(self):
        """Lower bound for ``|x|`` over the ball (raw mpf, possibly zero)."""
        m = L.mpf_sub(L.mpf_abs(self.mid), self.rad, RAD_PREC, _FLOOR)
        return m if L.mpf_sign(m) > 0 else _ZERO

    def is_positive(self) -> bool:
        return L.mpf_sign(self.lower()) > 0

    def is_exact(self) -> bool:
        return self.rad == _ZERO

    def contains(self, x) -> bool:
        """True if the exact number (or every point of the ball) ``x`` lies inside."""
        lo, hi = _to_fraction(self.mid) - _to_fraction(self.rad), _to_fraction(self.mid) + _to_fraction(self.rad)
        if isinstance(x, Ball):
            xm, xr = _to_fraction(x.mid), _to_fraction(x.rad)
            return lo <= xm - xr and xm + xr <= hi
        return lo <= Fraction(x) <= hi

    def overlaps(self, other: "Ball") -> bool:
        other = self._coerce(other)
        gap = abs(_to_fraction(self.mid) - _to_fraction(other.mid))
        return gap <= _to_fraction(self.rad) + _to_fraction(other.rad)

    def contains_zero(self) -> bool:
        return self.contains(0)

    def inflate(self, extra) -> "Ball":
        if not isinstance(extra, tuple):
            extra = L.from_rational(*Fraction(extra).as_integer_ratio(), RAD_PREC, _CEIL)
        return Ball(self.mid, _radd(self.rad, extra), self.prec)

    @property
    def mid_fraction(self) -> Fraction:
        return _to_fraction(self.mid)

    @property
    def rad_fraction(self) -> Fraction:
        return _to_fraction(self.rad)

    def rad_le(self, tol) -> bool:
        return _to_fraction(self.rad) <= Fraction(tol)

    def __float__(self):
        return L.to_float(self.mid)

    def __repr__(self):
        return f"Ball({L.to_str(self.mid, 20)} +/- {L.to_str(self.rad, 3)})"

    def __str__(self):
        return self.to_str()

    def to_str(self) -> str:
        """``<mid> ± <rad>`` with only the digits the radius certifies."""
        rad = self.rad
        if self.mid == _ZERO and rad == _ZERO:
            return "0 ± 0"
        if rad == _ZERO:
            digits = max(1, int(self.prec * math.log10(2)))
        elif self.mid == _ZERO:
            digits = 1
        else:
            e_mid = _log10_floor(L.mpf_abs(self.mid))
            e_rad = _log10_floor(rad)
            digits = max(1, e_mid - e_rad)
        mid_s = L.to_str(self.mid, digits, strip_zeros=False)
        if rad == _ZERO:
            rad_s = "0"
        else:
            d = Decimal(L.to_str(rad, 20))
            exp = d.adjusted()
            q = Decimal(1).scaleb(exp - 1)
            d = d.quantize(q, rounding=ROUND_CEILING)
            rad_s = f"{d:.1e}"
        return f"{mid_s} ± {rad_s}"

    # -- arithmetic -----------------------------------------------------

    def __neg__(self):
        return Ball(L.mpf_neg(self.mid), self.rad, self.prec)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        mid = L.mpf_add(self.mid, other.mid, p, _NEAR)
        return Ball(mid, _radd(self.rad, other.rad, _ulps(mid, p)), p)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        mid = L.mpf_mul(self.mid, other.mid, p, _NEAR)
        rad = _radd(
            _rmul(L.mpf_abs(self.mid), other.rad),
            _rmul(L.mpf_abs(other.mid), self.rad),
            _rmul(self.rad, other.rad),
            _ulps(mid, p),
        )
        return Ball(mid, rad, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        bm = L.mpf_abs(other.mid)
        gap = L.mpf_sub(bm, other.rad, RAD_PREC, _FLOOR)
        if L.mpf_sign(gap) <= 0:
            raise DomainError("division by a ball containing zero")
        mid = L.mpf_div(self.mid, other.mid, p, _NEAR)
        num = _radd(_rmul(L.mpf_abs(self.mid), other.rad), _rmul(bm, self.rad))
        den = L.mpf_mul(bm, gap, RAD_PREC, _FLOOR)
        rad = _radd(L.mpf_div(num, den, RAD_PREC, _CEIL), _ulps(mid, p))
        return Ball(mid, rad, p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, q):
        return self.pow_rat(q)

    # -- elementary functions -------------------------------------------

    def log(self) -> "Ball":
        lo = L.mpf_sub(self.mid, self.rad, RAD_PREC, _FLOOR)
        if L.mpf_sign(lo) <= 0:
            raise DomainError("log of a ball that is not strictly positive")
        p = self.prec
        mid = L.mpf_log(self.mid, p, _NEAR)
        prop = L.mpf_div(self.rad, lo, RAD_PREC, _CEIL) if self.rad != _ZERO else _ZERO
        return Ball(mid, _radd(prop, _ulps(mid, p, 3)), p)

    def exp(self) -> "Ball":
        p = self.prec
        mid = L.mpf_exp(self.mid, p, _NEAR)
        rad = _ulps(mid, p, 3)
        if self.rad != _ZERO:
            # |e^(m+t) - e^m| <= e^m * r * e^r
            eup = _rmul(L.mpf_abs(mid), _SLACK_UP)
            er = _rmul(L.mpf_exp(self.rad, RAD_PREC, _CEIL), _SLACK_UP)
            rad = _radd(rad, _rmul(_rmul(eup, self.rad), er))
        return Ball(mid, rad, p)

    def sqrt(self) -> "Ball":
        if self.rad == _ZERO and L.mpf_sign(self.mid) == 0:
            return self
        lo = L.mpf_sub(self.mid, self.rad, RAD_PREC, _FLOOR)
        if L.mpf_sign(lo) <= 0:
            raise DomainError("sqrt of a ball that is not strictly positive")
        p = self.prec
        mid = L.mpf_sqrt(self.mid, p, _NEAR)
        rad = _ulps(mid, p)
        if self.rad != _ZERO:
            # |sqrt(x) - sqrt(m)| <= r / (sqrt(x) + sqrt(m)) <= r / sqrt(m)
            den = L.mpf_mul(mid, _SLACK_DOWN, RAD_PREC, _FLOOR)
            rad = _radd(rad, L.mpf_div(self.rad, den, RAD_PREC, _CEIL))
        return Ball(mid, rad, p)

    def sin(self) -> "Ball":
        p = self.prec
        mid = L.mpf_sin(self.mid, p, _NEAR)
        rad = _radd(_ulps(mid, p, 3), L.mpf_shift(_ONE, -2 * p), self.rad)
        return Ball(mid, rad, p)

    def cos(self) -> "Ball":
        p = self.prec
        mid = L.mpf_cos(self.mid, p, _NEAR)
        rad = _radd(_ulps(mid, p, 3), L.mpf_shift(_ONE, -2 * p), self.rad)
        return Ball(mid, rad, p)

    def pow_int(self, n: int) -> "Ball":
        if n < 0:
            return 1 / self.pow_int(-n)
        result = Ball.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_rat(self, q) -> "Ball":
        q = Fraction(q)
        if q.denominator == 1:
            return self.pow_int(q.numerator)
        if q == Fraction(1, 2):
            return self.sqrt()
        return (self.log() * q).exp()


@dataclass(frozen=True)
class PrecCtx:
    """Working precision in bits and the requested absolute error of a result."""

    prec_bits: int = 128
    target_abs_tol: float = 1e-25

    def __post_init__(self):
        if self.prec_bits < 16:
            raise ValueError("prec_bits must be >= 16")
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be positive")

    def doubled(self) -> "PrecCtx":
        return replace(self, prec_bits=2 * self.prec_bits)

    def ball(self, x, extra_bits=0) -> Ball:
        return Ball.exact(x, self.prec_bits + extra_bits)

    def check(self, value: Ball, what="result") -> Ball:
        """Raise :class:`ToleranceNotMet` unless ``value.rad <= target_abs_tol``."""
        if not value.rad_le(Fraction(self.target_abs_tol)):
            raise ToleranceNotMet(
                f"{what}: radius {L.to_str(value.rad, 3)} exceeds tolerance "
                f"{self.target_abs_tol:g} at {self.prec_bits} bits"
            )
        return value


def with_escalation(fn, ctx: PrecCtx, cap_bits=None):
    """Call ``fn(ctx)``, doubling precision on :class:`ToleranceNotMet`.

    Gives up once the precision would exceed ``cap_bits`` (default four
    times the initial precision) and re-raises the last failure.
    """
    if cap_bits is None:
        cap_bits = 4 * ctx.prec_bits
    while True:
        try:
            return fn(ctx)
        except ToleranceNotMet:
            if 2 * ctx.prec_bits > cap_bits:
                raise
            ctx = ctx.doubled()


def _log10_floor(x) -> int:
    """floor(log10(x)) for a positive raw mpf."""
    s = L.to_str(x, 5)
    d = Decimal(s)
    return d.adjusted()


def rat(n, d=1) -> Fraction:
    return Fraction(n, d)


def parse_rat(text: str) -> Fraction:
    """Parse ``p``, ``-p``, ``p/q`` or a decimal literal into a Fraction."""
    s = text.strip()
    if not s:
        raise SpecParseError("empty rational")
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            n, d = int(num), int(den)
            if d == 0:
                raise SpecParseError(f"zero denominator in {s!r}")
            return Fraction(n, d)
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecParseError(f"invalid rational {s!r}") from exc


def rat_pow_sum(xs, j: int) -> Fraction:
    """Exact power sum ``sum(x**j for x in xs)``."""
    if not xs:
        raise ValueError("rat_pow_sum needs a non-empty list")
    if j < 1:
        raise ValueError("power must be >= 1")
    return sum((Fraction(x) ** j for x in xs), Fraction(0))
