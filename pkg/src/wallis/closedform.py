"""Closed-form expressions over named constants and Gamma-type atoms.

A :class:`ClosedForm` is kept in a canonical normal form

    prod_i atom_i ** e_i  *  exp( sum_m c_m * monomial_m )

with rational exponents ``e_i`` and coefficients ``c_m``.  Rational
constants are split into prime powers; ``Gamma(r)``, ``G(r)`` and
``Gamma_n(r)`` are shifted into the window ``(0, 1]`` with the functional
equations, reflection pairs ``Gamma(r) Gamma(1-r)`` become ``pi/sinpi(r)``,
and the known special values of ``Gamma(1/2)``, ``G(1/2)``, ``G(1/4)``,
``G(3/4)`` and ``sinpi`` at a few rationals are substituted.  Two canonical
forms are equal iff their text renderings are equal.

Text grammar: integers, ``p/q``, ``pi``, ``e``, ``gamma``, ``K``, ``A``,
``Gamma(r)``, ``G(r)``, ``Gamma_n(r)``, ``sinpi(r)``, ``exp(...)``, ``*``,
``/``, ``^`` and parentheses; ``+`` and ``-`` only inside ``exp``.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .arith import Ball, PrecCtx
from .errors import DomainError, IrreducibleClosedForm, SpecParseError
from . import special

__all__ = [
    "Atom",
    "ClosedForm",
    "RatConst",
    "Pi",
    "E",
    "EulerGamma",
    "Catalan",
    "Glaisher",
    "GammaAt",
    "BarnesGAt",
    "MultiGammaAt",
    "SinPi",
    "Mul",
    "Pow",
    "Exp",
    "parse_closed_form",
    "print_closed_form",
    "eval_closed_form",
]

_KIND_ORDER = {
    "pi": 1, "gamma": 2, "K": 3, "A": 4,
    "Gamma": 5, "G": 6, "Gamma_n": 7, "sinpi": 8, "prime": 9, "rat": 10,
}
_NAMED = {"pi", "gamma", "K", "A"}


@dataclass(frozen=True)
class Atom:
    kind: str
    arg: Fraction | int | None = None
    level: int = 0

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.level, Fraction(self.arg) if self.arg is not None else 0)

    def text(self) -> str:
        if self.kind in _NAMED:
            return self.kind
        if self.kind == "prime":
            return str(self.arg)
        if self.kind == "Gamma_n":
            return f"Gamma_{self.level}({self.arg})"
        return f"{self.kind}({self.arg})"


_PI = Atom("pi")
_K = Atom("K")
_A = Atom("A")
_GAMMA_C = Atom("gamma")


def _prime(p) -> Atom:
    return Atom("prime", int(p))


def _canon_mono(mono):
    powers = {}
    for a, p in mono:
        powers[a] = powers.get(a, 0) + p
    return tuple(sorted(((a, p) for a, p in powers.items() if p), key=lambda t: t[0].sort_key()))


def _mono_key(mono):
    return tuple((a.sort_key(), p) for a, p in mono)


@dataclass(frozen=True)
class ClosedForm:
    """Canonical product of atom powers times an exponential."""

    factors: tuple = ()
    expo: tuple = ()

    # -- construction -------------------------------------------------------

    @classmethod
    def build(cls, factors: dict, expo: dict | None = None) -> "ClosedForm":
        ex = {}
        for m, c in (expo or {}).items():
            _add(ex, _canon_mono(m), Fraction(c))
        fac, ex = _normalize(dict(factors), ex)
        fac_t = tuple(sorted(fac.items(), key=lambda kv: kv[0].sort_key()))
        ex_t = tuple(sorted(ex.items(), key=lambda kv: (len(kv[0]), _mono_key(kv[0]))))
        return cls(fac_t, ex_t)

    def _dicts(self):
        return dict(self.factors), dict(self.expo)

    def __mul__(self, other: "ClosedForm") -> "ClosedForm":
        fac, ex = self._dicts()
        for a, e in other.factors:
            fac[a] = fac.get(a, 0) + e
        for m, c in other.expo:
            ex[m] = ex.get(m, 0) + c
        return ClosedForm.build(fac, ex)

    def __truediv__(self, other: "ClosedForm") -> "ClosedForm":
        return self * other ** -1

    def __pow__(self, q) -> "ClosedForm":
        q = Fraction(q)
        fac = {a: e * q for a, e in self.factors}
        ex = {m: c * q for m, c in self.expo}
        return ClosedForm.build(fac, ex)

    # -- inspection ---------------------------------------------------------

    @property
    def fully_reduced(self) -> bool:
        return not any(a.kind == "Gamma_n" for a, _ in self.factors)

    def atoms(self):
        return [a for a, _ in self.factors]

    def is_rational(self) -> bool:
        return not self.expo and all(
            a.kind == "prime" and e.denominator == 1 for a, e in self.factors
        )

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("closed form is not a rational number")
        v = Fraction(1)
        for a, e in self.factors:
            v *= Fraction(a.arg) ** int(e)
        return v

    def __str__(self):
        return print_closed_form(self)


# -- normalization ---------------------------------------------------------------

def _add(d, key, val):
    v = d.get(key, 0) + val
    if v:
        d[key] = v
    else:
        d.pop(key, None)


_SPECIAL_G = {
    Fraction(1, 2): ({_prime(2): Fraction(1, 24), _PI: Fraction(-1, 4), _A: Fraction(-3, 2)},
                     {(): Fraction(1, 8)}),
    Fraction(1, 4): ({_A: Fraction(-9, 8), Atom("Gamma", Fraction(1, 4)): Fraction(-3, 4)},
                     {(): Fraction(3, 32), ((_K, 1), (_PI, -1)): Fraction(-1, 4)}),
    Fraction(3, 4): ({_A: Fraction(-9, 8), Atom("Gamma", Fraction(3, 4)): Fraction(-1, 4)},
                     {(): Fraction(3, 32), ((_K, 1), (_PI, -1)): Fraction(1, 4)}),
}

_SPECIAL_SIN = {
    Fraction(1, 2): {},
    Fraction(1, 6): {_prime(2): Fraction(-1)},
    Fraction(1, 4): {_prime(2): Fraction(-1, 2)},
    Fraction(1, 3): {_prime(3): Fraction(1, 2), _prime(2): Fraction(-1)},
}


def _rewrite(atom: Atom):
    """One rewriting step: (factor dict, exp dict) replacing ``atom``, or None."""
    kind, r = atom.kind, atom.arg
    if kind == "rat":
        q = Fraction(r)
        if q <= 0:
            raise DomainError(f"rational constant {q} must be positive")
        out = {}
        for p, m in factorint(q.numerator).items():
            out[_prime(p)] = Fraction(m)
        for p, m in factorint(q.denominator).items():
            out[_prime(p)] = out.get(_prime(p), 0) - m
        return out, {}
    if kind in ("Gamma", "G", "Gamma_n") and r <= 0:
        raise DomainError(f"{atom.text()} needs a positive argument")
    if kind == "Gamma_n":
        n = atom.level
        if n == 1:
            return {Atom("Gamma", r): Fraction(1)}, {}
        if n == 2:
            return {Atom("G", r): Fraction(-1)}, {}
        if r == 1:
            return {}, {}
        if r > 1:
            # Gamma_n(z+1) = Gamma_n(z) / Gamma_{n-1}(z)
            return {Atom("Gamma_n", r - 1, n): Fraction(1), Atom("Gamma_n", r - 1, n - 1): Fraction(-1)}, {}
        return None
    if kind == "Gamma":
        if r == 1:
            return {}, {}
        if r == Fraction(1, 2):
            return {_PI: Fraction(1, 2)}, {}
        if r > 1:
            return {Atom("Gamma", r - 1): Fraction(1), Atom("rat", r - 1): Fraction(1)}, {}
        return None
    if kind == "G":
        if r == 1:
            return {}, {}
        if r > 1:
            return {Atom("G", r - 1): Fraction(1), Atom("Gamma", r - 1): Fraction(1)}, {}
        if r in _SPECIAL_G:
            fac, ex = _SPECIAL_G[r]
            return dict(fac), dict(ex)
        return None
    if kind == "sinpi":
        x = r - 2 * (r // 2)
        if x == 0 or x >= 1:
            raise DomainError(f"sinpi({r}) is not positive")
        if x > Fraction(1, 2):
            x = 1 - x
        if x in _SPECIAL_SIN:
            return dict(_SPECIAL_SIN[x]), {}
        if x != r:
            return {Atom("sinpi", x): Fraction(1)}, {}
        return None
    return None


def _normalize(fac: dict, ex: dict):
    fac = {a: Fraction(e) for a, e in fac.items() if e}
    ex = {m: Fraction(c) for m, c in ex.items() if c}
    changed = True
    while changed:
        changed = False
        for atom in sorted(fac, key=Atom.sort_key):
            e = fac.get(atom)
            if not e:
                continue
            step = _rewrite(atom)
            if step is None:
                continue
            sub, sub_ex = step
            del fac[atom]
            for a, k in sub.items():
                _add(fac, a, e * k)
            for m, c in sub_ex.items():
                _add(ex, _canon_mono(m), e * c)
            changed = True
        # reflection: Gamma(r)^e1 Gamma(1-r)^e2 with e1, e2 of one sign
        for atom in sorted(fac, key=Atom.sort_key):
            if atom.kind != "Gamma" or atom not in fac or atom.arg >= Fraction(1, 2):
                continue
            partner = Atom("Gamma", 1 - atom.arg)
            e1, e2 = fac.get(atom, 0), fac.get(partner, 0)
            if e1 and e2 and (e1 > 0) == (e2 > 0):
                c = min(abs(e1), abs(e2)) * (1 if e1 > 0 else -1)
                _add(fac, atom, -c)
                _add(fac, partner, -c)
                _add(fac, _PI, c)
                _add(fac, Atom("sinpi", atom.arg), -c)
                changed = True
    ex = {m: c for m, c in ex.items() if c}
    return fac, ex


# -- public constructors -------------------------------------------------------------

def RatConst(q) -> ClosedForm:
    q = Fraction(q)
    if q == 1:
        return ClosedForm()
    return ClosedForm.build({Atom("rat", q): 1})


def Pi() -> ClosedForm:
    return ClosedForm.build({_PI: 1})


def E() -> ClosedForm:
    return ClosedForm.build({}, {(): 1})


def EulerGamma() -> ClosedForm:
    return ClosedForm.build({_GAMMA_C: 1})


def Catalan() -> ClosedForm:
    return ClosedForm.build({_K: 1})


def Glaisher() -> ClosedForm:
    return ClosedForm.build({_A: 1})


def GammaAt(r) -> ClosedForm:
    return ClosedForm.build({Atom("Gamma", Fraction(r)): 1})


def BarnesGAt(r) -> ClosedForm:
    return ClosedForm.build({Atom("G", Fraction(r)): 1})


def MultiGammaAt(n: int, r) -> ClosedForm:
    if n < 1:
        raise ValueError("multiple gamma level must be >= 1")
    return ClosedForm.build({Atom("Gamma_n", Fraction(r), n): 1})


def SinPi(r) -> ClosedForm:
    return ClosedForm.build({Atom("sinpi", Fraction(r)): 1})


def Mul(*forms) -> ClosedForm:
    out = ClosedForm()
    for f in forms:
        out = out * f
    return out


def Pow(base: ClosedForm, q) -> ClosedForm:
    return base ** q


def _as_term(form: ClosedForm):
    """(coefficient, monomial) for a term usable inside exp()."""
    if form.expo:
        raise ValueError("exp() argument terms cannot contain exp()")
    coef = Fraction(1)
    mono = []
    for a, e in form.factors:
        if e.denominator != 1:
            raise ValueError("exp() argument terms need integer powers")
        if a.kind == "prime":
            coef *= Fraction(a.arg) ** int(e)
        else:
            mono.append((a, int(e)))
    return coef, tuple(sorted(mono, key=lambda t: t[0].sort_key()))


def Exp(*terms, coeffs=None) -> ClosedForm:
    """exp(sum of terms); each term is a ClosedForm monomial, optionally with a rational coefficient."""
    ex = {}
    coeffs = coeffs or [1] * len(terms)
    for t, c in zip(terms, coeffs):
        if not isinstance(t, ClosedForm):
            t = RatConst(t) if t else None
            if t is None:
                continue
        coef, mono = _as_term(t)
        _add(ex, mono, coef * Fraction(c))
    return ClosedForm.build({}, ex)


# -- rendering -------------------------------------------------------------------

def _fmt_exp(e: Fraction) -> str:
    if e == 1:
        return ""
    if e.denominator == 1:
        return f"^{e.numerator}"
    return f"^({e})"


def _split_int(e: Fraction):
    """e = n + f with n the nearest integer (ties toward zero)."""
    fl = e.numerator // e.denominator
    frac = e - fl
    if frac > Fraction(1, 2) or (frac == Fraction(1, 2) and fl < 0):
        n = fl + 1
    else:
        n = fl
    return n, e - n


def _join(num, den) -> str:
    top = "*".join(num) if num else "1"
    if not den:
        return top
    if len(den) == 1:
        return f"{top}/{den[0]}"
    return f"{top} / ({'*'.join(den)})"


def _render_term(coef: Fraction, mono) -> str:
    num, den = [], []
    if abs(coef.numerator) != 1:
        num.append(str(abs(coef.numerator)))
    if coef.denominator != 1:
        den.append(str(coef.denominator))
    for a, p in mono:
        tok = a.text() + _fmt_exp(Fraction(abs(p)))
        (num if p > 0 else den).append(tok)
    if not num and not den:
        return "1"
    s = _join(num, den)
    if len(den) > 1:
        s = s.replace(" / ", "/")
    return s


def print_closed_form(cf: ClosedForm) -> str:
    """Deterministic text rendering in the closed-form grammar."""
    num_int, den_int = 1, 1
    num_atoms, den_atoms, num_rad, den_rad = [], [], [], []
    for a, e in cf.factors:
        if a.kind == "prime":
            n, f = _split_int(e)
            if n > 0:
                num_int *= a.arg ** n
            elif n < 0:
                den_int *= a.arg ** (-n)
            if f:
                (num_rad if f > 0 else den_rad).append(f"{a.arg}^({abs(f)})")
        else:
            tok = a.text() + _fmt_exp(abs(e))
            (num_atoms if e > 0 else den_atoms).append(tok)
    exp_tok = None
    e_pow = Fraction(0)
    expo = dict(cf.expo)
    if set(expo) == {()} and expo[()].denominator == 1:
        e_pow = expo[()]
    elif expo:
        parts = []
        for mono, c in cf.expo:
            body = _render_term(abs(c), mono)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        exp_tok = f"exp({''.join(parts)})"
    num, den = [], []
    if num_int != 1:
        num.append(str(num_int))
    if den_int != 1:
        den.append(str(den_int))
    if e_pow > 0:
        num.append("e" + _fmt_exp(e_pow))
    elif e_pow < 0:
        den.append("e" + _fmt_exp(-e_pow))
    num += num_atoms + num_rad
    den += den_atoms + den_rad
    if exp_tok:
        num.append(exp_tok)
    return _join(num, den)


# -- parsing -------------------------------------------------------------------

_FUNCS = {"Gamma": "Gamma", "G": "G", "sinpi": "sinpi"}
_NAMES = {"pi": Pi, "e": E, "gamma": EulerGamma, "K": Catalan, "A": Glaisher}


def _rational(node):
    """Fraction value of a purely rational subexpression, else None."""
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _rational(node.operand)
        if v is None:
            return None
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        lv, rv = _rational(node.left), _rational(node.right)
        if lv is None or rv is None:
            return None
        if isinstance(node.op, ast.Add):
            return lv + rv
        if isinstance(node.op, ast.Sub):
            return lv - rv
        if isinstance(node.op, ast.Mult):
            return lv * rv
        if isinstance(node.op, ast.Div):
            if rv == 0:
                raise SpecParseError("division by zero", 1, node.col_offset + 1)
            return lv / rv
        if isinstance(node.op, ast.Pow) and rv.denominator == 1:
            if lv == 0 and rv < 0:
                raise SpecParseError("division by zero", 1, node.col_offset + 1)
            return lv ** int(rv)
    return None


def _fail(node, msg):
    raise SpecParseError(msg, 1, getattr(node, "col_offset", 0) + 1)


def _call_arg(node):
    if len(node.args) != 1 or node.keywords:
        _fail(node, "expected exactly one argument")
    v = _rational(node.args[0])
    if v is None:
        _fail(node.args[0], "function argument must be a rational number")
    return v


def _to_form(node) -> ClosedForm:
    r = _rational(node)
    if r is not None:
        if r <= 0:
            _fail(node, "constants must be positive")
        return RatConst(r)
    if isinstance(node, ast.Name):
        if node.id not in _NAMES:
            _fail(node, f"unknown name {node.id!r}")
        return _NAMES[node.id]()
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        if name == "exp":
            if len(node.args) != 1:
                _fail(node, "exp takes one argument")
            return ClosedForm.build({}, _to_linear(node.args[0]))
        m = re.fullmatch(r"Gamma_(\d+)", name)
        if m:
            return MultiGammaAt(int(m.group(1)), _call_arg(node))
        if name in _FUNCS:
            arg = _call_arg(node)
            return {"Gamma": GammaAt, "G": BarnesGAt, "sinpi": SinPi}[name](arg)
        _fail(node, f"unknown function {name!r}")
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Mult):
            return _to_form(node.left) * _to_form(node.right)
        if isinstance(node.op, ast.Div):
            return _to_form(node.left) / _to_form(node.right)
        if isinstance(node.op, ast.Pow):
            q = _rational(node.right)
            if q is None:
                _fail(node.right, "exponent must be rational")
            return _to_form(node.left) ** q
        _fail(node, "sums and differences are only allowed inside exp()")
    _fail(node, "unsupported expression")


def _lin_mul(x: dict, y: dict) -> dict:
    out = {}
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            powers = {}
            for a, p in m1 + m2:
                powers[a] = powers.get(a, 0) + p
            mono = tuple(sorted(((a, p) for a, p in powers.items() if p), key=lambda t: t[0].sort_key()))
            _add(out, mono, c1 * c2)
    return out


def _to_linear(node) -> dict:
    """Parse an exp() argument into {monomial: coefficient}."""
    r = _rational(node)
    if r is not None:
        return {(): r} if r else {}
    if isinstance(node, ast.Name):
        atom = {"pi": _PI, "gamma": _GAMMA_C, "K": _K, "A": _A}.get(node.id)
        if atom is None:
            _fail(node, f"{node.id!r} is not allowed inside exp()")
        return {((atom, 1),): Fraction(1)}
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _to_linear(node.operand)
        return {m: -c for m, c in inner.items()} if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, (ast.Add, ast.Sub)):
            out = dict(_to_linear(node.left))
            sign = 1 if isinstance(node.op, ast.Add) else -1
            for m, c in _to_linear(node.right).items():
                _add(out, m, sign * c)
            return out
        if isinstance(node.op, ast.Mult):
            return _lin_mul(_to_linear(node.left), _to_linear(node.right))
        if isinstance(node.op, ast.Div):
            den = _to_linear(node.right)
            if len(den) != 1:
                _fail(node.right, "can only divide by a single monomial inside exp()")
            (mono, c), = den.items()
            inv = {tuple((a, -p) for a, p in mono): 1 / c}
            return _lin_mul(_to_linear(node.left), inv)
        if isinstance(node.op, ast.Pow):
            q = _rational(node.right)
            if q is None or q.denominator != 1:
                _fail(node.right, "only integer powers are allowed inside exp()")
            base = _to_linear(node.left)
            if len(base) != 1:
                _fail(node.left, "only monomials can be raised to a power inside exp()")
            (mono, c), = base.items()
            n = int(q)
            return {tuple((a, p * n) for a, p in mono): c ** n}
    _fail(node, "unsupported expression inside exp()")


def parse_closed_form(text: str) -> ClosedForm:
    """Parse closed-form text (see module docstring for the grammar)."""
    src = text.strip()
    if not src:
        raise SpecParseError("empty closed form", 1, 1)
    try:
        tree = ast.parse(src.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise SpecParseError(f"syntax error: {exc.msg}", 1, exc.offset) from None
    try:
        return _to_form(tree.body)
    except DomainError as exc:
        raise SpecParseError(str(exc), 1, 1) from None


# -- evaluation ------------------------------------------------------------------

def _atom_log(atom: Atom, wp: int) -> Ball:
    k = atom.kind
    if k == "pi":
        return special._pi(wp).log()
    if k == "gamma":
        return special._gamma_c(wp).log()
    if k == "K":
        return special._catalan_c(wp).log()
    if k == "A":
        return special._ln_glaisher(wp)
    if k == "prime":
        return Ball.exact(atom.arg, wp).log()
    if k == "Gamma":
        return special._lngamma(Fraction(atom.arg), wp)
    if k == "G":
        return special._barnes(Fraction(atom.arg), wp)
    if k == "sinpi":
        return special.sinpi(atom.arg, wp).log()
    raise IrreducibleClosedForm(f"cannot evaluate {atom.text()} numerically")


def _atom_value(atom: Atom, wp: int) -> Ball:
    k = atom.kind
    if k == "pi":
        return special._pi(wp)
    if k == "gamma":
        return special._gamma_c(wp)
    if k == "K":
        return special._catalan_c(wp)
    return _atom_log(atom, wp).exp()


def eval_log(cf: ClosedForm, wp: int) -> Ball:
    """Natural log of the closed form's value, as a ball at ``wp`` bits."""
    bad = [a for a, _ in cf.factors if a.kind == "Gamma_n"]
    if bad:
        raise IrreducibleClosedForm(
            "closed form still contains " + ", ".join(a.text() for a in bad)
        )
    total = Ball.exact(0, wp)
    for a, e in cf.factors:
        total = total + _atom_log(a, wp) * e
    for mono, c in cf.expo:
        term = Ball.exact(c, wp)
        for a, p in mono:
            term = term * _atom_value(a, wp).pow_int(p)
        total = total + term
    return total


def eval_closed_form(cf: ClosedForm, ctx: PrecCtx | None = None) -> Ball:
    """Certified numeric value of a closed form with no multiple-gamma atoms."""
    ctx = ctx or PrecCtx()
    value = eval_log(cf, ctx.prec_bits + 24).exp()
    return ctx.check(value, "closed form value")
