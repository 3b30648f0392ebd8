"""Text format for product specs.

::

    # Wallis
    a = [0, 0]
    b = [-1/2, 1/2]
    exponent = 1        # 1, k, k^2, binom(n) or a polynomial in k
    start = 1           # optional, default 1
    expect = pi/2       # optional closed form

Keys may appear in any order; ``#`` starts a comment; LF and CRLF line
endings are both accepted.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction

from .closedform import parse_closed_form
from .errors import SpecParseError
from .products import ProductSpec, binom_exponent

__all__ = ["SpecFile", "parse_spec_file", "render_spec_file", "parse_exponent", "render_exponent", "read_spec_file"]

_KEYS = ("name", "a", "b", "exponent", "start", "expect")


@dataclass(frozen=True)
class SpecFile:
    spec: ProductSpec
    expect: str | None = None
    name: str | None = None


def _parse_list(value: str, line: int, col: int) -> tuple:
    v = value.rstrip()
    if not (v.startswith("[") and v.endswith("]")):
        raise SpecParseError("expected a bracketed list like [0, 1/2]", line, col)
    body = v[1:-1]
    if not body.strip():
        raise SpecParseError("list must not be empty", line, col)
    out = []
    pos = col + 1
    for item in body.split(","):
        lead = len(item) - len(item.lstrip())
        text = item.strip()
        where = pos + lead
        if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", text):
            raise SpecParseError(f"invalid rational {text!r}", line, where)
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise SpecParseError(f"zero denominator in {text!r}", line, where)
        out.append(Fraction(int(num), int(den)) if den else Fraction(int(num)))
        pos += len(item) + 1
    return tuple(out)


def _poly(node, line, col) -> list:
    def fail(msg, n):
        raise SpecParseError(msg, line, col + getattr(n, "col_offset", 0))

    def add(x, y, sign=1):
        n = max(len(x), len(y))
        x = x + [Fraction(0)] * (n - len(x))
        y = y + [Fraction(0)] * (n - len(y))
        return [p + sign * q for p, q in zip(x, y)]

    def mul(x, y):
        out = [Fraction(0)] * (len(x) + len(y) - 1)
        for i, p in enumerate(x):
            for j, q in enumerate(y):
                out[i + j] += p * q
        return out

    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return [Fraction(node.value)]
    if isinstance(node, ast.Name):
        if node.id != "k":
            fail(f"unknown name {node.id!r}; the index variable is k", node)
        return [Fraction(0), Fraction(1)]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        p = _poly(node.operand, line, col)
        return [-c for c in p] if isinstance(node.op, ast.USub) else p
    if isinstance(node, ast.BinOp):
        left = _poly(node.left, line, col)
        right = _poly(node.right, line, col)
        if isinstance(node.op, ast.Add):
            return add(left, right)
        if isinstance(node.op, ast.Sub):
            return add(left, right, -1)
        if isinstance(node.op, ast.Mult):
            return mul(left, right)
        if isinstance(node.op, ast.Div):
            if len(right) != 1 or right[0] == 0:
                fail("can only divide by a nonzero number", node.right)
            return [c / right[0] for c in left]
        if isinstance(node.op, ast.Pow):
            if len(right) != 1 or right[0].denominator != 1 or right[0] < 0:
                fail("powers of k must be nonnegative integers", node.right)
            out = [Fraction(1)]
            for _ in range(int(right[0])):
                out = mul(out, left)
            return out
    fail("unsupported exponent expression", node)


def parse_exponent(text: str, line: int = 1, col: int = 1) -> tuple:
    """Coefficients (c0, c1, ...) of an exponent given as text."""
    t = text.strip()
    m = re.fullmatch(r"binom\(\s*(\d+)\s*\)", t)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise SpecParseError("binom(n) needs n >= 1", line, col)
        return binom_exponent(n)
    try:
        tree = ast.parse(t.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise SpecParseError(f"syntax error in exponent: {exc.msg}", line, col + (exc.offset or 1) - 1) from None
    coeffs = _poly(tree.body, line, col)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def render_exponent(poly) -> str:
    poly = tuple(Fraction(c) for c in poly)
    for n in range(1, len(poly) + 1):
        if binom_exponent(n) == poly:
            return {1: "1", 2: "k"}.get(n, f"binom({n})")
    terms = []
    for m in range(len(poly) - 1, -1, -1):
        c = poly[m]
        if c == 0:
            continue
        var = "" if m == 0 else ("k" if m == 1 else f"k^{m}")
        mag = abs(c)
        if not var:
            body = str(mag)
        elif mag == 1:
            body = var
        else:
            body = f"{mag}*{var}"
        if not terms:
            terms.append(body if c > 0 else "-" + body)
        else:
            terms.append((" + " if c > 0 else " - ") + body)
    return "".join(terms) or "0"


def parse_spec_file(text: str) -> SpecFile:
    """Parse spec-file text; errors carry 1-based line and column."""
    text = text.lstrip("\ufeff")
    seen = {}
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise SpecParseError("expected 'key = value'", lineno, len(line) - len(line.lstrip()) + 1)
        key_part, value = line.split("=", 1)
        key = key_part.strip()
        kcol = len(key_part) - len(key_part.lstrip()) + 1
        if key not in _KEYS:
            raise SpecParseError(f"unknown key {key!r}", lineno, kcol)
        if key in seen:
            raise SpecParseError(f"duplicate key {key!r}", lineno, kcol)
        vcol = len(key_part) + 2 + (len(value) - len(value.lstrip()))
        seen[key] = (value.strip(), lineno, vcol)
    for key in ("a", "b"):
        if key not in seen:
            raise SpecParseError(f"missing required key {key!r}", None)
    a = _parse_list(*seen["a"])
    b = _parse_list(*seen["b"])
    if "exponent" in seen:
        text_e, ln, cl = seen["exponent"]
        exponent = parse_exponent(text_e, ln, cl)
    else:
        exponent = (Fraction(1),)
    start = 1
    if "start" in seen:
        text_s, ln, cl = seen["start"]
        if text_s not in ("0", "1"):
            raise SpecParseError("start must be 0 or 1", ln, cl)
        start = int(text_s)
    expect = None
    if "expect" in seen:
        expect, ln, cl = seen["expect"]
        try:
            parse_closed_form(expect)
        except SpecParseError as exc:
            raise SpecParseError(f"bad expect: {exc}", ln, cl) from None
    name = seen["name"][0] if "name" in seen else None
    return SpecFile(ProductSpec(a, b, exponent, start), expect, name)


def read_spec_file(path) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse_spec_file(fh.read())


def _fmt_list(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def render_spec_file(sf: SpecFile | ProductSpec, expect: str | None = None, name: str | None = None) -> str:
    """Spec-file text; ``parse_spec_file`` of the result gives the same spec."""
    if isinstance(sf, ProductSpec):
        sf = SpecFile(sf, expect, name)
    lines = []
    if sf.name:
        lines.append(f"name = {sf.name}")
    s = sf.spec
    lines.append(f"a = {_fmt_list(s.a)}")
    lines.append(f"b = {_fmt_list(s.b)}")
    lines.append(f"exponent = {render_exponent(s.exponent_poly)}")
    lines.append(f"start = {s.start}")
    if sf.expect:
        lines.append(f"expect = {sf.expect}")
    return "\n".join(lines) + "\n"
