"""``wallis`` command line.

Exit codes: 0 ok, 1 parse error, 2 constraint/domain error, 3 tolerance not
met after escalation, 4 identity falsified (disjoint intervals).
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from . import catalog
from .arith import Ball, PrecCtx, with_escalation
from .closedform import eval_closed_form, parse_closed_form, print_closed_form
from .errors import IdentityFalsified, WallisError
from .identities import (
    analogue_type2,
    closed_form,
    double_product_reduce,
    gen_radical,
    gen_rational,
    radical_text,
)
from .products import check_moments, eval_product, required_order
from .pte import PTEQuery, pte_search, pte_to_spec
from .specfile import read_spec_file, render_spec_file


def _cap(prec: int) -> int:
    """Escalation cap in bits: WALLIS_PREC_CAP, else four times the starting precision."""
    raw = os.environ.get("WALLIS_PREC_CAP")
    if not raw:
        return 4 * prec
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"WALLIS_PREC_CAP must be an integer, got {raw!r}")


class _Group(click.Group):
    """Group whose usage errors exit 1 and whose library errors map to their exit codes."""

    def main(self, args=None, prog_name=None, **extra):
        extra["standalone_mode"] = False
        try:
            rv = super().main(args, prog_name, **extra)
        except click.ClickException as exc:
            exc.show()
            sys.exit(1)
        except click.exceptions.Abort:
            click.echo("aborted", err=True)
            sys.exit(1)
        except WallisError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.exit_code)
        sys.exit(rv if isinstance(rv, int) else 0)


def _numeric_options(f):
    f = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")(f)
    f = click.option("--terms", type=int, default=None, help="Explicit partial-product cut-off K.")(f)
    f = click.option("--tol", type=float, default=1e-25, show_default=True, help="Target absolute error.")(f)
    f = click.option("--prec", type=int, default=128, show_default=True, help="Working precision in bits.")(f)
    return f


def _ctx(prec, tol) -> PrecCtx:
    try:
        return PrecCtx(prec, tol)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _emit_json(value: Ball | None, cf: str | None, verdict: str, **more):
    out = {
        "value": None if value is None else value.to_str().split(" ± ")[0],
        "rad": None if value is None else f"{float(value.rad_fraction):.3e}",
        "closed_form": cf,
        "verdict": verdict,
    }
    out.update(more)
    click.echo(json.dumps(out, sort_keys=True))


def _product(spec, ctx, terms):
    return with_escalation(lambda c: eval_product(spec, c, terms=terms).value, ctx, _cap(ctx.prec_bits))


def _cf_value(cf, ctx):
    return with_escalation(lambda c: eval_closed_form(cf, c), ctx, _cap(ctx.prec_bits))


@click.group(cls=_Group)
def cli():
    """Validate, evaluate and transform generalized Wallis products."""


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def check(path, as_json):
    """Compare the power sums of a and b up to the order the exponent needs."""
    spec = read_spec_file(path).spec
    r = required_order(spec)
    report = check_moments(spec, r)
    ok = report.max_matched_order >= r
    lines = []
    for row in report.rows:
        if row.equal:
            lines.append(f"order {row.order}: OK")
        else:
            lines.append(f"order {row.order}: FAIL ({row.sum_a} ≠ {row.sum_b})")
    if as_json:
        _emit_json(None, None, "OK" if ok else "FAIL", orders=lines)
    else:
        click.echo("\n".join(lines))
    return 0 if ok else 2


@cli.command(name="eval")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_numeric_options
def eval_cmd(path, prec, tol, terms, as_json):
    """Certified value of the product."""
    spec = read_spec_file(path).spec
    value = _product(spec, _ctx(prec, tol), terms)
    if as_json:
        _emit_json(value, None, "OK")
    else:
        click.echo(value.to_str())
    return 0


@cli.command(name="closed-form")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_numeric_options
def closed_form_cmd(path, prec, tol, terms, as_json):
    """Closed form of the product and its value."""
    spec = read_spec_file(path).spec
    cf = closed_form(spec)
    text = print_closed_form(cf)
    value = _cf_value(cf, _ctx(prec, tol)) if cf.fully_reduced else None
    if as_json:
        _emit_json(value, text, "OK" if value is not None else "IRREDUCIBLE")
        return 0
    click.echo(text)
    if value is None:
        click.echo("warning: closed form keeps multiple-gamma factors; no numeric value")
    else:
        click.echo(value.to_str())
    return 0


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_numeric_options
def compare(path, prec, tol, terms, as_json):
    """Evaluate the product and its closed form and test that the intervals meet."""
    sf = read_spec_file(path)
    ctx = _ctx(prec, tol)
    prod = _product(sf.spec, ctx, terms)
    cf = closed_form(sf.spec)
    text = print_closed_form(cf)
    lines = [f"product:     {prod.to_str()}", f"closed form: {text}"]
    checks = []
    warning = None
    if cf.fully_reduced:
        val = _cf_value(cf, ctx)
        lines.append(f"value:       {val.to_str()}")
        checks.append(val)
    else:
        warning = "warning: closed form keeps multiple-gamma factors; product only"
        lines.append(warning)
    if sf.expect is not None:
        ex = parse_closed_form(sf.expect)
        lines.append(f"expect:      {sf.expect}")
        if ex.fully_reduced:
            ev = _cf_value(ex, ctx)
            lines.append(f"expect value: {ev.to_str()}")
            checks.append(ev)
    ok = all(prod.overlaps(c) for c in checks)
    if checks:
        worst = max(abs(prod.mid_fraction - c.mid_fraction) + prod.rad_fraction + c.rad_fraction for c in checks)
        lines.append(f"|delta| <= {float(worst):.1e}")
    verdict = "OK" if ok else "FALSIFIED"
    lines.append(f"verdict: {verdict}")
    if as_json:
        _emit_json(prod, text, verdict, **({"warning": warning} if warning else {}))
    else:
        click.echo("\n".join(lines))
    return 0 if ok else IdentityFalsified.exit_code


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def analogue(path):
    """Type-II (exponent k) spec with the same value as a Type-I spec."""
    sf = read_spec_file(path)
    click.echo(render_spec_file(analogue_type2(sf.spec), expect=sf.expect), nl=False)
    return 0


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def double(path):
    """Reduce a Type-II spec through its double product to a Type-I spec, if possible."""
    sf = read_spec_file(path)
    res = double_product_reduce(sf.spec)
    click.echo(f"# residual per r: {res.template()}")
    if res.reducible:
        click.echo(render_spec_file(res.reduced, expect=sf.expect), nl=False)
    else:
        click.echo("# irreducible: the residual is not a rational function of r")
    return 0


@cli.command()
@click.argument("k", type=int)
def radical(k):
    """Type-I spec for the k-fold nested radical sqrt(2+sqrt(2+...))."""
    spec, _ = gen_radical(k)
    click.echo(render_spec_file(spec, expect=radical_text(k)), nl=False)
    return 0


@cli.command()
@click.argument("p", type=int)
@click.argument("q", type=int)
def rational(p, q):
    """Type-I spec converging to p/q."""
    spec, _ = gen_rational(p, q)
    click.echo(render_spec_file(spec, expect=str(Fraction(p, q))), nl=False)
    return 0


@cli.command()
@click.option("--order", type=int, required=True)
@click.option("--size", type=int, required=True)
@click.option("--height", type=int, required=True)
@click.option("--limit", type=int, default=None)
@click.option("--multiset", is_flag=True, help="Allow repeated entries on each side.")
@click.option("--emit-specs", is_flag=True, help="Also print a Type-n spec for each solution.")
def pte(order, size, height, limit, multiset, emit_specs):
    """Search equal-power-sum integer pairs (PTE solutions)."""
    try:
        query = PTEQuery(order, size, height, limit, multiset)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    for sol in pte_search(query):
        if emit_specs:
            click.echo(f"# {sol.text()}")
            click.echo(render_spec_file(pte_to_spec(sol, order)))
        else:
            click.echo(sol.text())
    return 0


@cli.command()
@click.option("--prec", type=int, default=128, show_default=True)
@click.option("--tol", type=float, default=1e-25, show_default=True)
@click.option("--corrupt", default=None, hidden=True)
def reproduce(prec, tol, corrupt):
    """Certify the full table of known identities."""
    ctx = _ctx(prec, tol)
    results = catalog.reproduce(ctx, _cap(prec), corrupt)
    w = max(len(r.row.name) for r in results)
    for r in results:
        verdict = "OK" if r.ok else "FALSIFIED"
        click.echo(
            f"{r.row.name:<{w}}  {catalog.spec_summary(r.row.spec)}  {r.row.expect}"
            f"  |delta| <= {r.delta_bound:.1e}  {verdict}"
        )
    return 0 if all(r.ok for r in results) else IdentityFalsified.exit_code


def main():
    cli()


if __name__ == "__main__":
    main()
