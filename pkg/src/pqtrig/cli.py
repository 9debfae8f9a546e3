"""Command-line interface.

Usage:
    pqtrig eval --p 2 --q 6 --fn sin --x 0.5
    pqtrig table --p 6/5 --q 6 --fn sin --x-lo 0 --x-hi 1 --n 11 --format csv
    pqtrig verify --suite all
    pqtrig elliptic --fn cn --u 0.3

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys

import click

from . import elliptic as ell
from .gtrig import ParamPair, asin_pq, cos_pq, parse_exponent, sin_pq
from .numerics import NumericsError
from .verify import SUITES, run_all, run_suite

__all__ = ["cli", "main"]

FUNCTIONS = ("sin", "cos", "asin", "pi")


class DomainFailure(click.ClickException):
    exit_code = 2


def _pair(p, q) -> ParamPair:
    try:
        return ParamPair(parse_exponent(p), parse_exponent(q))
    except NumericsError as exc:
        raise DomainFailure(str(exc)) from exc


def _evaluate(params, fn, x):
    if fn == "pi":
        return params.pi
    if x is None:
        raise DomainFailure(f"--x is required for --fn {fn}")
    try:
        if fn == "sin":
            return sin_pq(params, x)
        if fn == "cos":
            return cos_pq(params, x)
        return asin_pq(params, x)
    except NumericsError as exc:
        raise DomainFailure(str(exc)) from exc


def fmt15(v: float) -> str:
    return f"{v:.15g}"


@click.group()
def cli():
    """Generalized trigonometric functions sin_pq, cos_pq and pi_pq."""


@cli.command("eval")
@click.option("--p", "p", required=True, help="exponent p > 1 (e.g. 2, 1.2 or 6/5)")
@click.option("--q", "q", required=True, help="exponent q > 1")
@click.option("--fn", type=click.Choice(FUNCTIONS), required=True)
@click.option("--x", "x", type=float, default=None)
def cmd_eval(p, q, fn, x):
    """Print one value with 15 significant digits."""
    params = _pair(p, q)
    click.echo(fmt15(_evaluate(params, fn, x)))


def _write_rows(rows, fmt, out):
    if fmt == "json":
        out.write(json.dumps([{"x": x, "value": v} for x, v in rows]))
        out.write("\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "value"])
    for x, v in rows:
        writer.writerow([repr(x), repr(v)])
    out.write(buf.getvalue())


@cli.command("table")
@click.option("--p", "p", required=True)
@click.option("--q", "q", required=True)
@click.option("--fn", type=click.Choice(FUNCTIONS), required=True)
@click.option("--x-lo", type=float, required=True)
@click.option("--x-hi", type=float, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None)
def cmd_table(p, q, fn, x_lo, x_hi, n, fmt, output):
    """n equally spaced (x, value) rows on [x_lo, x_hi]."""
    if n < 2:
        raise DomainFailure(f"--n must be at least 2, got {n}")
    if not x_lo < x_hi:
        raise DomainFailure(f"need x_lo < x_hi, got [{x_lo}, {x_hi}]")
    params = _pair(p, q)
    step = (x_hi - x_lo) / (n - 1)
    xs = [x_lo + i * step for i in range(n - 1)] + [x_hi]
    rows = [(x, float(_evaluate(params, fn, x))) for x in xs]
    if output is None:
        _write_rows(rows, fmt, sys.stdout)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            _write_rows(rows, fmt, fh)


def _print_reports(reports, fmt, seed):
    if fmt == "json":
        click.echo(json.dumps([r.to_dict() for r in reports]))
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        fields = list(reports[0].to_dict()) if reports else []
        writer.writerow(fields)
        for r in reports:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in r.to_dict().values()])
        click.echo(buf.getvalue(), nl=False)
        return
    if seed is not None:
        click.echo(f"# seed {seed}")
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        click.echo(
            f"{status} {r.identity_name} domain=[{fmt15(r.domain_lo)}, {fmt15(r.domain_hi)}] "
            f"samples={r.samples} max_abs_err={r.max_abs_err:.3e} at x={fmt15(r.argmax_x)} "
            f"tol={r.tolerance:.0e}"
        )


@cli.command("verify")
@click.option("--suite", default="all", show_default=True, type=click.Choice(["all", *SUITES]))
@click.option("--samples", type=click.IntRange(min=1), default=None, help="points per identity (suite default if omitted)")
@click.option("--tol", type=float, default=None, help="override the suite tolerance")
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text", show_default=True)
@click.option("--seed", type=int, default=None, help="random interior sample points from this seed")
def cmd_verify(suite, samples, tol, fmt, seed):
    """Check the closed-form identities against direct evaluation."""
    if tol is not None and not tol > 0:
        raise DomainFailure("--tol must be positive")
    if suite == "all":
        reports = run_all(samples, tol, seed)
    else:
        reports = run_suite(suite, samples, tol, seed)
    if seed is not None and fmt != "text":
        click.echo(f"seed {seed}", err=True)
    _print_reports(reports, fmt, seed)
    if not all(r.passed for r in reports):
        sys.exit(1)


@cli.command("elliptic")
@click.option("--fn", type=click.Choice(["sn", "cn", "dn", "K"]), required=True)
@click.option("--u", "u", type=float, default=None)
@click.option("--k", "k", type=float, default=None, help="modulus k in [0, 1)")
@click.option("--k2", "k2", type=float, default=None, help="k**2; default (2 - sqrt 3)/4")
def cmd_elliptic(fn, u, k, k2):
    """Jacobi sn, cn, dn or the complete integral K."""
    try:
        if k is not None and k2 is not None:
            raise DomainFailure("give at most one of --k and --k2")
        if k is not None:
            m = ell.Modulus.from_k(k)
        elif k2 is not None:
            m = ell.Modulus.from_k_sq(k2)
        else:
            m = ell.MODULUS_26
        if fn == "K":
            click.echo(fmt15(ell.complete_K(m)))
            return
        if u is None or not math.isfinite(u):
            raise DomainFailure(f"--u is required for --fn {fn}")
        click.echo(fmt15(getattr(ell.jacobi(u, m), fn)))
    except NumericsError as exc:
        raise DomainFailure(str(exc)) from exc


def main(argv=None):
    cli.main(args=argv, prog_name="pqtrig")


if __name__ == "__main__":
    main()
