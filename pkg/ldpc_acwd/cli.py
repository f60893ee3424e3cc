"""
Command line interface.

Usage:
    ldpc-acwd acwd --spec bipartite_2_4.json --format markdown
    ldpc-acwd oracle --spec small_bipartite.json
    ldpc-acwd agr --j 3 --k 6 --eta 0,0.2,0.4,0.6,0.8,1.0 --grid 200
    ldpc-acwd typical-weight --j 3 --k 6 --eta 0.2,0.8
    ldpc-acwd split-acwd --spec concat.json --mode weight

Exit codes: 0 success, 1 oracle mismatch, 2 invalid spec or parameters,
3 budget exceeded, 4 numerical failure.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path
from typing import Callable, List, Optional

import click
import numpy as np

from . import log
from .__version__ import __version__
from .asymptotic import BipartiteGrowth, agr_curve, typical_coset_weight
from .config import Budgets, Settings
from .document import (
    FORMATS,
    ResultDocument,
    acwd_result,
    agr_result,
    load_spec,
    oracle_result,
    parse_spec,
    render,
    split_weight_result,
    typical_weight_result,
)
from .ensembles.expr import Concat
from .evaluation import EnsembleEvaluator
from .exceptions import AcwdError, SymmetryError
from .oracle import bruteforce_distribution, enumerate_expr

CONTEXT_SETTINGS = {"help_option_names": ["-h", "--help"]}
DEFAULT_ETAS = "0,0.2,0.4,0.6,0.8,1.0"

logger = log._AcwdLogger("CLI", log.acwd_logger)


def handle_errors(func: Callable) -> Callable:
    """Report package errors on stderr and exit with their code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except AcwdError as exc:
            click.echo(f"Error: {exc}", err=True)
            sys.exit(exc.exit_code)

    return wrapper


def parse_floats(ctx, param, value: str) -> List[float]:
    try:
        values = [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected a comma separated list of numbers, got {value!r}")
    if not values:
        raise click.BadParameter("at least one value is required")
    return values


def emit(doc: ResultDocument, fmt: str, out: Optional[str], as_float: bool = False) -> None:
    text = render(doc, fmt, as_float)
    if out:
        Path(out).write_text(text)
        logger.info(f"Wrote {doc.kind} to {out}")
    else:
        click.echo(text, nl=False)


spec_option = click.option(
    "--spec", "spec_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Ensemble spec (JSON)."
)
format_option = click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write here instead of stdout.")
float_option = click.option("--float", "as_float", is_flag=True, help="Render rationals as floats (12 digits).")


@click.group(context_settings=CONTEXT_SETTINGS)
@click.version_option(version=__version__, prog_name="ldpc-acwd")
@click.option("--verbose", is_flag=True, help="Debug logging on stderr.")
@click.option("--progress", is_flag=True, help="Show progress bars.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Thread pool size for table fills.")
@click.pass_context
def cli(ctx, verbose: bool, progress: bool, workers: Optional[int]):
    """
    Exact average coset weight distributions of LDPC ensembles and their
    asymptotic growth rates.
    """
    log.set_verbose(verbose)
    env = Settings.from_env()
    ctx.obj = Settings(workers=workers or env.workers, show_progress=progress or env.show_progress)


def _evaluator(ctx) -> EnsembleEvaluator:
    return EnsembleEvaluator(budgets=Budgets.from_env(), settings=ctx.obj)


@cli.command()
@spec_option
@format_option
@out_option
@float_option
@click.pass_context
@handle_errors
def acwd(ctx, spec_path: str, fmt: str, out: Optional[str], as_float: bool):
    """
    Exact ACWD of an ensemble: the (w, sigma) table when the ensemble is row
    symmetric, otherwise its split syndrome tensor.
    """
    spec = load_spec(spec_path)
    expr = parse_spec(spec)
    logger.debug(f"Evaluating {expr}")
    emit(acwd_result(spec, _evaluator(ctx).evaluate(expr)), fmt, out, as_float)


@cli.command()
@spec_option
@format_option
@out_option
@float_option
@click.pass_context
@handle_errors
def oracle(ctx, spec_path: str, fmt: str, out: Optional[str], as_float: bool):
    """Closed form against brute force at every (w, s), with an exact_match verdict."""
    spec = load_spec(spec_path)
    expr = parse_spec(spec)
    budgets = Budgets.from_env()
    evaluator = _evaluator(ctx)

    members = enumerate_expr(expr, budgets)
    logger.info(f"Enumerated {members.size} members ({members.distinct} distinct)")
    brute = bruteforce_distribution(members, budgets, ctx.obj)
    closed = [[evaluator.acwd(expr, s, w) for s in range(1 << expr.m)] for w in range(expr.n + 1)]

    doc = oracle_result(spec, expr.m, closed, brute, members.size)
    emit(doc, fmt, out, as_float)
    if not doc.payload["exact_match"]:
        click.echo("Error: closed form and brute force disagree", err=True)
        sys.exit(1)


@cli.command()
@click.option("--j", "j", type=int, required=True, help="Column weight.")
@click.option("--k", "k", type=int, required=True, help="Row weight.")
@click.option("--eta", default=DEFAULT_ETAS, show_default=True, callback=parse_floats, help="Normalized syndrome weights.")
@click.option("--grid", type=click.IntRange(min=1), default=100, show_default=True, help="Intervals on l in [0, 1].")
@format_option
@out_option
@handle_errors
def agr(j: int, k: int, eta: List[float], grid: int, fmt: str, out: Optional[str]):
    """AGR curves l -> b_l(eta) of the (j,k)-regular bipartite ensemble, one per eta."""
    growth = BipartiteGrowth(j, k)
    ells = np.linspace(0.0, 1.0, grid + 1)
    curves = [agr_curve(growth, e, ells) for e in eta]
    emit(agr_result(j, k, curves), fmt, out)


@cli.command("typical-weight")
@click.option("--j", "j", type=int, required=True, help="Column weight.")
@click.option("--k", "k", type=int, required=True, help="Row weight.")
@click.option("--eta", default="0.2", show_default=True, callback=parse_floats, help="Normalized syndrome weights.")
@click.option("--grid", type=click.IntRange(min=2), default=1000, show_default=True, help="Sign sampling grid on (0, 1].")
@format_option
@out_option
@handle_errors
def typical_weight(j: int, k: int, eta: List[float], grid: int, fmt: str, out: Optional[str]):
    """Typical coset weight theta_eta, the first l where b_l(eta) >= 0."""
    growth = BipartiteGrowth(j, k)
    weights = {e: typical_coset_weight(growth.at_eta(e), grid=grid) for e in eta}
    emit(typical_weight_result(j, k, weights), fmt, out)


@cli.command("split-acwd")
@spec_option
@click.option("--mode", type=click.Choice(["tensor", "weight"]), default="tensor", show_default=True)
@format_option
@out_option
@float_option
@click.pass_context
@handle_errors
def split_acwd(ctx, spec_path: str, mode: str, fmt: str, out: Optional[str], as_float: bool):
    """
    Split ACWDs.

    tensor: C~_w(sigma_1, ..., sigma_u) over the expression's row partition.
    weight: B~_{w1,w2}(sigma) of a row symmetric concatenation, w1 on all
    components but the last and w2 on the last.
    """
    spec = load_spec(spec_path)
    expr = parse_spec(spec)
    evaluator = _evaluator(ctx)

    if mode == "tensor":
        emit(acwd_result(spec, evaluator.split_tensor(expr)), fmt, out, as_float)
        return

    if not isinstance(expr, Concat) or len(expr.children) < 2:
        raise SymmetryError("--mode weight needs a concatenation of at least two components", expr)
    head_n = expr.n - expr.children[-1].n
    cells = []
    for sigma in range(expr.m + 1):
        for w1 in range(head_n + 1):
            for w2 in range(expr.children[-1].n + 1):
                value = evaluator.split_weight_acwd(expr, sigma, w1, w2)
                if value:
                    cells.append({"sigma": sigma, "w1": w1, "w2": w2, "value": value})
    emit(split_weight_result(spec, cells), fmt, out, as_float)


if __name__ == "__main__":
    cli()
