#!/usr/bin/env python3
"""
qcalc - q-calculus evaluator, tabulator and identity verifier.

    qcalc eval   --fn NAME [parameters]       one value as JSON
    qcalc table  --fn NAME [parameter grids]  CSV over a parameter grid
    qcalc verify --suite NAME [options]       JSON array of identity reports

Exit codes: 0 success, 1 identity failed, 2 usage or domain error,
3 non-convergence.
"""

import csv
import io
import itertools
import json
import logging
import sys
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .catalog import (CATALOG, PARAMETER_KINDS, ParamKind, evaluate, format_cell, parse_grid,
                      parse_list, parse_scalar, resolve)
from .deformed_exp import NAMED_EXPONENTIALS
from .qcore import (DEFAULT_MAX_TERMS, DEFAULT_REL_TOL, DomainError, ExitCode, NonConvergence,
                    QCalcError, QuadratureError, SeriesPolicy)
from .suites import DEFAULT_SEED, SUITE_NAMES, SuiteConfig, run_suite

RESULT_COLUMNS = ("re", "im", "terms_used", "converged", "est_error")

# Configure module logger
logger = logging.getLogger('qcalc.cli')


# ============================================================================
# ERRORS AS JSON
# ============================================================================

def _error_document(kind: str, message: str, **extra: Any) -> str:
    return json.dumps({"error": dict({"type": kind, "message": message}, **extra)}, indent=2)


class JsonError(click.ClickException):
    """A failure reported as a JSON error object on stdout."""

    def __init__(self, kind: str, message: str, exit_code: int, **extra: Any):
        super().__init__(message)
        self.kind = kind
        self.exit_code = int(exit_code)
        self.extra = extra

    def show(self, file=None) -> None:
        click.echo(_error_document(self.kind, self.format_message(), **self.extra))


class QCalcGroup(click.Group):
    """Group that reports click's own usage errors as JSON too."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except JsonError as exc:
            exc.show()
            code = exc.exit_code
        except click.UsageError as exc:
            click.echo(_error_document("UsageError", exc.format_message()))
            code = ExitCode.USAGE
        except click.ClickException as exc:
            click.echo(_error_document(type(exc).__name__, exc.format_message()))
            code = exc.exit_code
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = 1
        code = int(code or 0)
        if standalone_mode:
            sys.exit(code)
        return code


@contextmanager
def translate_errors() -> Iterator[None]:
    """Map library exceptions to JSON errors with their exit codes."""
    try:
        yield
    except NonConvergence as exc:
        extra = {"partial": exc.partial.to_dict()} if exc.partial is not None else {}
        raise JsonError("NonConvergence", str(exc), ExitCode.NON_CONVERGENCE, **extra) from exc
    except QuadratureError as exc:
        raise JsonError("QuadratureError", str(exc), ExitCode.NON_CONVERGENCE) from exc
    except DomainError as exc:
        raise JsonError("DomainError", str(exc), ExitCode.USAGE) from exc
    except QCalcError as exc:
        raise JsonError(type(exc).__name__, str(exc), ExitCode.USAGE) from exc


# ============================================================================
# PARAMETER TYPES
# ============================================================================

class ScalarParam(click.ParamType):
    name = "scalar"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_scalar(value)
        except DomainError as exc:
            self.fail(str(exc), param, ctx)


class ListParam(click.ParamType):
    name = "list"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_list(value)
        except DomainError as exc:
            self.fail(str(exc), param, ctx)


class GridParam(click.ParamType):
    """A grid axis: ``a..b``, ``start:stop:count``, ``a,b,c`` or one value."""

    name = "grid"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_grid(value)
        except DomainError as exc:
            self.fail(str(exc), param, ctx)


SCALAR = ScalarParam()
LIST = ListParam()
GRID = GridParam()


def function_options(gridded: bool):
    """Attach one option per catalog parameter."""

    def decorate(command):
        for key in reversed(list(PARAMETER_KINDS)):
            kind = PARAMETER_KINDS[key]
            flag = f"--{key.replace('_', '-')}"
            if kind is ParamKind.NAME:
                option = click.option(flag, key, type=click.Choice(NAMED_EXPONENTIALS),
                                      help="Exponential name for named-exp.")
            elif kind is ParamKind.LIST:
                option = click.option(flag, key, type=LIST, help="Comma-separated parameter list.")
            else:
                option = click.option(flag, key, type=GRID if gridded else SCALAR)
            command = option(command)
        return command

    return decorate


def policy_options(command):
    command = click.option("--max-terms", type=int, default=DEFAULT_MAX_TERMS, show_default=True,
                           help="Term budget of every infinite series.")(command)
    command = click.option("--rel-tol", type=float, default=DEFAULT_REL_TOL, show_default=True,
                           help="Relative size below which a term counts as small.")(command)
    return command


def _policy(rel_tol: float, max_terms: int) -> SeriesPolicy:
    with translate_errors():
        return SeriesPolicy(rel_tol=rel_tol, max_terms=max_terms)


def _supplied(params: Dict[str, Any]) -> Dict[str, Any]:
    return {key: value for key, value in params.items() if key in PARAMETER_KINDS and value is not None}


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    root = logging.getLogger('qcalc')
    root.setLevel(level)
    if not any(isinstance(handler, RichHandler) for handler in root.handlers):
        handler = RichHandler(console=Console(stderr=True), show_path=False)
        handler.setFormatter(logging.Formatter("%(message)s"))
        root.addHandler(handler)


# ============================================================================
# COMMANDS
# ============================================================================

@click.group(cls=QCalcGroup)
@click.version_option(__version__, prog_name="qcalc")
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG logs on stderr.")
def cli(verbose: int) -> None:
    """Evaluate, tabulate and verify q-deformed special functions."""
    _configure_logging(verbose)


@cli.command("eval")
@click.option("--fn", "function", required=True, type=click.Choice(list(CATALOG)), help="Function to evaluate.")
@function_options(gridded=False)
@policy_options
@click.pass_context
def eval_command(ctx: click.Context, function: str, rel_tol: float, max_terms: int, **params: Any) -> None:
    """Evaluate one function and print {value, terms_used, converged, est_error}."""
    policy = _policy(rel_tol, max_terms)
    with translate_errors():
        result = evaluate(function, _supplied(params), policy)
    click.echo(json.dumps(result.to_dict(), indent=2))
    ctx.exit(ExitCode.SUCCESS)


@cli.command("table")
@click.option("--fn", "function", required=True, type=click.Choice(list(CATALOG)), help="Function to tabulate.")
@click.option("--columns", default=None,
              help=f"Comma-separated output columns (parameters or {', '.join(RESULT_COLUMNS)}).")
@function_options(gridded=True)
@policy_options
@click.pass_context
def table_command(ctx: click.Context, function: str, columns: Optional[str], rel_tol: float,
                  max_terms: int, **params: Any) -> None:
    """Tabulate a function over the cartesian product of its parameter grids as CSV."""
    policy = _policy(rel_tol, max_terms)
    supplied = _supplied(params)
    with translate_errors():
        entry, _ = resolve(function, supplied)
        axes = [key for key in entry.parameters if key in supplied
                and PARAMETER_KINDS[key] in (ParamKind.INTEGER, ParamKind.SCALAR)]
        fixed = {key: value for key, value in supplied.items() if key not in axes}
        available = list(axes) + list(RESULT_COLUMNS)
        selected = available if columns is None else [c.strip() for c in columns.split(",") if c.strip()]
        unknown = [c for c in selected if c not in available]
        if unknown or not selected:
            raise DomainError(f"unknown columns {unknown}; choose from {', '.join(available)}")

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(selected)
        rows = 0
        for point in itertools.product(*(supplied[key] for key in axes)):
            arguments = dict(fixed, **dict(zip(axes, point)))
            result = evaluate(function, arguments, policy)
            value = complex(result.value)
            cells = dict(zip(axes, point), re=value.real, im=value.imag,
                         terms_used=result.series.terms_used, converged=result.series.converged,
                         est_error=result.series.est_error)
            writer.writerow([format_cell(cells[c]) for c in selected])
            rows += 1
    logger.info("Tabulated %d rows of %s", rows, function)
    click.echo(buffer.getvalue(), nl=False)
    ctx.exit(ExitCode.SUCCESS)


@cli.command("verify")
@click.option("--suite", required=True, type=click.Choice(list(SUITE_NAMES)), help="Identity suite to run.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed of the random draws.")
@click.option("--tol", type=float, default=None, help="Override every check's tolerance.")
@click.option("--exact", is_flag=True, help="Rational arithmetic for the structural suites.")
@click.option("--max-n", type=int, default=None, help="Highest degree or index checked.")
@click.option("--threads", type=int, default=1, show_default=True, help="Worker threads.")
@policy_options
@click.pass_context
def verify_command(ctx: click.Context, suite: str, seed: int, tol: Optional[float], exact: bool,
                   max_n: Optional[int], threads: int, rel_tol: float, max_terms: int) -> None:
    """Run an identity suite and print its reports; exit 1 if any failed."""
    policy = _policy(rel_tol, max_terms)
    with translate_errors():
        config = SuiteConfig(seed=seed, tol=tol, exact=exact, max_n=max_n, threads=threads, policy=policy)
        reports = run_suite(suite, config)
    click.echo(json.dumps([report.to_dict() for report in reports], indent=2))
    failed: List[str] = [report.identity_name for report in reports if not report.passed]
    if failed:
        logger.warning("%d of %d identities failed", len(failed), len(reports))
        ctx.exit(ExitCode.IDENTITY_FAILED)
    ctx.exit(ExitCode.SUCCESS)


def main() -> None:
    cli(prog_name="qcalc")


if __name__ == "__main__":
    main()
