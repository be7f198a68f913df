"""
Module: app.py

Click command group for ``knsuper``: ``eval``, ``table`` and ``verify``.

Every command runs under the latency histogram. Library errors are counted,
logged with traceback, reported on stderr as one line and mapped to the exit
code carried by the exception class (1 verification, 2 parse, 3 domain/config).
"""
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Optional

import click
from pydantic import ValidationError

from knsuper import __version__
from knsuper.algebras.antijordan import table_C1_J
from knsuper.algebras.liesuper import table_C1_L, table_c2
from knsuper.cli.evaluator import evaluate
from knsuper.cli.expr import render_expr
from knsuper.cli.grammar import parse
from knsuper.cli.models import EvalResult, RunConfig
from knsuper.cli.render import render_eval, render_report, render_value, scalar_renderer
from knsuper.cli.suites import SUITE_NAMES, run_suite
from knsuper.config.settings import get_settings
from knsuper.core.errors import ConfigError, KNError, VerificationError
from knsuper.logger.logger import log_path, set_level, setup_logger
from knsuper.monitoring.metrics import COMMAND_LATENCY, ERROR_COUNT, dump_metrics

logger = setup_logger("cli", log_path("cli"))

TABLES = {"c2": table_c2, "C1L": table_C1_L, "C1J": table_C1_J}


@dataclass
class CliState:
    run: RunConfig
    metrics_file: Optional[str]


def _report_error(command: str, exc: KNError) -> None:
    ERROR_COUNT.labels(command=command, error_type=type(exc).__name__).inc()
    logger.error("%s failed: %s", command, exc, exc_info=True)
    click.echo(f"error: {exc}", err=True)


@contextmanager
def _command(ctx: click.Context, name: str) -> Iterator[RunConfig]:
    state: CliState = ctx.obj
    try:
        with COMMAND_LATENCY.labels(command=name).time():
            yield state.run
    except KNError as exc:
        _report_error(name, exc)
        ctx.exit(exc.exit_code)
    finally:
        if state.metrics_file:
            dump_metrics(state.metrics_file)


@click.group()
@click.version_option(__version__, prog_name="knsuper")
@click.option("--points", type=click.Choice(["2", "3"]), default=None,
              help="Puncture configuration: 2 = {0, inf}, 3 = {al, -al, inf}.")
@click.option("--beta", default=None, help="Rational value substituted for rt (al = rt^2).")
@click.option("--window", type=int, default=None, help="Index window for tables and suites.")
@click.option("--connection", default=None, help="Projective connection R as a function of z.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "pretty"]), default=None)
@click.option("--seed", type=int, default=None, help="Seed of the randomized suites.")
@click.option("--samples", type=int, default=None, help="Sample count of the randomized suites.")
@click.option("--metrics-file", default=None, help="Write prometheus metrics here after the command.")
@click.option("--log-level", default=None, help="Override the configured log level.")
@click.pass_context
def cli(ctx: click.Context, points, beta, window, connection, fmt, seed, samples, metrics_file, log_level):
    """Krichever-Novikov superalgebras on the sphere: evaluate, tabulate, verify."""
    settings = get_settings()
    if log_level:
        set_level(log_level)
    options = {
        "points": int(points) if points else settings.points,
        "beta": beta,
        "window": window if window is not None else settings.window,
        "connection": connection,
        "format": fmt or settings.format,
        "seed": seed if seed is not None else settings.seed,
        "samples": samples if samples is not None else settings.samples,
    }
    try:
        run = RunConfig(**options)
    except ValidationError as exc:
        message = "; ".join(err["msg"] for err in exc.errors())
        _report_error("config", ConfigError(message))
        ctx.exit(ConfigError.exit_code)
    logger.info("Run configuration: %s", run.summary())
    ctx.obj = CliState(run, metrics_file or settings.metrics_file)


@cli.command("eval")
@click.argument("expression")
@click.pass_context
def eval_command(ctx: click.Context, expression: str):
    """Evaluate EXPRESSION, e.g. 'c2(V[2], V[-2])'."""
    with _command(ctx, "eval") as run:
        expr = parse(expression)
        value = evaluate(expr, run.puncture, run.projective_connection())
        result = EvalResult(expr=render_expr(expr), value=render_value(value, run), config=run.summary())
        click.echo(render_eval(result, run.format))


@cli.command("table")
@click.argument("kind", type=click.Choice(sorted(TABLES)))
@click.pass_context
def table_command(ctx: click.Context, kind: str):
    """Emit the structure table KIND over the window."""
    with _command(ctx, "table") as run:
        table = TABLES[kind](run.window, run.puncture, run.projective_connection())
        click.echo(table.render(run.format, scalar_renderer(run)))


@cli.command("verify")
@click.argument("suite", type=click.Choice(SUITE_NAMES))
@click.pass_context
def verify_command(ctx: click.Context, suite: str):
    """Run a verification SUITE; exit code 1 when any check fails."""
    with _command(ctx, "verify") as run:
        report = run_suite(suite, run)
        click.echo(render_report(report, run.format))
        if not report.passed:
            failed = sum(c.status == "fail" for c in report.checks)
            raise VerificationError(f"suite {suite}: {failed} check(s) failed")
