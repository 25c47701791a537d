"""
Command line interface for quintessa.

Exit codes: 0 success, 1 invalid input, 2 verification failure, 3 oracle protocol error.
"""

import asyncio
import logging
import sys
from enum import Enum
from typing import List, Optional

import click
import typer
from pydantic import BaseModel
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from quintessa.classifier import (
    classify as classify_radicand,
    hypothesis_check,
    normalize_radicand,
    suggest_auxiliary_primes,
)
from quintessa.config import configure_logging, get_settings
from quintessa.cyclo5 import CycInt
from quintessa.exceptions import OracleProtocolError, QuintessaError
from quintessa.harness import shipped_fixtures, verify_tables, verify_with_oracle
from quintessa.models import (
    CaseReport,
    ClassifyResult,
    ErrorDetail,
    ErrorResponse,
    FieldKind,
    PiPairIdentityReport,
    SplittingPattern,
    SymbolReport,
    VerificationReport,
)
from quintessa.oracle import OracleClient
from quintessa.splitting import field_kind, split_in_gamma, split_in_k, split_in_k0
from quintessa.symbols import check_pi_pair_identities, symbol_at_rational_prime

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2
EXIT_ORACLE_PROTOCOL = 3


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class FieldChoice(str, Enum):
    gamma = "gamma"
    k0 = "k0"
    k = "k"


app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Prime decomposition, quintic residue symbols and (5,5) radicand classification.",
)
console = Console()
err_console = Console(stderr=True)

state = {"format": OutputFormat.text}


def _record_format(value: OutputFormat) -> OutputFormat:
    # runs at parse time, before subcommand lookup can fail
    state["format"] = value
    return value


@app.callback()
def main_options(
    output_format: OutputFormat = typer.Option(
        OutputFormat.text, "--format", help="Output format.", callback=_record_format, is_eager=True
    ),
    debug: bool = typer.Option(False, "--debug", help="Enable debug logging."),
):
    settings = get_settings()
    if debug:
        settings.debug_mode = True
    configure_logging(settings, quiet=True)


def _json_mode() -> bool:
    return state["format"] == OutputFormat.json


def _emit_json(model: BaseModel):
    typer.echo(model.model_dump_json(indent=2))


def _render_pattern(pattern: SplittingPattern):
    title = f"p = {pattern.p} in {pattern.field_tag}"
    if pattern.n is not None:
        title += f" (n = {pattern.n})"
    table = Table(title=title)
    table.add_column("prime")
    table.add_column("e", justify="right")
    table.add_column("f", justify="right")
    for entry in pattern.entries:
        table.add_row(entry.label, str(entry.e), str(entry.f))
    console.print(table)
    if pattern.inferred:
        console.print(f"[yellow]inferred:[/yellow] {pattern.note}")


def _render_kind(kind: FieldKind):
    console.print(f"n = {kind.n}: {kind.kind} kind")
    console.print(f"radical R = {kind.radical}, f^4 = {kind.conductor_f4}")


def _render_case(report: CaseReport):
    case = report.case
    console.print(f"[bold]n = {report.n}[/bold]: {case.variant}", end="")
    details = ", ".join(f"{key}={value}" for key, value in (("e", case.e), ("p", case.p), ("q", case.q)) if value is not None)
    console.print(f" ({details})" if details else "")
    if case.reason:
        console.print(f"reason: {case.reason}")
    console.print(f"evidence: {case.evidence}")
    console.print(f"kind: {report.kind.kind}, lambda ramified: {report.lambda_ramified}, q* = {report.q_star}")
    generators = report.generators
    if generators.primary:
        console.print(f"{generators.condition}: C_k,5 = {generators.primary}")
        for alternate in generators.alternates:
            console.print(f"  also {alternate}")
        for name, value in generators.components.items():
            console.print(f"  {name} = {value}")
    if report.hypotheses or report.proof_symbols:
        table = Table(title="hypotheses")
        table.add_column("condition")
        table.add_column("expected")
        table.add_column("computed")
        table.add_column("status")
        for check in [*report.hypotheses, *report.proof_symbols]:
            color = "green" if check.status == "PASS" else "yellow"
            table.add_row(check.name, check.expected, str(check.computed), f"[{color}]{check.status}[/{color}]")
        console.print(table)


def _render_symbols(report: SymbolReport):
    table = Table(title=f"({report.alpha} / p)_5 at primes over {report.p}")
    table.add_column("prime")
    table.add_column("f", justify="right")
    table.add_column("j", justify="right")
    for entry in report.entries:
        table.add_row(entry.prime, str(entry.residue_degree), str(entry.exponent))
    console.print(table)
    console.print(f"product exponent: {report.product}")


def _render_verification(report: VerificationReport):
    colors = {"PASS": "green", "FLAG": "yellow", "FAIL": "red", "SKIP": "dim"}
    table = Table(title="fixture verification")
    for column in ("table", "p", "q", "l", "n", "congruence", "case", "symbols", "order 5", "oracle", "row"):
        table.add_column(column)
    for row in report.rows:
        cells = [
            row.category_status(category)
            for category in ("congruence", "classification", "symbol", "order5", "oracle")
        ]
        cells.append(row.status)
        table.add_row(
            str(row.table), str(row.p), str(row.q or ""), str(row.l or ""), str(row.n),
            *[f"[{colors[c]}]{c}[/{colors[c]}]" for c in cells],
        )
    console.print(table)
    console.print(" ".join(f"{key}: {value}" for key, value in report.summary.items()))
    for row in report.rows:
        for check in row.checks:
            if check.status == "FAIL":
                console.print(f"[red]FAIL[/red] table {row.table} p={row.p}: {check.name} ({escape(check.detail or '')})")


@app.command()
def classify(
    n: int = typer.Argument(..., help="Radicand; fifth powers are stripped first."),
    l: Optional[int] = typer.Option(None, "--l", "-l", help="Auxiliary prime l."),
    suggest_l: bool = typer.Option(False, "--suggest-l", help="List candidate auxiliary primes."),
):
    """Classify a radicand and evaluate its hypotheses."""
    n = normalize_radicand(n)
    report = classify_radicand(n, l=l)
    if l is not None or report.case.variant == "Case3":
        report = hypothesis_check(report, l)
    suggestions = suggest_auxiliary_primes(report) if suggest_l else None
    if _json_mode():
        _emit_json(ClassifyResult(report=report, suggestions=suggestions))
        return
    _render_case(report)
    if suggestions is not None:
        table = Table(title="auxiliary prime candidates")
        table.add_column("l")
        table.add_column("exponents")
        table.add_column("nontrivial")
        for candidate in suggestions:
            table.add_row(str(candidate.l), str(candidate.exponents), str(candidate.nontrivial))
        console.print(table)


@app.command()
def split(
    p: int = typer.Argument(..., help="Rational prime."),
    field: FieldChoice = typer.Option(..., "--field", help="gamma, k0 or k."),
    n: Optional[int] = typer.Option(None, "--n", help="Radicand (gamma and k)."),
):
    """Show how p decomposes in Gamma, k0 or k."""
    if field == FieldChoice.k0:
        pattern = split_in_k0(p)
    else:
        if n is None:
            raise click.UsageError(f"--n is required for --field {field.value}")
        pattern = split_in_gamma(p, n) if field == FieldChoice.gamma else split_in_k(p, n)
    if _json_mode():
        _emit_json(pattern)
    else:
        _render_pattern(pattern)


@app.command()
def symbol(
    alpha: str = typer.Argument(..., help="c0,c1,c2,c3 or an integer."),
    p: int = typer.Argument(..., help="Rational prime other than 5."),
):
    """Quintic residue symbols of alpha at every prime over p."""
    report = symbol_at_rational_prime(CycInt.parse(alpha), p).to_model()
    if _json_mode():
        _emit_json(report)
    else:
        _render_symbols(report)


@app.command()
def kind(n: int = typer.Argument(..., help="Fifth-power-free radicand.")):
    """Kind and conductor of Q(n^(1/5))."""
    result = field_kind(n)
    if _json_mode():
        _emit_json(result)
    else:
        _render_kind(result)


@app.command()
def identities(
    p: int = typer.Argument(..., help="Prime congruent to -1 mod 5."),
    c: int = typer.Argument(..., help="Rational integer prime to p."),
):
    """Symbol identities at the two primes over p."""
    report: PiPairIdentityReport = check_pi_pair_identities(p, c)
    if _json_mode():
        _emit_json(report)
        return
    table = Table(title=f"p = {p} = a^2 + ab - b^2 with (a, b) = ({report.a}, {report.b})")
    table.add_column("quantity")
    table.add_column("value")
    for key, value in report.model_dump().items():
        table.add_row(key, str(value))
    console.print(table)


@app.command()
def verify(
    fixtures: Optional[List[str]] = typer.Argument(None, help="Fixture CSV files; shipped tables if omitted."),
    oracle: Optional[str] = typer.Option(None, "--oracle", help="Oracle command line."),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="Worker threads."),
):
    """Replay fixture tables, optionally consulting the oracle."""
    settings = get_settings()
    paths = fixtures or [str(path) for path in shipped_fixtures()]
    report = verify_tables(paths, workers=workers or settings.workers)

    command = oracle or settings.oracle_command
    if command:
        async def with_oracle() -> VerificationReport:
            async with OracleClient.from_settings(settings, command=command) as client:
                return await verify_with_oracle(report, client)

        report = asyncio.run(with_oracle())

    if _json_mode():
        _emit_json(report)
    else:
        _render_verification(report)
    if report.failed:
        raise typer.Exit(EXIT_VERIFY_FAILED)


def _emit_error(error: Exception, code: str):
    if _json_mode():
        body = ErrorResponse(error=ErrorDetail(message=str(error), type=type(error).__name__, code=code))
        typer.echo(body.model_dump_json(indent=2))
    else:
        err_console.print(f"[red]error:[/red] {escape(str(error))}")


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on argv and return the exit code."""
    state["format"] = OutputFormat.text
    command = typer.main.get_command(app)
    try:
        result = command.main(args=argv, prog_name="quintessa", standalone_mode=False)
    except click.ClickException as e:
        if _json_mode():
            _emit_error(e, "usage_error")
        else:
            e.show()
        return EXIT_INVALID
    except click.exceptions.Abort:
        return EXIT_INVALID
    except OracleProtocolError as e:
        logger.error(f"Oracle protocol error: {e}")
        _emit_error(e, "oracle_protocol_error")
        return EXIT_ORACLE_PROTOCOL
    except QuintessaError as e:
        _emit_error(e, "invalid_input")
        return EXIT_INVALID
    return result if isinstance(result, int) else EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
