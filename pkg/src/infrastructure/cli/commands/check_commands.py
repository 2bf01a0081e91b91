import logging
from typing import Optional, Tuple

import click

from src.domain.entities.verdict import Claim
from src.infrastructure.cli.utils.dependency_container import (
    create_check_state_use_case,
    create_check_trace_use_case,
    create_typecheck_use_case,
)
from src.infrastructure.cli.utils.exit_codes import exit_code_for_verdicts, reports_errors
from src.infrastructure.cli.utils.output_formatter import format_verdict, format_verdicts

logger = logging.getLogger(__name__)

report_format_option = click.option(
    "--report-format", type=click.Choice(["text", "structured"]), default="text",
    help="Plain text report or a JSON document (default: text)")


@click.command(name="typecheck")
@click.argument("machine", type=click.Path(dir_okay=False))
@reports_errors
def typecheck_command(machine: str):
    """
    Type-check a machine and print the type of every constant, variable
    and operation parameter.
    """
    report = create_typecheck_use_case().execute(machine)
    if report.entries:
        click.echo(report.render())
    logger.info(f"{report.machine} is well typed")


@click.command(name="check-state")
@click.argument("machine", type=click.Path(dir_okay=False))
@click.argument("state_files", nargs=-1, required=True, type=click.Path())
@click.option("--claim", type=click.Choice([c.value for c in Claim]),
              help="Result claimed by the primary tool for every state")
@click.option("--jobs", "-j", type=click.IntRange(min=1), default=1,
              help="Number of state files checked in parallel (default: 1)")
@report_format_option
@reports_errors
def check_state_command(machine: str, state_files: Tuple[str, ...],
                        claim: Optional[str] = None, jobs: int = 1,
                        report_format: str = "text"):
    """
    Double-check states: evaluate PROPERTIES, INVARIANT and ASSERTIONS on
    each state file and compare with the claim if one is given. A directory
    stands for the *.state files directly inside it.
    """
    use_case = create_check_state_use_case()
    results = use_case.execute_many(machine, list(state_files),
                                    Claim(claim) if claim else None, jobs)
    click.echo(format_verdicts(results, report_format))
    click.get_current_context().exit(exit_code_for_verdicts(v for _, v in results))


@click.command(name="check-trace")
@click.argument("machine", type=click.Path(dir_okay=False))
@click.argument("trace_file", type=click.Path(dir_okay=False))
@click.option("--root", type=click.IntRange(min=0), default=0,
              help="Initial state to start from when the trace has no INIT line (default: 0)")
@report_format_option
@reports_errors
def check_trace_command(machine: str, trace_file: str, root: int = 0,
                        report_format: str = "text"):
    """
    Replay a trace: every step must be enabled and reach the recorded state.
    """
    verdict = create_check_trace_use_case().execute(machine, trace_file, root)
    click.echo(format_verdict(verdict, report_format))
    click.get_current_context().exit(exit_code_for_verdicts([verdict]))
