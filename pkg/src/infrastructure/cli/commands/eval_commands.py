import logging
from typing import Optional

import click

from src.domain.exceptions import EvaluationError, InputError
from src.infrastructure.cli.utils.dependency_container import (
    create_evaluate_use_case,
    create_type_query_use_case,
)
from src.infrastructure.cli.utils.exit_codes import reports_errors
from src.infrastructure.cli.utils.output_formatter import format_error

logger = logging.getLogger(__name__)

REPL_PROMPT = ">>> "


@click.command(name="eval")
@click.option("--expression", "-e", "text", required=True,
              help="Predicate, expression or substitution to evaluate")
@click.option("--machine", "-m", type=click.Path(dir_okay=False),
              help="Machine whose sets and first initial state the formula may use")
@reports_errors
def eval_command(text: str, machine: Optional[str] = None):
    """
    Evaluate one formula and print its value.

    Predicates print TRUE or FALSE; free identifiers of a predicate are
    solved for and the first solution is printed below TRUE.
    """
    use_case = create_evaluate_use_case(machine)
    result = use_case.execute(text, use_case.default_state())
    click.echo(result.render())


@click.command(name="repl")
@click.argument("machine", required=False, type=click.Path(dir_okay=False))
@reports_errors
def repl_command(machine: Optional[str] = None):
    """
    Read formulas line by line and print their values.

    ``:t <formula>`` prints a type instead of a value and ``:q`` quits.
    Errors are reported and the loop continues.
    """
    use_case = create_evaluate_use_case(machine)
    type_query = create_type_query_use_case(use_case)
    try:
        state = use_case.default_state()
    except EvaluationError as e:
        click.echo(format_error(f"cannot initialise {machine}: {e}"), err=True)
        state = None

    stdin = click.get_text_stream("stdin")
    while True:
        click.echo(REPL_PROMPT, nl=False)
        line = stdin.readline()
        if not line:
            click.echo()
            break
        line = line.strip()
        if not line:
            continue
        if line == ":q":
            break
        try:
            if line.startswith(":t "):
                click.echo(type_query.execute(line[3:]))
            else:
                click.echo(use_case.execute(line, state).render())
        except (InputError, EvaluationError) as e:
            logger.debug(f"REPL line failed: {line}")
            click.echo(format_error(f"{type(e).__name__}: {e}"))
