import logging

import click

from src.domain.exceptions import AtRootState, EvaluationError
from src.infrastructure.cli.utils.dependency_container import create_animation_session
from src.infrastructure.cli.utils.exit_codes import reports_errors
from src.infrastructure.cli.utils.output_formatter import (
    format_choices,
    format_error,
    format_outcome,
    format_state,
    format_success,
)

logger = logging.getLogger(__name__)

ANIMATE_PROMPT = "choice> "


@click.command(name="animate")
@click.argument("machine", type=click.Path(dir_okay=False))
@reports_errors
def animate_command(machine: str):
    """
    Animate a machine interactively.

    Each round prints the current state, its invariant verdict and the
    numbered choices. Enter a number to take a choice, ``u`` to undo the
    last one, ``w FILE`` to save the current state as a state file and
    ``q`` to quit.
    """
    session = create_animation_session(machine)
    stdin = click.get_text_stream("stdin")
    while True:
        click.echo(format_state(session.current))
        verdict = session.invariant()
        if verdict is not None:
            click.echo(f"INVARIANT: {format_outcome(verdict.outcome)}")
            for check in verdict.failed_clauses:
                click.echo(f"  {check.render()}")
        choices = session.choices()
        click.echo(format_choices([c.label for c in choices]))
        click.echo(ANIMATE_PROMPT, nl=False)
        line = stdin.readline()
        if not line:
            click.echo()
            break
        answer = line.strip()
        if answer == "q":
            break
        try:
            if answer == "u":
                session.backtrack()
            elif answer.isdigit():
                session.choose(int(answer))
            elif answer.startswith("w "):
                click.echo(format_success(f"Saved {session.save(answer[2:].strip())}"))
            else:
                click.echo(format_error(f"expected a number, u, w FILE or q, got {answer!r}"))
        except (AtRootState, IndexError, ValueError, OSError) as e:
            click.echo(format_error(str(e)))
        except EvaluationError as e:
            logger.debug(f"Choice {answer} failed: {e}")
            click.echo(format_error(f"{type(e).__name__}: {e}"))
