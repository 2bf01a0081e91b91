import logging
import sys
from typing import Optional

import click
from dotenv import load_dotenv

from src import config
from src.infrastructure.cli.commands.animate_commands import animate_command
from src.infrastructure.cli.commands.check_commands import (
    check_state_command,
    check_trace_command,
    typecheck_command,
)
from src.infrastructure.cli.commands.eval_commands import eval_command, repl_command
from src.infrastructure.cli.utils import dependency_container
from src.infrastructure.cli.utils.exit_codes import EVALUATION_ERROR, reports_errors
from src.infrastructure.cli.utils.output_formatter import format_error

# Reports go to stdout; logging stays on stderr and quiet unless -v is given
logging.basicConfig(level=logging.WARNING, format=config.LOG_FORMAT, stream=sys.stderr)
logger = logging.getLogger("bcheck-cli")


@click.group()
@click.version_option(package_name="bcheck")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose output")
@click.option("--minint", type=int, envvar="BCHECK_MININT",
              help="Smallest integer enumerated (default: -128)")
@click.option("--maxint", type=int, envvar="BCHECK_MAXINT",
              help="Largest integer enumerated (default: 127)")
@click.option("--max-enum", type=int, envvar="BCHECK_MAX_ENUM",
              help="Candidates one quantifier may try (default: 65536)")
@click.option("--max-set-size", type=int, envvar="BCHECK_MAX_SET_SIZE",
              help="Largest set ever materialised (default: 1048576)")
@click.option("--deferred-card", type=int, envvar="BCHECK_DEFERRED_CARD",
              help="Number of elements given to each deferred set (default: 2)")
@click.option("--no-quick-narrow", is_flag=True, default=False,
              help="Enumerate quantified types in full instead of narrowing them")
@reports_errors
def cli(verbose: bool, minint: Optional[int], maxint: Optional[int],
        max_enum: Optional[int], max_set_size: Optional[int],
        deferred_card: Optional[int], no_quick_narrow: bool):
    """
    Evaluate, animate and double-check B machines.

    Flags override the BCHECK_* environment variables, which override the
    built-in defaults.
    """
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    dependency_container.reset()
    dependency_container.configure(
        minint=minint,
        maxint=maxint,
        max_enum=max_enum,
        max_set_size=max_set_size,
        deferred_set_card=deferred_card,
        quick_narrow=False if no_quick_narrow else None,
    )


cli.add_command(eval_command)
cli.add_command(typecheck_command)
cli.add_command(check_state_command)
cli.add_command(check_trace_command)
cli.add_command(animate_command)
cli.add_command(repl_command)


def main():
    """Entry point for the CLI."""
    try:
        load_dotenv()
        cli()
    except Exception as e:
        click.echo(format_error(f"Unexpected error: {str(e)}"), err=True)
        logger.exception("Unhandled exception")
        sys.exit(EVALUATION_ERROR)


if __name__ == "__main__":
    main()
