"""
Process exit codes and the single table mapping errors and verdicts to them.
"""
import functools
import logging
from typing import Callable, Dict, Iterable

import click

from src.domain.entities.verdict import Outcome, Verdict
from src.domain.exceptions import BCheckError, DisagreementError, EvaluationError, InputError
from src.infrastructure.cli.utils.output_formatter import format_error

logger = logging.getLogger(__name__)

SUCCESS = 0
FAILURE = 1
INPUT_ERROR = 2
EVALUATION_ERROR = 3

# Looked up along the exception's MRO, so the most specific entry wins.
ERROR_EXIT_CODES: Dict[type, int] = {
    DisagreementError: FAILURE,
    InputError: INPUT_ERROR,
    EvaluationError: EVALUATION_ERROR,
    BCheckError: EVALUATION_ERROR,
    FileNotFoundError: INPUT_ERROR,
    IsADirectoryError: INPUT_ERROR,
    UnicodeDecodeError: INPUT_ERROR,
    ValueError: INPUT_ERROR,
}

OUTCOME_EXIT_CODES: Dict[Outcome, int] = {
    Outcome.OK: SUCCESS,
    Outcome.AGREE: SUCCESS,
    Outcome.VIOLATION: FAILURE,
    Outcome.DISAGREE: FAILURE,
    Outcome.ERROR: EVALUATION_ERROR,
}


def exit_code_for_error(error: BaseException) -> int:
    for cls in type(error).__mro__:
        if cls in ERROR_EXIT_CODES:
            return ERROR_EXIT_CODES[cls]
    return EVALUATION_ERROR


def exit_code_for_verdicts(verdicts: Iterable[Verdict]) -> int:
    """Worst exit code over several verdicts."""
    return max((OUTCOME_EXIT_CODES[v.outcome] for v in verdicts), default=SUCCESS)


def reports_errors(command: Callable) -> Callable:
    """
    Turn an escaped error into a message on stderr and its exit code.

    Anything outside the table is logged with its traceback first.
    """
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as e:
            code = exit_code_for_error(e)
            if not isinstance(e, (BCheckError, OSError, ValueError)):
                logger.exception(f"Unexpected error in {command.__name__}")
            else:
                logger.debug(f"{type(e).__name__} in {command.__name__}: {e}")
            click.echo(format_error(f"{type(e).__name__}: {e}"), err=True)
            click.get_current_context().exit(code)
    return wrapper
