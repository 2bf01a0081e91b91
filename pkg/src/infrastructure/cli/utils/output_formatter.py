"""
Utility functions for formatting CLI output.

Reports are plain text so transcripts stay stable; colour is only added
around status words and is stripped by click when stdout is not a terminal.
"""
import json
from typing import Any, List, Optional, Sequence, Tuple

import click

from src.domain.entities.bvalues import render_value
from src.domain.entities.machine_state import State
from src.domain.entities.verdict import Outcome, Verdict

OUTCOME_COLOURS = {
    Outcome.OK: "green",
    Outcome.AGREE: "green",
    Outcome.VIOLATION: "red",
    Outcome.DISAGREE: "red",
    Outcome.ERROR: "yellow",
}


def format_success(message: str, data: Any = None) -> str:
    """
    Format a success message with optional data.

    Args:
        message: Success message
        data: Optional mapping or text shown below the message

    Returns:
        Formatted success message
    """
    result = click.style(f"✓ {message}", fg="green", bold=True)
    if data:
        if isinstance(data, dict):
            for key, value in data.items():
                result += f"\n  {click.style(key, fg='green')}: {value}"
        else:
            result += f"\n{data}"
    return result


def format_error(message: str) -> str:
    return click.style(f"✗ Error: {message}", fg="red", bold=True)


def format_outcome(outcome: Outcome) -> str:
    return click.style(outcome.value, fg=OUTCOME_COLOURS[outcome], bold=True)


def format_verdict(verdict: Verdict, report_format: str = "text") -> str:
    """
    Render a verdict as the text report or the structured JSON document.
    """
    if report_format == "structured":
        return verdict.render_structured()
    text = verdict.render_text()
    head, _, _ = text.rpartition("VERDICT: ")
    return f"{head}VERDICT: {format_outcome(verdict.outcome)}"


def format_verdicts(results: Sequence[Tuple[str, Verdict]], report_format: str = "text") -> str:
    """One report per state file, each headed by its path."""
    if len(results) == 1:
        return format_verdict(results[0][1], report_format)
    if report_format == "structured":
        documents = [dict(v.to_document(), path=path) for path, v in results]
        return json.dumps(documents, indent=2, sort_keys=True)
    return "\n".join(f"== {path} ==\n{format_verdict(v)}" for path, v in results)


def format_state(state: Optional[State]) -> str:
    """
    Constants and variables of a state, one ``name = value`` per line.
    """
    if state is None:
        return "(no state yet)"
    lines = [f"{name} = {render_value(value)}"
             for name, value in list(state.constants.items()) + list(state.variables.items())]
    return "\n".join(lines) if lines else "(empty state)"


def format_choices(labels: List[str]) -> str:
    if not labels:
        return "No enabled operations."
    width = len(str(len(labels)))
    return "\n".join(f"{str(i).rjust(width)}: {label}" for i, label in enumerate(labels, start=1))
