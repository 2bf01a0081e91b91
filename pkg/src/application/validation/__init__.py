"""Double-checking of states and traces produced by another tool."""

from src.application.validation.state_checker import StateChecker, compare_with_claim
from src.application.validation.state_file_reader import (
    StateLoader,
    read_state_file,
    render_state_file,
)
from src.application.validation.trace_checker import TraceChecker
from src.application.validation.trace_file_reader import read_trace_file

__all__ = [
    "StateChecker",
    "StateLoader",
    "TraceChecker",
    "compare_with_claim",
    "read_state_file",
    "read_trace_file",
    "render_state_file",
]
