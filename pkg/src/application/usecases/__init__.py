"""Use cases orchestrating the engines for the command line."""

from .animation_session import AnimationSession, Choice
from .evaluation import EvaluateFormulaUseCase, EvaluationResult, TypeQueryUseCase, parse_line
from .machine_checking import (
    CheckStateUseCase,
    CheckTraceUseCase,
    TypecheckMachineUseCase,
    TypecheckReport
)

__all__ = [
    # Evaluation
    "EvaluateFormulaUseCase",
    "EvaluationResult",
    "TypeQueryUseCase",
    "parse_line",

    # Machine checking
    "TypecheckMachineUseCase",
    "TypecheckReport",
    "CheckStateUseCase",
    "CheckTraceUseCase",

    # Animation
    "AnimationSession",
    "Choice"
]
