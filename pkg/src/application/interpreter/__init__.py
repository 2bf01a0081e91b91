"""Evaluation of typed predicates and expressions."""

from src.application.interpreter.enumeration import Budget, EnumStream, enumerate_type
from src.application.interpreter.environment import Environment
from src.application.interpreter.evaluator import Interpreter
from src.application.interpreter.set_algebra import SetAlgebra

__all__ = [
    "Budget",
    "EnumStream",
    "Environment",
    "Interpreter",
    "SetAlgebra",
    "enumerate_type",
]
