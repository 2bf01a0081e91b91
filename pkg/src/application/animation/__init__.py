"""Execution of substitutions and operations over machine states."""

from src.application.animation.animator import Animator, OperationInstance, identifier_list
from src.application.animation.substitution_executor import SubstitutionExecutor, exec_substitution

__all__ = [
    "Animator",
    "OperationInstance",
    "SubstitutionExecutor",
    "exec_substitution",
    "identifier_list",
]
