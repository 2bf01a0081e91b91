"""Type inference for B units and machines."""

from src.application.typechecking.type_checker import TypeChecker, context_for_machine, infer
from src.application.typechecking.type_context import TypeContext
from src.application.typechecking.unification import unify

__all__ = ["TypeChecker", "TypeContext", "context_for_machine", "infer", "unify"]
