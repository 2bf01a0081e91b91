"""
Error hierarchy shared by every layer of the checker.

Errors fall into three families that the CLI maps to exit codes:
input errors (bad source text, ill-typed formulas, malformed state files),
evaluation errors (well-definedness, enumeration limits, animation failures)
and disagreements found while replaying an externally produced trace.
"""
from enum import Enum
from typing import Iterable, Optional

from src.domain.entities.source_span import SourceSpan


class BCheckError(Exception):
    """Base class for all checker errors."""

    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        """
        Initialize the error.

        Args:
            message: Human readable description
            span: Source location the error refers to, if known
        """
        self.message = message
        self.span = span
        super().__init__(self._format())

    def _format(self) -> str:
        if self.span is not None:
            return f"{self.span.start_line}:{self.span.start_col}: {self.message}"
        return self.message


# Input errors

class InputError(BCheckError):
    """The input text, machine or state file is unusable."""
    pass


class LexError(InputError):
    """Illegal character or unterminated string/comment."""
    pass


class ParseError(InputError):
    """Token sequence does not match the grammar."""

    def __init__(self, message: str, span: Optional[SourceSpan] = None,
                 expected: Iterable[str] = ()):
        self.expected = tuple(sorted(set(expected)))
        if self.expected:
            message = f"{message} (expected one of: {', '.join(self.expected)})"
        super().__init__(message, span)


class MachineValidationError(ParseError):
    """Structural problem in a machine (duplicate declaration, missing INVARIANT)."""
    pass


class ArityError(InputError):
    """A definition was called with the wrong number of arguments."""
    pass


class CyclicDefinitionError(InputError):
    """Definition expansion did not reach a fixed point."""
    pass


class TypeCheckError(InputError):
    """Base class for typing failures."""
    pass


class TypeMismatch(TypeCheckError):
    """Two types could not be unified."""

    def __init__(self, expected, found, span: Optional[SourceSpan] = None):
        self.expected = expected
        self.found = found
        super().__init__(f"expected {expected}, found {found}", span)

    def _format(self) -> str:
        if self.span is not None:
            return (f"TYPE ERROR {self.span.start_line}:{self.span.start_col}: "
                    f"{self.message}")
        return f"TYPE ERROR: {self.message}"


class OccursCheckFailure(TypeCheckError):
    """A type variable would have to contain itself."""
    pass


class UnresolvedTypeError(TypeCheckError):
    """A type variable survived resolution (e.g. an untyped empty set)."""
    pass


class StateFileError(InputError):
    """A state or trace file is malformed."""
    pass


class MissingIdentifier(StateFileError):
    """A machine constant or variable has no value in a state file."""

    def __init__(self, identifier: str, span: Optional[SourceSpan] = None):
        self.identifier = identifier
        super().__init__(f"no value given for {identifier}", span)


# Evaluation errors

class EvaluationError(BCheckError):
    """A well-typed formula could not be evaluated."""
    pass


class WDKind(str, Enum):
    """Kinds of well-definedness violation."""
    DIVISION_BY_ZERO = "division by zero"
    MODULO_BY_ZERO = "modulo by zero"
    NEGATIVE_EXPONENT = "negative exponent"
    APPLICATION_OUTSIDE_DOMAIN = "function applied outside its domain"
    NOT_A_FUNCTION = "relation is not a function at the argument"
    NOT_A_SEQUENCE = "value is not a sequence"
    EMPTY_SEQUENCE = "operation undefined on the empty sequence"
    EMPTY_MIN_MAX = "min/max of an empty set"
    INVALID_MODULO = "mod with a negative operand"


class WellDefinednessError(EvaluationError):
    """A term does not denote a value."""

    def __init__(self, kind: WDKind, detail: str = "",
                 span: Optional[SourceSpan] = None):
        self.kind = kind
        self.detail = detail
        message = kind.value if not detail else f"{kind.value}: {detail}"
        super().__init__(message, span)


class EnumerationError(EvaluationError):
    """A set could not be enumerated (unbounded or over budget)."""
    pass


class BudgetExceeded(EnumerationError):
    """More candidates were generated than config.max_enum allows."""
    pass


class SizeCapExceeded(EnumerationError):
    """A constructed set would exceed config.max_set_size elements."""
    pass


class UnknownIdentifier(EvaluationError):
    """Lookup of an identifier that is not bound anywhere."""

    def __init__(self, identifier: str, span: Optional[SourceSpan] = None):
        self.identifier = identifier
        super().__init__(f"unknown identifier {identifier}", span)


class MissingBinding(EvaluationError):
    """A declared constant or variable is unbound when a snapshot is taken."""

    def __init__(self, identifier: str):
        self.identifier = identifier
        super().__init__(f"declared identifier {identifier} is unbound")


class DoubleWriteError(EvaluationError):
    """A parallel substitution or a multiple assignment writes the same variable twice."""
    pass


class UnknownOperationIdentifier(EvaluationError):
    """An operation name that the machine does not declare."""
    pass


class NoConstantsFound(EvaluationError):
    """PROPERTIES has no solution within the configured bounds."""
    pass


class UninitialisedVariable(EvaluationError):
    """INITIALISATION left a variable unbound."""

    def __init__(self, identifier: str):
        self.identifier = identifier
        super().__init__(f"INITIALISATION does not set {identifier}")


class AtRootState(EvaluationError):
    """Backtracking was requested at the initial state."""
    pass


# Disagreements with an external tool

class DisagreementError(BCheckError):
    """Our result differs from the one claimed by the primary tool."""
    pass


class OperationNotEnabled(DisagreementError):
    """A trace step uses an operation that is not enabled."""
    pass


class NoMatchingSuccessor(DisagreementError):
    """No successor of a trace step equals the claimed post-state."""
    pass
