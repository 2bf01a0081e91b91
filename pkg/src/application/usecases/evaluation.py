"""
Use cases behind ``eval`` and the REPL: evaluating a line of B text and
querying its type.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from src.application.animation.animator import identifier_list
from src.application.animation.substitution_executor import exec_substitution
from src.application.interpreter.environment import Environment
from src.application.interpreter.evaluator import Interpreter
from src.application.services.machine_loader import LoadedMachine
from src.application.syntax.definitions import expand_definitions
from src.application.syntax.lexer import tokenize
from src.application.syntax.parser import parse_formula, parse_substitution
from src.application.typechecking.type_checker import TypeChecker
from src.application.typechecking.type_context import TypeContext
from src.domain.entities.ast_node import Definition, ParseUnit, UnitVariant
from src.domain.entities.bvalues import normalize, render_value
from src.domain.entities.eval_config import EvalConfig
from src.domain.entities.machine_state import State
from src.domain.exceptions import ParseError, UnknownIdentifier


@dataclass
class EvaluationResult:
    """
    What one line evaluated to.

    ``value`` is the rendered value or ``TRUE``/``FALSE``; ``bindings`` are
    the witness of a predicate's free identifiers, or one rendered
    post-state per successor of a substitution.
    """
    variant: UnitVariant
    value: str
    bindings: List[str] = field(default_factory=list)

    def render(self) -> str:
        return "\n".join([self.value] + self.bindings)


def parse_line(text: str, definitions: Sequence[Definition] = ()) -> ParseUnit:
    """
    Parse a predicate or expression, falling back to a substitution, and
    expand the given definitions in it.

    Raises:
        ParseError: The formula error when neither reading works
    """
    tokens = tokenize(text)
    definitions = list(definitions)
    try:
        unit = parse_formula(tokens, definitions)
    except ParseError as formula_error:
        try:
            unit = parse_substitution(tokens, definitions)
        except ParseError:
            raise formula_error from None
    return expand_definitions(unit, definitions)


class EvaluateFormulaUseCase:
    """Use case for evaluating one line, optionally inside a machine's state."""

    def __init__(self, config: EvalConfig, machine: Optional[LoadedMachine] = None):
        """
        Initialize the use case.

        Args:
            config: Evaluation limits used without a machine
            machine: Machine whose sets and state names the line may use
        """
        self.config = machine.config if machine is not None else config
        self.machine = machine
        self.env = machine.environment() if machine is not None else Environment(config)
        self.interpreter = Interpreter(self.env)
        self.logger = logging.getLogger(__name__)

    def _context(self) -> TypeContext:
        return self.machine.type_context() if self.machine is not None else TypeContext()

    def _definitions(self):
        return self.machine.definitions if self.machine is not None else ()

    def default_state(self) -> State:
        """
        The state lines are evaluated in: the machine's first initial state,
        or the empty state without a machine.

        Raises:
            EvaluationError: If the machine cannot be initialised
        """
        if self.machine is None:
            return State()
        roots = self.machine.animator().initialise().states
        return roots[0] if roots else State()

    def typed(self, text: str) -> Tuple[ParseUnit, TypeChecker]:
        """Parse and type ``text``; identifiers unknown to the machine stay free."""
        checker = TypeChecker(self._context(), allow_free=True)
        unit = checker.infer(parse_line(text, self._definitions()))
        return unit, checker

    def execute(self, text: str, state: Optional[State] = None) -> EvaluationResult:
        """
        Evaluate ``text``.

        A predicate's free identifiers are solved for: the result is TRUE
        with the first witness, or FALSE. A substitution is run from
        ``state`` and every successor is listed.

        Args:
            text: A predicate, expression or substitution
            state: Machine state the line refers to

        Raises:
            InputError: If the line does not parse or type-check
            EvaluationError: If evaluation fails
        """
        unit, checker = self.typed(text)
        free = checker.identifier_types
        state = state or State()
        self.env.restore(state)

        if unit.variant == UnitVariant.SUBSTITUTION:
            successors = exec_substitution(unit.root, self.env, state)
            lines = []
            for successor in successors:
                post = successor.state.variables
                lines.append(" & ".join(f"{name} = {render_value(value)}"
                                        for name, value in post.items()) or "skip")
            self.logger.debug(f"Substitution has {len(successors)} successor(s)")
            return EvaluationResult(unit.variant, f"{len(successors)} successor(s)", lines)

        if unit.variant == UnitVariant.EXPRESSION:
            if free:
                raise UnknownIdentifier(sorted(free)[0], unit.root.span)
            value = normalize(self.interpreter.eval_expression(unit.root))
            return EvaluationResult(unit.variant, render_value(value))

        if not free:
            holds = self.interpreter.eval_predicate(unit.root)
            return EvaluationResult(unit.variant, "TRUE" if holds else "FALSE")
        names = sorted(free)
        witness = self.interpreter.find_witness(identifier_list(names, free), unit.root)
        if witness is None:
            return EvaluationResult(unit.variant, "FALSE")
        return EvaluationResult(
            unit.variant, "TRUE",
            [f"{name} = {render_value(normalize(witness[name]))}" for name in names])


class TypeQueryUseCase:
    """Use case for the REPL's ``:t`` command."""

    def __init__(self, evaluate: EvaluateFormulaUseCase):
        self.evaluate = evaluate

    def execute(self, text: str) -> str:
        """
        Type of an expression, or ``PREDICATE``/``SUBSTITUTION`` followed by
        the types of the free identifiers.
        """
        unit, checker = self.evaluate.typed(text)
        if unit.variant == UnitVariant.EXPRESSION:
            return str(unit.root.inferred_type)
        lines = [unit.variant.name]
        lines.extend(f"{name} : {t}" for name, t in sorted(checker.identifier_types.items()))
        return "\n".join(lines)
