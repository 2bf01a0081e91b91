"""
Reading and writing state files.

A state file holds ``#PREDICATE`` followed by a conjunction of equalities
``Id = Expr``, one per constant and variable. Values are typed against the
machine's declarations and evaluated in an environment that only knows
the machine's sets, so every value must be closed.
"""
import logging
from typing import Any, Dict, List, Optional

from src.application.interpreter.environment import Environment, deferred_element_names
from src.application.interpreter.evaluator import Interpreter
from src.application.syntax.ast_utils import conjuncts
from src.application.syntax.lexer import PREDICATE_MARKER, Token, tokenize
from src.application.syntax.parser import Parser
from src.application.syntax.pretty_printer import pretty_print
from src.application.typechecking.type_checker import TypeChecker
from src.application.typechecking.type_context import TypeContext
from src.domain.entities.ast_node import AstNode, MachineAst, NodeKind as K, ParseUnit, UnitVariant
from src.domain.entities.btypes import BType, DeferredSetType
from src.domain.entities.bvalues import SymbolicSet, normalize, render_value
from src.domain.entities.eval_config import EvalConfig
from src.domain.entities.machine_state import State
from src.domain.entities.state_file import StateFile
from src.domain.exceptions import (
    EvaluationError,
    MissingIdentifier,
    StateFileError,
    UnknownIdentifier,
)

logger = logging.getLogger(__name__)


def parse_state_tokens(tokens: List[Token], path: str = "<string>", text: str = "") -> StateFile:
    """
    Build a ``StateFile`` from tokens starting with ``#PREDICATE``.

    Raises:
        StateFileError: If the marker is missing or a conjunct is not ``Id = Expr``
        ParseError: If the predicate does not parse
    """
    if tokens[0].kind != PREDICATE_MARKER:
        raise StateFileError(f"{path}: a state must start with #PREDICATE", tokens[0].span)
    parser = Parser(tokens[1:])
    predicate = parser.predicate()
    parser.expect_end()
    entries = []
    for conjunct in conjuncts(predicate):
        if conjunct.kind != K.EQUAL or conjunct.children[0].kind != K.IDENTIFIER:
            raise StateFileError(
                f"expected 'Identifier = Expression', found {pretty_print(conjunct)}",
                conjunct.span)
        entries.append((conjunct.children[0].payload, conjunct.children[1]))
    return StateFile(entries, path, text)


def read_state_file(text: str, path: str = "<string>") -> StateFile:
    return parse_state_tokens(tokenize(text), path, text)


def render_state_file(state: State) -> str:
    """State file text for ``state``: constants first, then variables."""
    lines = [f"{name} = {render_value(value)}"
             for name, value in list(state.constants.items()) + list(state.variables.items())]
    if not lines:
        return "#PREDICATE\nbtrue\n"
    return "#PREDICATE\n" + " &\n".join(lines) + "\n"


def _is_reified(value: Any) -> bool:
    if isinstance(value, SymbolicSet):
        return False
    if isinstance(value, tuple):
        return _is_reified(value[0]) and _is_reified(value[1])
    if isinstance(value, frozenset):
        return all(_is_reified(v) for v in value)
    return True


class StateLoader:
    """
    Turns state files into ``State`` objects for one typed machine.

    Args:
        machine: Result of type checking
        config: Evaluation limits (deferred set cardinality in particular)
    """

    def __init__(self, machine: MachineAst, config: EvalConfig):
        self.machine = machine
        self.config = config
        self.env = Environment(config, machine)
        self.interpreter = Interpreter(self.env)

    def _context(self) -> TypeContext:
        context = TypeContext()
        for name, elements in self.machine.enumerated_sets.items():
            context.declare_enumerated_set(name, elements)
        for name in self.machine.deferred_sets:
            context.declare_deferred_set(name)
            for element in deferred_element_names(name, self.config.deferred_set_card):
                if context.lookup(element) is None:
                    context.declare(element, DeferredSetType(name))
        return context

    def value_of(self, name: str, node: AstNode) -> Any:
        """
        Typed, evaluated and normalized value of one ``name = node`` entry.

        Raises:
            TypeCheckError: If the value does not have the declared type
            EvaluationError: If it cannot be evaluated to a finite value
        """
        return self.evaluate(name, node, self.machine.symbol_types[name])

    def evaluate(self, name: str, node: AstNode, expected: BType) -> Any:
        """Closed value of ``node`` checked against ``expected``; ``name`` labels errors."""
        checker = TypeChecker(self._context(), allow_free=False)
        typed = checker.infer(ParseUnit(UnitVariant.EXPRESSION, node), expected=expected)
        self.env.load({}, {})
        try:
            value = normalize(self.interpreter.eval_expression(typed.root))
        except EvaluationError as e:
            raise EvaluationError(
                f"cannot evaluate {name} = {pretty_print(node)}: {e.message}", node.span) from e
        if not _is_reified(value):
            raise EvaluationError(
                f"value of {name} is not a finite value: {render_value(value)}", node.span)
        return value

    def load(self, state_file: StateFile, defaults: Optional[State] = None) -> State:
        """
        Evaluate every entry of ``state_file``.

        Args:
            state_file: Parsed state file
            defaults: State supplying constants the file omits

        Raises:
            UnknownIdentifier: If the file names something the machine does not declare
            MissingIdentifier: If a constant or variable has no value
        """
        machine = self.machine
        entries = state_file.as_dict()
        for name, node in state_file.entries:
            if name not in machine.constants and name not in machine.variables:
                raise UnknownIdentifier(name, node.span)
        constants: Dict[str, Any] = {}
        for name in machine.constants:
            if name in entries:
                constants[name] = self.value_of(name, entries[name])
            elif defaults is not None:
                constants[name] = defaults.constants[name]
            else:
                raise MissingIdentifier(name)
        variables: Dict[str, Any] = {}
        for name in machine.variables:
            if name not in entries:
                raise MissingIdentifier(name)
            variables[name] = self.value_of(name, entries[name])
        logger.debug(f"Loaded state with {len(constants)} constant(s) and {len(variables)} variable(s)")
        return State(constants, variables)
