"""
Execution of generalised substitutions.

A substitution maps one valuation to a list of (valuation, trace) outcomes.
Nondeterministic constructs (CHOICE, SELECT, ANY, ``::`` and ``:(P)``)
contribute one outcome per alternative and record the alternative taken in
the trace. Outcomes are merged into a ``SuccessorSet`` only at the end, so
two derivations of the same state keep both traces.
"""
import logging
from contextlib import closing
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from src.application.interpreter.evaluator import Interpreter
from src.application.interpreter.environment import Environment
from src.application.syntax.ast_utils import written_variables
from src.application.syntax.pretty_printer import pretty_print
from src.domain.entities.ast_node import AstNode, NodeKind as K
from src.domain.entities.bvalues import normalize, render_value, set_elements
from src.domain.entities.machine_state import State, SuccessorSet
from src.domain.exceptions import DoubleWriteError, EvaluationError, UninitialisedVariable

logger = logging.getLogger(__name__)

Outcome = Tuple[Dict[str, Any], Tuple[str, ...]]


def unpack(names: Sequence[str], value: Any) -> Dict[str, Any]:
    """Split a left-nested tuple over ``names``."""
    if len(names) == 1:
        return {names[0]: value}
    left, right = value
    bound = unpack(names[:-1], left)
    bound[names[-1]] = right
    return bound


class SubstitutionExecutor:
    """
    Runs substitutions on top of an interpreter's environment.

    The state frame of the environment is reloaded before every evaluation,
    so values written earlier in a sequence are visible to later steps.
    """

    def __init__(self, interpreter: Interpreter):
        self.interpreter = interpreter
        self.env = interpreter.env
        self.algebra = interpreter.algebra
        self._constants: Mapping[str, Any] = {}
        self._handlers = {
            K.SKIP: lambda n, current: [(current, ())],
            K.BLOCK: lambda n, current: self.run(n.children[0], current),
            K.ASSIGN: self._assign,
            K.BECOMES_ELEMENT_OF: self._becomes_element_of,
            K.BECOMES_SUCH_THAT: self._becomes_such_that,
            K.SEQUENCE: self._sequence,
            K.PARALLEL: self._parallel,
            K.PRECONDITION: self._precondition,
            K.IF: self._if,
            K.SELECT: self._select,
            K.CHOICE: self._choice,
            K.ANY: self._any,
        }

    def execute(self, node: AstNode, state: State, outputs: Sequence[str] = (),
                variables: Optional[Sequence[str]] = None) -> SuccessorSet:
        """
        All successors of ``state`` under ``node``.

        Args:
            node: A typed substitution
            state: The pre-state
            outputs: Operation output names, reported separately from the state
            variables: Names every post-state must bind; every written name
                except the outputs when omitted

        Raises:
            UninitialisedVariable: If a required variable is left unbound
            DoubleWriteError: If the two sides of ``||`` or the targets of one
                assignment write the same variable
        """
        self._constants = state.constants
        successors = SuccessorSet(source=state)
        try:
            outcomes = self.run(node, dict(state.variables))
        finally:
            self.env.restore(state)
        for values, trace in outcomes:
            if variables is None:
                post = {k: v for k, v in values.items() if k not in outputs}
            else:
                missing = [name for name in variables if name not in values]
                if missing:
                    raise UninitialisedVariable(missing[0])
                post = {name: values[name] for name in variables}
            produced = []
            for name in outputs:
                if name not in values:
                    raise EvaluationError(f"output {name} is never assigned", node.span)
                produced.append((name, values[name]))
            successors.add(State(state.constants, post), trace, tuple(produced))
        logger.debug(f"{len(outcomes)} outcome(s), {len(successors)} distinct successor(s)")
        return successors

    def run(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        handler = self._handlers.get(node.kind)
        if handler is None:
            raise EvaluationError(f"not a substitution: {node.kind.value}", node.span)
        return handler(node, current)

    def _load(self, current: Mapping[str, Any]) -> None:
        self.env.load(self._constants, current)

    def _assign(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        targets, values = node.children
        self._load(current)
        evaluated = [self.interpreter.eval_expression(v) for v in values.children]
        writes = []
        for target, value in zip(targets.children, evaluated):
            if target.kind == K.IDENTIFIER:
                writes.append((target.payload, normalize(value), False))
            else:
                function, argument = target.children
                point = self.interpreter.eval_expression(argument)
                writes.append((function.payload, (normalize(point), normalize(value)), True))
        _check_single_writes(writes, node)
        updated = dict(current)
        for name, value, at_point in writes:
            if at_point:
                base = updated[name] if name in updated else self.env.lookup(name)
                updated[name] = self.algebra.override(base, frozenset({value}))
            else:
                updated[name] = value
        return [(updated, ())]

    def _becomes_element_of(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        ids, expression = node.children
        names = [n.payload for n in ids.children]
        self._load(current)
        collection = self.algebra.reify(self.interpreter.eval_expression(expression))
        outcomes = []
        for value in set_elements(collection):
            updated = dict(current)
            updated.update(unpack(names, value))
            outcomes.append((updated, (f"{','.join(names)}::{render_value(value)}",)))
        return outcomes

    def _becomes_such_that(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        ids, predicate = node.children
        self._load(current)
        with closing(self.interpreter.solutions(ids, predicate)) as found:
            bindings = list(found)
        outcomes = []
        for binding in bindings:
            updated = dict(current)
            updated.update(binding)
            label = ",".join(f"{k}={render_value(v)}" for k, v in binding.items())
            outcomes.append((updated, (f":({label})",)))
        return outcomes

    def _sequence(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        first, second = node.children
        outcomes = []
        for middle, trace in self.run(first, current):
            for final, rest in self.run(second, middle):
                outcomes.append((final, trace + rest))
        return outcomes

    def _parallel(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        left, right = node.children
        clash = written_variables(left) & written_variables(right)
        if clash:
            raise DoubleWriteError(
                f"both sides of || write {', '.join(sorted(clash))}", node.span)
        outcomes = []
        right_outcomes = self.run(right, current)
        for left_values, left_trace in self.run(left, current):
            for right_values, right_trace in right_outcomes:
                merged = dict(current)
                merged.update(_changes(current, left_values))
                merged.update(_changes(current, right_values))
                outcomes.append((merged, left_trace + right_trace))
        return outcomes

    def _precondition(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        guard, body = node.children
        self._load(current)
        if not self.interpreter.eval_predicate(guard):
            logger.debug(f"Precondition {pretty_print(guard)} is false")
            return []
        return self.run(body, current)

    def _if(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        children = node.children
        for i in range(0, len(children) - 1, 2):
            self._load(current)
            if self.interpreter.eval_predicate(children[i]):
                return self.run(children[i + 1], current)
        if len(children) % 2 == 1:
            return self.run(children[-1], current)
        return [(current, ())]

    def _select(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        children = node.children
        outcomes = []
        for branch, i in enumerate(range(0, len(children) - 1, 2), start=1):
            self._load(current)
            if self.interpreter.eval_predicate(children[i]):
                outcomes.extend((values, (f"WHEN {branch}",) + trace)
                                for values, trace in self.run(children[i + 1], current))
        if not outcomes and len(children) % 2 == 1:
            outcomes.extend((values, ("ELSE",) + trace)
                            for values, trace in self.run(children[-1], current))
        return outcomes

    def _choice(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        outcomes = []
        for branch, child in enumerate(node.children, start=1):
            outcomes.extend((values, (f"OR {branch}",) + trace)
                            for values, trace in self.run(child, current))
        return outcomes

    def _any(self, node: AstNode, current: Dict[str, Any]) -> List[Outcome]:
        ids, guard, body = node.children
        self._load(current)
        with closing(self.interpreter.solutions(ids, guard)) as found:
            bindings = list(found)
        outcomes = []
        for binding in bindings:
            label = ",".join(f"{k}={render_value(v)}" for k, v in binding.items())
            with self.env.scope(binding):
                outcomes.extend((values, (f"ANY {label}",) + trace)
                                for values, trace in self.run(body, current))
        return outcomes


def _check_single_writes(writes: List[Tuple[str, Any, bool]], node: AstNode) -> None:
    """A variable is written once, or at distinct points when it is a function."""
    whole, points = set(), set()
    for name, value, at_point in writes:
        if at_point:
            clash = name in whole or (name, value[0]) in points
            points.add((name, value[0]))
        else:
            clash = name in whole or any(n == name for n, _ in points)
            whole.add(name)
        if clash:
            raise DoubleWriteError(f"multiple assignment writes {name} twice", node.span)


def _changes(before: Mapping[str, Any], after: Mapping[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in after.items() if k not in before or before[k] != v}


def exec_substitution(node: AstNode, env: Environment, state: State) -> SuccessorSet:
    """Successors of ``state`` under a standalone substitution."""
    return SubstitutionExecutor(Interpreter(env)).execute(node, state)
