"""
State-space animation of a typed machine.

The animator finds the constant valuations allowed by PROPERTIES, runs
INITIALISATION from each of them, lists the enabled operation instances of
a state and executes them. Every state reached is recorded in a
``StateSpace`` shared with the interactive session.
"""
import logging
from contextlib import closing
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from src.application.animation.substitution_executor import SubstitutionExecutor
from src.application.interpreter.environment import Environment
from src.application.interpreter.evaluator import Interpreter
from src.application.syntax.ast_utils import conjuncts
from src.application.syntax.pretty_printer import pretty_print
from src.domain.entities.ast_node import AstNode, MachineAst, NodeKind as K, OperationAst
from src.domain.entities.machine_state import OperationLabel, State, StateSpace, SuccessorSet
from src.domain.entities.verdict import ClauseCheck, ClauseKind, ClauseResult, Outcome, Verdict
from src.domain.exceptions import (
    EvaluationError,
    NoConstantsFound,
    UninitialisedVariable,
    UnknownOperationIdentifier,
)

logger = logging.getLogger(__name__)


def identifier_list(names: Sequence[str], types: Dict[str, Any]) -> AstNode:
    """A typed ``IdentifierList`` node for binding ``names``."""
    nodes = [AstNode(K.IDENTIFIER, payload=name, inferred_type=types.get(name)) for name in names]
    return AstNode(K.IDENTIFIER_LIST, nodes)


@dataclass
class OperationInstance:
    """One operation applied to one parameter valuation."""
    name: str
    args: Dict[str, Any]
    successors: SuccessorSet
    error: Optional[EvaluationError] = None

    def label(self, outputs=()) -> OperationLabel:
        return OperationLabel(self.name, tuple(self.args.items()), tuple(outputs))

    @property
    def enabled(self) -> bool:
        return self.error is None and len(self.successors) > 0


@dataclass
class ClauseEvaluation:
    """Per-conjunct results of one clause on one state."""
    checks: List[ClauseCheck] = field(default_factory=list)

    @property
    def outcome(self) -> Outcome:
        results = {c.result for c in self.checks}
        if ClauseResult.ERROR in results:
            return Outcome.ERROR
        if ClauseResult.FALSE in results:
            return Outcome.VIOLATION
        return Outcome.OK


class Animator:
    """
    Animates one typed, definition-free machine.

    Args:
        machine: Result of type checking
        env: Environment created for ``machine``
    """

    def __init__(self, machine: MachineAst, env: Environment):
        self.machine = machine
        self.env = env
        self.interpreter = Interpreter(env)
        self.executor = SubstitutionExecutor(self.interpreter)
        self.state_space = StateSpace()

    # initial states

    def set_up_constants(self) -> List[Dict[str, Any]]:
        """
        Every valuation of the constants satisfying PROPERTIES.

        Raises:
            NoConstantsFound: If PROPERTIES has no solution
        """
        machine = self.machine
        if not machine.constants:
            return [{}]
        ids = identifier_list(machine.constants, machine.symbol_types)
        properties = machine.properties or AstNode(K.TRUTH)
        self.env.load({}, {})
        with closing(self.interpreter.solutions(ids, properties)) as found:
            valuations = list(found)
        if not valuations:
            raise NoConstantsFound(f"PROPERTIES of {machine.name} has no solution")
        logger.info(f"Found {len(valuations)} constant valuation(s)")
        return valuations

    def initialise(self) -> SuccessorSet:
        """
        Root states: INITIALISATION run from every constant valuation.

        Raises:
            NoConstantsFound: If PROPERTIES has no solution
            UninitialisedVariable: If INITIALISATION leaves a variable unbound
        """
        machine = self.machine
        roots = SuccessorSet()
        for constants in self.set_up_constants():
            start = State(constants, {})
            if machine.initialisation is None:
                if machine.variables:
                    raise UninitialisedVariable(machine.variables[0])
                roots.add(start, ("SETUP_CONSTANTS",))
                continue
            successors = self.executor.execute(machine.initialisation, start,
                                               variables=machine.variables)
            roots.merge(successors)
        for successor in roots:
            self.state_space.add_root(successor.state)
        logger.info(f"Machine {machine.name} has {len(roots)} initial state(s)")
        return roots

    # operations

    def operation_instances(self, state: State, operation: OperationAst) -> List[OperationInstance]:
        """All parameter valuations of ``operation`` with their successors in ``state``."""
        self.env.restore(state)
        if not operation.params:
            return [self._instance(state, operation, {})]
        ids = identifier_list(operation.params, operation.param_types)
        guard = operation.precondition or AstNode(K.TRUTH)
        with closing(self.interpreter.solutions(ids, guard)) as found:
            valuations = list(found)
        return [self._instance(state, operation, args) for args in valuations]

    def _instance(self, state: State, operation: OperationAst,
                  args: Dict[str, Any]) -> OperationInstance:
        with self.env.scope(args):
            successors = self.executor.execute(
                operation.body, state, outputs=operation.outputs,
                variables=self.machine.variables)
        return OperationInstance(operation.name, dict(args), successors)

    def enabled_operations(self, state: State, strict: bool = True) -> List[OperationInstance]:
        """
        Operation instances of ``state`` that have at least one successor.

        Args:
            state: State to explore
            strict: Let evaluation errors propagate; otherwise report them on
                an instance of the failing operation and keep going

        Raises:
            EvaluationError: In strict mode, when an operation fails to evaluate
        """
        enabled = []
        for operation in self.machine.operations:
            try:
                instances = self.operation_instances(state, operation)
            except EvaluationError as e:
                if strict:
                    raise
                logger.warning(f"Operation {operation.name} failed: {e}")
                enabled.append(OperationInstance(operation.name, {}, SuccessorSet(state), e))
                continue
            enabled.extend(i for i in instances if i.enabled)
        self._record(state, enabled)
        return enabled

    def execute_operation(self, state: State, name: str,
                          args: Optional[Dict[str, Any]] = None) -> SuccessorSet:
        """
        Successors of ``state`` under one operation.

        Args:
            state: Pre-state
            name: Operation name
            args: Parameter values; every enabled valuation is tried when omitted

        Raises:
            UnknownOperationIdentifier: If the machine has no such operation
        """
        operation = self.machine.operation(name)
        if operation is None:
            raise UnknownOperationIdentifier(f"{self.machine.name} has no operation {name}")
        if args is None:
            merged = SuccessorSet(state)
            for instance in self.operation_instances(state, operation):
                merged.merge(instance.successors)
            return merged
        if sorted(args) != sorted(operation.params):
            raise EvaluationError(
                f"{name} takes parameters ({', '.join(operation.params)}), "
                f"got ({', '.join(args)})")
        return self._instance(state, operation, args).successors

    def _record(self, state: State, instances: List[OperationInstance]) -> None:
        source = self.state_space.add_state(state)
        for instance in instances:
            for successor in instance.successors:
                target = self.state_space.add_state(successor.state)
                self.state_space.add_transition(source, instance.label(successor.outputs), target)

    # clauses

    def evaluate_clause(self, kind: ClauseKind, predicates: List[AstNode],
                        state: State) -> ClauseEvaluation:
        """Evaluate each conjunct of a clause separately on ``state``."""
        evaluation = ClauseEvaluation()
        for predicate in predicates:
            for conjunct in conjuncts(predicate):
                evaluation.checks.append(self._check(kind, conjunct, state))
        return evaluation

    def _check(self, kind: ClauseKind, conjunct: AstNode, state: State) -> ClauseCheck:
        text = pretty_print(conjunct)
        self.env.restore(state)
        try:
            holds = self.interpreter.eval_predicate(conjunct)
        except EvaluationError as e:
            logger.warning(f"{kind.value} conjunct {text} failed: {e}")
            return ClauseCheck(clause=kind, text=text, result=ClauseResult.ERROR,
                               diagnostic=str(e))
        result = ClauseResult.TRUE if holds else ClauseResult.FALSE
        return ClauseCheck(clause=kind, text=text, result=result)

    def check_invariant(self, state: State) -> Verdict:
        """OK, VIOLATION or ERROR with one clause entry per INVARIANT conjunct."""
        invariant = [self.machine.invariant] if self.machine.invariant is not None else []
        evaluation = self.evaluate_clause(ClauseKind.INVARIANT, invariant, state)
        return Verdict(outcome=evaluation.outcome, clauses=evaluation.checks)
