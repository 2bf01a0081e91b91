"""
Replaying a claimed trace step by step.
"""
import logging
from typing import Dict, List, Optional

from src.application.animation.animator import Animator
from src.application.validation.state_file_reader import StateLoader
from src.domain.entities.bvalues import render_value
from src.domain.entities.machine_state import OperationLabel, State, SuccessorSet
from src.domain.entities.state_file import TraceFile, TraceStep
from src.domain.entities.verdict import Outcome, StepResult, Verdict
from src.domain.exceptions import (
    DisagreementError,
    EvaluationError,
    NoMatchingSuccessor,
    OperationNotEnabled,
    StateFileError,
    TypeCheckError,
    UnknownOperationIdentifier,
)

logger = logging.getLogger(__name__)


def describe_difference(expected: State, successors: SuccessorSet) -> str:
    """Name the variables in which the closest successor differs from ``expected``."""
    best: Optional[List[str]] = None
    for successor in successors:
        found = successor.state
        differing = [
            f"{name}: expected {render_value(value)}, found {render_value(found.get(name))}"
            for name, value in list(expected.constants.items()) + list(expected.variables.items())
            if found.get(name) != value
        ]
        if best is None or len(differing) < len(best):
            best = differing
    return "; ".join(best or [])


class TraceChecker:
    """
    Checks that every step of a trace is an enabled operation whose
    successors include the claimed post-state.

    Args:
        animator: Animator of the machine
        loader: Reader for the trace's state predicates
    """

    def __init__(self, animator: Animator, loader: StateLoader):
        self.animator = animator
        self.loader = loader
        self.machine = animator.machine

    def check(self, trace: TraceFile, root: int = 0) -> Verdict:
        """
        Replay ``trace`` from the chosen initial state.

        Args:
            trace: Parsed trace file
            root: Index of the initial state used when the trace has no INIT line

        Returns:
            AGREE if every step matches, DISAGREE at the first mismatch,
            ERROR if a step cannot be evaluated

        Raises:
            StateFileError: If ``root`` does not name an initial state
        """
        results: List[StepResult] = []
        try:
            roots = self.animator.initialise()
        except EvaluationError as e:
            return Verdict(outcome=Outcome.ERROR, diagnostic=f"initialisation failed: {e}")
        space = self.animator.state_space

        if trace.initial_state is not None:
            try:
                current = self.loader.load(trace.initial_state)
            except (EvaluationError, TypeCheckError) as e:
                return Verdict(outcome=Outcome.ERROR, diagnostic=str(e))
            if current not in roots:
                diagnostic = f"no initial state matches ({describe_difference(current, roots)})"
                results.append(StepResult(index=0, operation="INIT",
                                          outcome=Outcome.DISAGREE, diagnostic=diagnostic))
                return Verdict(outcome=Outcome.DISAGREE, steps=results, diagnostic=diagnostic)
            results.append(StepResult(index=0, operation="INIT", outcome=Outcome.AGREE))
        else:
            states = roots.states
            if not 0 <= root < len(states):
                raise StateFileError(
                    f"trace asks for initial state {root} but there are {len(states)}")
            current = states[root]
        space.move_to(space.add_state(current))

        for index, step in enumerate(trace.steps, start=1):
            try:
                current = self._replay(index, step, current)
            except DisagreementError as e:
                logger.info(f"Trace disagrees at step {index}: {e}")
                results.append(StepResult(index=index, operation=step.operation,
                                          outcome=Outcome.DISAGREE, diagnostic=str(e)))
                return Verdict(outcome=Outcome.DISAGREE, steps=results, diagnostic=str(e))
            except (EvaluationError, TypeCheckError) as e:
                logger.warning(f"Step {index} could not be evaluated: {e}")
                results.append(StepResult(index=index, operation=step.operation,
                                          outcome=Outcome.ERROR, diagnostic=str(e)))
                return Verdict(outcome=Outcome.ERROR, steps=results, diagnostic=str(e))
            results.append(StepResult(index=index, operation=step.operation,
                                      outcome=Outcome.AGREE))
        logger.info(f"Trace of {len(trace.steps)} step(s) agrees")
        return Verdict(outcome=Outcome.AGREE, steps=results)

    def _replay(self, index: int, step: TraceStep, current: State) -> State:
        operation = self.machine.operation(step.operation)
        if operation is None:
            raise UnknownOperationIdentifier(
                f"step {index}: {self.machine.name} has no operation {step.operation}")
        args = self._arguments(index, step)
        successors = self.animator.execute_operation(current, step.operation, args)
        if len(successors) == 0:
            raise OperationNotEnabled(f"step {index}: {step.operation} is not enabled")
        expected = self.loader.load(step.post_state, defaults=current)
        if expected not in successors:
            raise NoMatchingSuccessor(
                f"step {index}: no successor of {step.operation} matches "
                f"({describe_difference(expected, successors)})")
        space = self.animator.state_space
        source = space.add_state(current)
        target = space.add_state(expected)
        label = OperationLabel(step.operation, tuple((args or {}).items()))
        space.add_transition(source, label, target)
        space.move_to(target)
        return expected

    def _arguments(self, index: int, step: TraceStep) -> Optional[Dict[str, object]]:
        operation = self.machine.operation(step.operation)
        if not step.args:
            return None if operation.params else {}
        if len(step.args) != len(operation.params):
            raise StateFileError(
                f"step {index}: {operation.name} takes {len(operation.params)} "
                f"argument(s), the trace gives {len(step.args)}", step.span)
        return {
            name: self.loader.evaluate(name, node, operation.param_types[name])
            for name, node in zip(operation.params, step.args)
        }
