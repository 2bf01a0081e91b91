"""
Double-checking a single state against a machine's clauses.
"""
import logging
from typing import Optional

from src.application.animation.animator import Animator, ClauseEvaluation
from src.domain.entities.machine_state import State
from src.domain.entities.verdict import Claim, ClauseKind, Outcome, Verdict

logger = logging.getLogger(__name__)


def compare_with_claim(outcome: Outcome, claim: Optional[Claim]) -> Outcome:
    """AGREE/DISAGREE against a claim; ERROR is never turned into agreement."""
    if claim is None or outcome == Outcome.ERROR:
        return outcome
    ours = Claim.OK if outcome == Outcome.OK else Claim.VIOLATION
    return Outcome.AGREE if ours == claim else Outcome.DISAGREE


class StateChecker:
    """
    Evaluates PROPERTIES, INVARIANT and ASSERTIONS on a loaded state.

    Args:
        animator: Animator of the machine the state belongs to
    """

    def __init__(self, animator: Animator):
        self.animator = animator
        self.machine = animator.machine

    def check(self, state: State, claim: Optional[Claim] = None) -> Verdict:
        """
        Evaluate every top-level conjunct of every clause on ``state``.

        The outcome is ERROR if any conjunct fails to evaluate, otherwise
        VIOLATION if any is false and OK if all hold. With a claim it is
        compared against the claim instead.
        """
        machine = self.machine
        clauses = [
            (ClauseKind.PROPERTIES, [machine.properties] if machine.properties is not None else []),
            (ClauseKind.INVARIANT, [machine.invariant] if machine.invariant is not None else []),
            (ClauseKind.ASSERTIONS, list(machine.assertions)),
        ]
        evaluation = ClauseEvaluation()
        for kind, predicates in clauses:
            evaluation.checks.extend(self.animator.evaluate_clause(kind, predicates, state).checks)
        checks = evaluation.checks
        outcome = evaluation.outcome
        final = compare_with_claim(outcome, claim)
        logger.info(f"State check: {outcome.value}"
                    + (f" against claim {claim.value}: {final.value}" if claim else ""))
        return Verdict(outcome=final, claim=claim, clauses=checks)
