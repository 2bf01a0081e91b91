"""
Candidate domains for quantified identifiers.

Before a quantifier enumerates the values of an identifier, its top-level
conjuncts are searched for constraints that bound the identifier using
only values that are already known: ``x : S``, ``x = E``, ``x <: S`` and
integer comparisons. The smallest finite domain found replaces the
enumeration of the identifier's whole type. A domain may contain values
that do not satisfy the body; it never omits one that does.

With quick narrowing off only ``x : S`` with a finite ``S`` is used. The
integers the constraints mention are still checked against
``minint..maxint`` before that range is enumerated, so both settings agree
whenever they both produce an answer.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, List, Optional, Set

from src.application.interpreter.enumeration import enumerate_type, integers_between, is_enumerable
from src.application.interpreter.symbolic_sets import PowerSetView, interval_intersection
from src.application.syntax.ast_utils import free_identifiers
from src.application.syntax.pretty_printer import pretty_print
from src.domain.entities.ast_node import AstNode, NodeKind as K
from src.domain.entities.btypes import BType, IntegerType
from src.domain.entities.bvalues import (
    IntervalSet,
    UnboundedSet,
    normalize,
    render_value,
    set_cardinality,
    set_elements,
    set_is_finite,
)
from src.domain.exceptions import EnumerationError, EvaluationError

logger = logging.getLogger(__name__)

# comparison with the identifier on the right, rewritten with it on the left
_FLIPPED = {
    K.EQUAL: K.EQUAL,
    K.LESS: K.GREATER,
    K.LESS_EQUAL: K.GREATER_EQUAL,
    K.GREATER: K.LESS,
    K.GREATER_EQUAL: K.LESS_EQUAL,
}

_NARROWING_KINDS = frozenset({K.MEMBER, K.EQUAL, K.SUBSET, K.STRICT_SUBSET,
                              K.LESS, K.LESS_EQUAL, K.GREATER, K.GREATER_EQUAL})


@dataclass
class Bounds:
    """What the constraints say about one identifier."""
    domain: Any = None
    lower: Optional[int] = None
    upper: Optional[int] = None
    declared: Any = None
    pinned: List[int] = field(default_factory=list)

    def offer(self, candidate: Any) -> None:
        if self.domain is None or set_cardinality(candidate) < set_cardinality(self.domain):
            self.domain = candidate

    def declare(self, candidate: Any) -> None:
        """Record a finite set the identifier is a member of."""
        self.offer(candidate)
        if self.declared is None or set_cardinality(candidate) < set_cardinality(self.declared):
            self.declared = candidate

    def raise_lower(self, value: int) -> None:
        self.lower = value if self.lower is None else max(self.lower, value)

    def cap_upper(self, value: int) -> None:
        self.upper = value if self.upper is None else min(self.upper, value)

    def integer_facts(self) -> List[int]:
        """Every integer the constraints compare the identifier with."""
        return [v for v in (self.lower, self.upper) if v is not None] + self.pinned

    def resolve(self) -> Any:
        """A finite set covering every admissible value, or None."""
        interval = None
        if self.lower is not None and self.upper is not None:
            interval = IntervalSet(self.lower, self.upper)
        if self.domain is None:
            return interval
        if isinstance(self.domain, IntervalSet):
            bounded = IntervalSet(
                self.domain.lo if self.lower is None else max(self.lower, self.domain.lo),
                self.domain.hi if self.upper is None else min(self.upper, self.domain.hi))
            return bounded if interval is None else interval_intersection(bounded, interval)
        if interval is not None and interval.cardinality() < set_cardinality(self.domain):
            return interval
        return self.domain


def split_forall(body: AstNode):
    """Antecedent and consequent of a universal body, antecedent None if absent."""
    if body.kind == K.IMPLICATION:
        return body.children[0], body.children[1]
    return None, body


class QuickNarrower:
    """
    Computes candidate domains with the help of an interpreter.

    Args:
        interpreter: Evaluates the bounding expressions in the current environment
    """

    def __init__(self, interpreter):
        self.interpreter = interpreter
        self.env = interpreter.env
        self.config = interpreter.config

    def candidates(self, name: str, t: Optional[BType], constraints: List[AstNode],
                   unavailable: Set[str]) -> Iterable[Any]:
        """
        Values to try for ``name``.

        An integer that no constraint confines to a finite set ranges over
        ``minint..maxint``, clipped by any one-sided bound.

        Args:
            name: The quantified identifier
            t: Its inferred type
            constraints: Conjuncts that every accepted binding satisfies
            unavailable: Identifiers bound later in the same quantifier

        Raises:
            EnumerationError: If the constraints compare an integer with a
                value outside ``minint..maxint`` and no finite domain bounds
                it, or if its type cannot be enumerated
        """
        bounds = self.collect(name, constraints, unavailable)
        domain = self._domain(bounds)
        if domain is not None:
            logger.debug(f"Narrowed {name} to {render_value(domain)}")
            return set_elements(domain)
        if isinstance(t, IntegerType):
            return self._integer_range(name, bounds)
        if t is not None and is_enumerable(t):
            return enumerate_type(t, self.env)
        raise EnumerationError(
            f"cannot enumerate {name}: type {t} is unbounded and no constraint bounds it")

    def narrow(self, name: str, constraints: List[AstNode],
               unavailable: Set[str]) -> Any:
        """The finite domain the constraints give ``name``, or None."""
        return self._domain(self.collect(name, constraints, unavailable))

    def collect(self, name: str, constraints: List[AstNode],
                unavailable: Set[str]) -> Bounds:
        bounds = Bounds()
        blocked = set(unavailable) | {name}
        for constraint in constraints:
            found = self._match(constraint, name)
            if found is None:
                continue
            kind, other = found
            if free_identifiers(other) & blocked:
                continue
            try:
                value = self.interpreter.eval_expression(other)
            except EvaluationError as e:
                logger.warning(f"Ignoring constraint {pretty_print(constraint)} on {name}: {e}")
                continue
            self._apply(bounds, kind, value)
        return bounds

    def _domain(self, bounds: Bounds) -> Any:
        if self.config.quick_narrow:
            return bounds.resolve()
        return bounds.declared

    def _integer_range(self, name: str, bounds: Bounds) -> Iterable[int]:
        lo, hi = self.config.minint, self.config.maxint
        outside = [v for v in bounds.integer_facts() if not lo <= v <= hi]
        if outside:
            raise EnumerationError(
                f"cannot enumerate {name}: its constraints reach {outside[0]}, "
                f"outside MININT..MAXINT ({lo}..{hi})")
        if self.config.quick_narrow:
            lo = lo if bounds.lower is None else max(lo, bounds.lower)
            hi = hi if bounds.upper is None else min(hi, bounds.upper)
        logger.debug(f"Enumerating {name} over {lo}..{hi}")
        return integers_between(lo, hi)

    def _apply(self, bounds: Bounds, kind: K, value: Any) -> None:
        if kind == K.MEMBER:
            if set_is_finite(value):
                bounds.declare(value)
            elif isinstance(value, UnboundedSet) and value.lower_bound is not None:
                bounds.raise_lower(value.lower_bound)
        elif kind == K.EQUAL:
            bounds.offer(frozenset({normalize(value)}))
            if type(value) is int:
                bounds.pinned.append(value)
        elif kind in (K.SUBSET, K.STRICT_SUBSET):
            if set_is_finite(value):
                bounds.offer(PowerSetView(value))
        elif type(value) is int:
            if kind == K.LESS:
                bounds.cap_upper(value - 1)
            elif kind == K.LESS_EQUAL:
                bounds.cap_upper(value)
            elif kind == K.GREATER:
                bounds.raise_lower(value + 1)
            elif kind == K.GREATER_EQUAL:
                bounds.raise_lower(value)

    @staticmethod
    def _match(constraint: AstNode, name: str):
        if constraint.kind not in _NARROWING_KINDS:
            return None
        left, right = constraint.children
        if left.kind == K.IDENTIFIER and left.payload == name:
            return constraint.kind, right
        if right.kind == K.IDENTIFIER and right.payload == name \
                and constraint.kind in _FLIPPED:
            return _FLIPPED[constraint.kind], left
        return None
