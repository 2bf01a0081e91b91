"""
Set, relation, function and sequence operators over runtime values.

Finite operands are handled as frozensets. Infinite operands are accepted
where the result can still be described without enumeration; otherwise an
``EnumerationError`` is raised. Every frozenset that is built here is
checked against ``max_set_size``.
"""
import itertools
import logging
from typing import Any, Callable, Iterable, List

from src.application.interpreter.symbolic_sets import (
    CartesianView,
    FunctionSpaceView,
    PowerSetView,
    RelationSpaceView,
    SequenceSpaceView,
    finite_members,
    interval_intersection,
    is_function_in_class,
    is_subset,
    make_sequence,
    sequence_values,
)
from src.domain.entities.ast_node import NodeKind as K
from src.domain.entities.bvalues import (
    IntervalSet,
    SymbolicSet,
    UnboundedSet,
    Universe,
    normalize,
    render_value,
    set_cardinality,
    set_contains,
    set_elements,
    set_is_finite,
    values_equal,
)
from src.domain.entities.eval_config import EvalConfig
from src.domain.exceptions import (
    EnumerationError,
    SizeCapExceeded,
    WDKind,
    WellDefinednessError,
)

logger = logging.getLogger(__name__)


class SetAlgebra:
    """
    Operators on B sets honouring the configured size cap.

    Args:
        config: Evaluation limits; ``max_set_size`` bounds every built set
    """

    def __init__(self, config: EvalConfig):
        self.config = config

    # construction

    def check_size(self, size: int, what: str = "set") -> None:
        if size > self.config.max_set_size:
            raise SizeCapExceeded(
                f"{what} would have {size} elements (limit {self.config.max_set_size})")

    def reify(self, value: Any) -> frozenset:
        """
        Materialize a set as a frozenset.

        Raises:
            EnumerationError: If the set is infinite
            SizeCapExceeded: If it has more than ``max_set_size`` elements
        """
        if isinstance(value, frozenset):
            return value
        if not value.is_finite():
            raise EnumerationError(f"cannot enumerate {render_value(value)}")
        self.check_size(value.cardinality(), render_value(value))
        return frozenset(normalize(v) for v in value)

    def build(self, elements: Iterable[Any]) -> frozenset:
        result = frozenset(normalize(e) for e in elements)
        self.check_size(len(result))
        return result

    def interval(self, lo: int, hi: int) -> IntervalSet:
        return IntervalSet(lo, hi)

    # boolean set operators

    def union(self, a: Any, b: Any) -> Any:
        if set_is_finite(a) and set_is_finite(b):
            result = self.reify(a) | self.reify(b)
            self.check_size(len(result))
            return result
        if is_subset(b, a):
            return a
        if is_subset(a, b):
            return b
        raise EnumerationError(
            f"cannot represent {render_value(a)} \\/ {render_value(b)}")

    def intersection(self, a: Any, b: Any) -> Any:
        if isinstance(a, IntervalSet) and isinstance(b, IntervalSet):
            return interval_intersection(a, b)
        bounded = _bounded_by_universe(a, b) or _bounded_by_universe(b, a)
        if bounded is not None:
            return bounded
        if set_is_finite(a):
            return self.build(x for x in set_elements(a) if set_contains(b, x))
        if set_is_finite(b):
            return self.build(x for x in set_elements(b) if set_contains(a, x))
        if is_subset(a, b):
            return a
        if is_subset(b, a):
            return b
        raise EnumerationError(
            f"cannot represent {render_value(a)} /\\ {render_value(b)}")

    def difference(self, a: Any, b: Any) -> Any:
        if not set_is_finite(a):
            if set_is_finite(b) and set_cardinality(b) == 0:
                return a
            raise EnumerationError(
                f"cannot represent {render_value(a)} - {render_value(b)}")
        return self.build(x for x in set_elements(a) if not set_contains(b, x))

    def subtract_overloaded(self, a: Any, b: Any) -> Any:
        """Integer subtraction or set difference depending on the operands."""
        if type(a) is int and type(b) is int:
            return a - b
        return self.difference(a, b)

    def cartesian_product(self, a: Any, b: Any) -> Any:
        if not (set_is_finite(a) and set_is_finite(b)):
            return CartesianView(a, b)
        left, right = self.reify(a), self.reify(b)
        self.check_size(len(left) * len(right), "cartesian product")
        return frozenset(itertools.product(left, right))

    def power_set(self, a: Any, non_empty: bool = False,
                  finite_only: bool = False) -> PowerSetView:
        """
        POW/POW1/FIN/FIN1 of ``a``.

        The result stays symbolic; ``reify`` enforces the size cap when the
        subsets are actually needed.
        """
        return PowerSetView(a, non_empty=non_empty, finite_only=finite_only)

    def fin_subsets(self, a: Any, non_empty: bool = False) -> PowerSetView:
        return self.power_set(a, non_empty=non_empty, finite_only=True)

    def card(self, a: Any) -> int:
        if not set_is_finite(a):
            raise EnumerationError(f"card of infinite set {render_value(a)}")
        return set_cardinality(a)

    def minimum(self, a: Any) -> int:
        if isinstance(a, UnboundedSet) and a.lower_bound is not None:
            return a.lower_bound
        if isinstance(a, IntervalSet):
            if a.cardinality() == 0:
                raise WellDefinednessError(WDKind.EMPTY_MIN_MAX, "min({})")
            return a.lo
        elements = self.reify(a)
        if not elements:
            raise WellDefinednessError(WDKind.EMPTY_MIN_MAX, "min({})")
        return min(elements)

    def maximum(self, a: Any) -> int:
        if isinstance(a, IntervalSet):
            if a.cardinality() == 0:
                raise WellDefinednessError(WDKind.EMPTY_MIN_MAX, "max({})")
            return a.hi
        elements = self.reify(a)
        if not elements:
            raise WellDefinednessError(WDKind.EMPTY_MIN_MAX, "max({})")
        return max(elements)

    def is_subset(self, a: Any, b: Any) -> bool:
        return is_subset(a, b)

    def is_strict_subset(self, a: Any, b: Any) -> bool:
        return is_subset(a, b) and not values_equal(a, b)

    # relations

    def relation_space(self, a: Any, b: Any) -> RelationSpaceView:
        return RelationSpaceView(a, b)

    def function_space(self, a: Any, b: Any, kind: K) -> FunctionSpaceView:
        return FunctionSpaceView(a, b, kind)

    def is_member_of_function_class(self, f: Any, dom: Any, ran: Any, kind: K) -> bool:
        return is_function_in_class(f, dom, ran, kind)

    def domain(self, r: Any) -> frozenset:
        return frozenset(x for x, _ in self._pairs(r))

    def range(self, r: Any) -> frozenset:
        return frozenset(y for _, y in self._pairs(r))

    def inverse(self, r: Any) -> frozenset:
        return frozenset((y, x) for x, y in self._pairs(r))

    def image(self, r: Any, s: Any) -> frozenset:
        return frozenset(y for x, y in self._pairs(r) if set_contains(s, x))

    def compose(self, r: Any, q: Any) -> frozenset:
        """Forward composition ``r ; q``."""
        successors = {}
        for y, z in self._pairs(q):
            successors.setdefault(y, []).append(z)
        return self.build((x, z) for x, y in self._pairs(r) for z in successors.get(y, ()))

    def override(self, r: Any, q: Any) -> frozenset:
        overridden = self.domain(q)
        return self.build(itertools.chain(
            (p for p in self._pairs(r) if p[0] not in overridden), self._pairs(q)))

    def domain_restrict(self, s: Any, r: Any) -> frozenset:
        return self._filter(r, lambda x, _: set_contains(s, x))

    def domain_subtract(self, s: Any, r: Any) -> frozenset:
        return self._filter(r, lambda x, _: not set_contains(s, x))

    def range_restrict(self, r: Any, s: Any) -> frozenset:
        return self._filter(r, lambda _, y: set_contains(s, y))

    def range_subtract(self, r: Any, s: Any) -> frozenset:
        return self._filter(r, lambda _, y: not set_contains(s, y))

    def apply_function(self, f: Any, x: Any) -> Any:
        """
        ``f(x)``.

        Raises:
            WellDefinednessError: If ``x`` is outside ``dom(f)`` or ``f`` maps
                it to several values
        """
        x = normalize(x)
        images = [y for a, y in self._pairs(f) if values_equal(a, x)]
        if not images:
            raise WellDefinednessError(WDKind.APPLICATION_OUTSIDE_DOMAIN,
                                       f"{render_value(x)} not in domain")
        if len(images) > 1:
            raise WellDefinednessError(WDKind.NOT_A_FUNCTION,
                                       f"{len(images)} images for {render_value(x)}")
        return images[0]

    def _pairs(self, r: Any) -> frozenset:
        if isinstance(r, SymbolicSet):
            return self.reify(r)
        return finite_members(r)

    def _filter(self, r: Any, keep: Callable[[Any, Any], bool]) -> frozenset:
        return frozenset(p for p in self._pairs(r) if keep(p[0], p[1]))

    # sequences

    def sequence_space(self, a: Any, kind: K = K.SEQ) -> SequenceSpaceView:
        return SequenceSpaceView(a, kind)

    def sequence(self, values: List[Any]) -> frozenset:
        self.check_size(len(values), "sequence")
        return make_sequence(values)

    def entries(self, s: Any) -> List[Any]:
        """
        Entries of a sequence.

        Raises:
            WellDefinednessError: If ``s`` is not a function on ``1..n``
        """
        values = sequence_values(s)
        if values is None:
            raise WellDefinednessError(WDKind.NOT_A_SEQUENCE, render_value(s))
        return values

    def size(self, s: Any) -> int:
        return len(self.entries(s))

    def concat(self, s: Any, t: Any) -> frozenset:
        return self.sequence(self.entries(s) + self.entries(t))

    def first(self, s: Any) -> Any:
        return self._non_empty(s, "first")[0]

    def last(self, s: Any) -> Any:
        return self._non_empty(s, "last")[-1]

    def front(self, s: Any) -> frozenset:
        return self.sequence(self._non_empty(s, "front")[:-1])

    def tail(self, s: Any) -> frozenset:
        return self.sequence(self._non_empty(s, "tail")[1:])

    def rev(self, s: Any) -> frozenset:
        return self.sequence(list(reversed(self.entries(s))))

    def _non_empty(self, s: Any, operator: str) -> List[Any]:
        values = self.entries(s)
        if not values:
            raise WellDefinednessError(WDKind.EMPTY_SEQUENCE, f"{operator}([])")
        return values


def _bounded_by_universe(a: Any, b: Any) -> Any:
    """``a /\\ b`` when ``a`` is an integer universe and ``b`` an interval."""
    if not (isinstance(a, UnboundedSet) and isinstance(b, IntervalSet)):
        return None
    if a.universe == Universe.STRING:
        return IntervalSet(1, 0)
    lower = a.lower_bound
    return b if lower is None else IntervalSet(max(lower, b.lo), b.hi)
