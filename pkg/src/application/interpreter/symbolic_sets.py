"""
Lazy set constructions: power sets, products, relation and function spaces,
sequence spaces.

Each view answers membership without building its elements. Iteration is
available whenever the view is finite and yields elements in a fixed,
deterministic order; callers that need the whole set go through
``SetAlgebra.reify`` which applies the size cap.
"""
import itertools
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List

from src.domain.entities.ast_node import NodeKind as K
from src.domain.entities.bvalues import (
    IntervalSet,
    SymbolicSet,
    UnboundedSet,
    Universe,
    is_set,
    normalize,
    render_value,
    set_cardinality,
    set_contains,
    set_elements,
    set_is_finite,
)
from src.domain.exceptions import EnumerationError

TOTAL_KINDS = frozenset({K.TOTAL_FUNCTION, K.TOTAL_INJECTION,
                         K.TOTAL_SURJECTION, K.TOTAL_BIJECTION})
INJECTIVE_KINDS = frozenset({K.PARTIAL_INJECTION, K.TOTAL_INJECTION, K.TOTAL_BIJECTION})
SURJECTIVE_KINDS = frozenset({K.PARTIAL_SURJECTION, K.TOTAL_SURJECTION, K.TOTAL_BIJECTION})

ARROW_SYMBOLS = {
    K.RELATIONS: "<->",
    K.PARTIAL_FUNCTION: "+->",
    K.TOTAL_FUNCTION: "-->",
    K.PARTIAL_INJECTION: ">+>",
    K.TOTAL_INJECTION: ">->",
    K.PARTIAL_SURJECTION: "+->>",
    K.TOTAL_SURJECTION: "-->>",
    K.TOTAL_BIJECTION: ">->>",
}

_SEQUENCE_NAMES = {K.SEQ: "seq", K.SEQ1: "seq1", K.ISEQ: "iseq"}

# NATURAL1 <: NATURAL <: INTEGER
_UNIVERSE_ORDER = {Universe.NATURAL1: 0, Universe.NATURAL: 1, Universe.INTEGER: 2}


def finite_members(value: Any) -> frozenset:
    """The elements of a set that must be finite to be inspected."""
    if isinstance(value, frozenset):
        return value
    if not value.is_finite():
        raise EnumerationError(f"cannot inspect the elements of {render_value(value)}")
    return frozenset(normalize(v) for v in value)


def is_subset(a: Any, b: Any) -> bool:
    """
    Decide ``a <: b`` for any two set representations.

    Raises:
        EnumerationError: If both sets are infinite and no structural rule applies
    """
    if a == b:
        return True
    if set_is_finite(a):
        return all(set_contains(b, x) for x in set_elements(a))
    if set_is_finite(b):
        return False
    if isinstance(a, UnboundedSet) and isinstance(b, UnboundedSet):
        if Universe.STRING in (a.universe, b.universe):
            return False
        return _UNIVERSE_ORDER[a.universe] <= _UNIVERSE_ORDER[b.universe]
    if isinstance(a, PowerSetView) and isinstance(b, PowerSetView):
        if b.finite_only and not a.finite_only and not set_is_finite(a.base):
            return False
        if b.non_empty and not a.non_empty:
            return False
        return is_subset(a.base, b.base)
    if isinstance(a, CartesianView) and isinstance(b, CartesianView):
        return is_subset(a.left, b.left) and is_subset(a.right, b.right)
    if isinstance(a, SequenceSpaceView) and isinstance(b, SequenceSpaceView):
        if b.kind == K.SEQ1 and a.kind != K.SEQ1:
            return False
        if b.kind == K.ISEQ and a.kind != K.ISEQ:
            return False
        return is_subset(a.base, b.base)
    raise EnumerationError(
        f"cannot decide {render_value(a)} <: {render_value(b)} for infinite sets")


def is_function_in_class(f: Any, dom: Any, ran: Any, kind: K) -> bool:
    """
    Test whether relation ``f`` belongs to ``dom <kind> ran``.

    A finite ``f`` over an infinite domain is never total, and it never
    surjects onto an infinite range.

    Raises:
        EnumerationError: If ``f`` itself is infinite
    """
    if not is_set(f):
        return False
    pairs = finite_members(f)
    mapping: Dict[Any, Any] = {}
    for pair in pairs:
        if not isinstance(pair, tuple):
            return False
        x, y = pair
        if not set_contains(dom, x) or not set_contains(ran, y):
            return False
        if kind == K.RELATIONS:
            continue
        if x in mapping:
            return False
        mapping[x] = y
    if kind == K.RELATIONS:
        return True
    if kind in TOTAL_KINDS:
        if not set_is_finite(dom) or len(mapping) != set_cardinality(dom):
            return False
    if kind in INJECTIVE_KINDS:
        if len(set(mapping.values())) != len(mapping):
            return False
    if kind in SURJECTIVE_KINDS:
        if not set_is_finite(ran) or len(set(mapping.values())) != set_cardinality(ran):
            return False
    return True


def sequence_values(s: Any) -> List[Any]:
    """
    The entries of a sequence in index order, or None when ``s`` is not one.

    A sequence is a finite function whose domain is ``1..n``.
    """
    if not is_set(s) or not set_is_finite(s):
        return None
    pairs = finite_members(s)
    entries: Dict[int, Any] = {}
    for pair in pairs:
        if not isinstance(pair, tuple) or type(pair[0]) is not int:
            return None
        if pair[0] in entries:
            return None
        entries[pair[0]] = pair[1]
    if set(entries) != set(range(1, len(entries) + 1)):
        return None
    return [entries[i] for i in range(1, len(entries) + 1)]


def make_sequence(values: List[Any]) -> frozenset:
    return frozenset((i + 1, normalize(v)) for i, v in enumerate(values))


@dataclass(frozen=True)
class PowerSetView(SymbolicSet):
    """POW, POW1, FIN or FIN1 of a base set."""
    base: Any
    non_empty: bool = False
    finite_only: bool = False

    def contains(self, value: Any) -> bool:
        if not is_set(value):
            return False
        if self.finite_only and not set_is_finite(value):
            return False
        if self.non_empty and set_is_finite(value) and set_cardinality(value) == 0:
            return False
        return is_subset(value, self.base)

    def is_finite(self) -> bool:
        return set_is_finite(self.base)

    def cardinality(self) -> int:
        if not self.is_finite():
            raise EnumerationError(f"{self.render()} is infinite")
        count = 2 ** set_cardinality(self.base)
        return count - 1 if self.non_empty else count

    def __iter__(self) -> Iterator[frozenset]:
        if not self.is_finite():
            raise EnumerationError(f"cannot enumerate {self.render()}")
        elements = list(set_elements(self.base))
        start = 1 if self.non_empty else 0
        for size in range(start, len(elements) + 1):
            for combination in itertools.combinations(elements, size):
                yield frozenset(combination)

    def render(self) -> str:
        name = "FIN" if self.finite_only else "POW"
        if self.non_empty:
            name += "1"
        return f"{name}({render_value(self.base)})"


@dataclass(frozen=True)
class CartesianView(SymbolicSet):
    """``left * right`` where at least one side is infinite."""
    left: Any
    right: Any

    def contains(self, value: Any) -> bool:
        return (isinstance(value, tuple)
                and set_contains(self.left, value[0])
                and set_contains(self.right, value[1]))

    def is_finite(self) -> bool:
        if set_is_finite(self.left) and set_cardinality(self.left) == 0:
            return True
        if set_is_finite(self.right) and set_cardinality(self.right) == 0:
            return True
        return set_is_finite(self.left) and set_is_finite(self.right)

    def cardinality(self) -> int:
        if not self.is_finite():
            raise EnumerationError(f"{self.render()} is infinite")
        if set_is_finite(self.left) and set_cardinality(self.left) == 0:
            return 0
        if set_is_finite(self.right) and set_cardinality(self.right) == 0:
            return 0
        return set_cardinality(self.left) * set_cardinality(self.right)

    def __iter__(self) -> Iterator[tuple]:
        if not self.is_finite():
            raise EnumerationError(f"cannot enumerate {self.render()}")
        if self.cardinality() == 0:
            return iter(())
        right = [normalize(v) for v in set_elements(self.right)]
        return ((normalize(a), b) for a in set_elements(self.left) for b in right)

    def render(self) -> str:
        return f"({render_value(self.left)}*{render_value(self.right)})"


@dataclass(frozen=True)
class RelationSpaceView(SymbolicSet):
    """All relations between two sets."""
    dom: Any
    ran: Any

    def contains(self, value: Any) -> bool:
        return is_function_in_class(value, self.dom, self.ran, K.RELATIONS)

    def is_finite(self) -> bool:
        return CartesianView(self.dom, self.ran).is_finite()

    def cardinality(self) -> int:
        return 2 ** CartesianView(self.dom, self.ran).cardinality()

    def __iter__(self) -> Iterator[frozenset]:
        return iter(PowerSetView(CartesianView(self.dom, self.ran)))

    def render(self) -> str:
        return f"({render_value(self.dom)}<->{render_value(self.ran)})"


@dataclass(frozen=True)
class FunctionSpaceView(SymbolicSet):
    """One of the seven function classes between two sets."""
    dom: Any
    ran: Any
    kind: K

    def contains(self, value: Any) -> bool:
        return is_function_in_class(value, self.dom, self.ran, self.kind)

    def is_finite(self) -> bool:
        if set_is_finite(self.dom) and set_cardinality(self.dom) == 0:
            return True
        return set_is_finite(self.dom) and set_is_finite(self.ran)

    def cardinality(self) -> int:
        if not self.is_finite():
            raise EnumerationError(f"{self.render()} is infinite")
        return sum(1 for _ in self)

    def __iter__(self) -> Iterator[frozenset]:
        """Each domain element maps to one range element or, for partial kinds, to none."""
        if not self.is_finite():
            raise EnumerationError(f"cannot enumerate {self.render()}")
        domain = [normalize(x) for x in set_elements(self.dom)]
        targets: List[Any] = [normalize(y) for y in set_elements(self.ran)]
        choices = targets if self.kind in TOTAL_KINDS else [_NONE] + targets
        for images in itertools.product(choices, repeat=len(domain)):
            candidate = frozenset((x, y) for x, y in zip(domain, images) if y is not _NONE)
            if is_function_in_class(candidate, self.dom, self.ran, self.kind):
                yield candidate

    def render(self) -> str:
        symbol = ARROW_SYMBOLS[self.kind]
        return f"({render_value(self.dom)}{symbol}{render_value(self.ran)})"


class _Unmapped:
    def __repr__(self) -> str:
        return "<unmapped>"


_NONE = _Unmapped()


@dataclass(frozen=True)
class SequenceSpaceView(SymbolicSet):
    """``seq``, ``seq1`` or ``iseq`` of a base set."""
    base: Any
    kind: K = K.SEQ

    def contains(self, value: Any) -> bool:
        entries = sequence_values(value)
        if entries is None:
            return False
        if self.kind == K.SEQ1 and not entries:
            return False
        if self.kind == K.ISEQ and len(set(entries)) != len(entries):
            return False
        return all(set_contains(self.base, v) for v in entries)

    def is_finite(self) -> bool:
        if not set_is_finite(self.base):
            return False
        # over an empty base only [] exists; injective sequences are bounded in length
        return self.kind == K.ISEQ or set_cardinality(self.base) == 0

    def cardinality(self) -> int:
        if not self.is_finite():
            raise EnumerationError(f"{self.render()} is infinite")
        return sum(1 for _ in self)

    def __iter__(self) -> Iterator[frozenset]:
        if not self.is_finite():
            raise EnumerationError(f"cannot enumerate {self.render()}")
        elements = [normalize(v) for v in set_elements(self.base)]
        start = 1 if self.kind == K.SEQ1 else 0
        # only reached for iseq or an empty base
        for length in range(start, len(elements) + 1):
            for arrangement in itertools.permutations(elements, length):
                yield make_sequence(list(arrangement))

    def render(self) -> str:
        return f"{_SEQUENCE_NAMES[self.kind]}({render_value(self.base)})"


def interval_intersection(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return IntervalSet(max(a.lo, b.lo), min(a.hi, b.hi))
