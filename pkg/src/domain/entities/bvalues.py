"""
Runtime values of the interpreter.

Values are plain Python objects wherever possible:

    INTEGER  -> int          BOOL   -> bool       STRING -> str
    element  -> ElementValue pair   -> 2-tuple    finite set -> frozenset

Sets that are large or infinite are represented by ``SymbolicSet`` subclasses
which answer membership without enumerating. A finite symbolic set is
replaced by its frozenset (see ``normalize``) before it is stored inside
another set, a pair or a machine state, so frozensets only ever contain
normalized values.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Optional

from src.domain.exceptions import EnumerationError

# at or below this size an interval is rendered element by element
INTERVAL_RENDER_LIMIT = 32


@dataclass(frozen=True)
class ElementValue:
    """An element of an enumerated or deferred set."""
    set_name: str
    name: str
    index: int = field(default=0, compare=False)

    def __str__(self) -> str:
        return self.name


class SymbolicSet(ABC):
    """A set described by its construction rather than its elements."""

    @abstractmethod
    def contains(self, value: Any) -> bool:
        pass

    @abstractmethod
    def is_finite(self) -> bool:
        pass

    @abstractmethod
    def cardinality(self) -> int:
        """
        Number of elements.

        Raises:
            EnumerationError: If the set is infinite
        """
        pass

    @abstractmethod
    def __iter__(self) -> Iterator[Any]:
        """Elements in canonical order; raises EnumerationError when infinite."""
        pass

    @abstractmethod
    def render(self) -> str:
        pass

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class IntervalSet(SymbolicSet):
    """The integers ``lo..hi``; empty when ``lo > hi``."""
    lo: int
    hi: int

    def contains(self, value: Any) -> bool:
        return type(value) is int and self.lo <= value <= self.hi

    def is_finite(self) -> bool:
        return True

    def cardinality(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def render(self) -> str:
        if self.cardinality() <= INTERVAL_RENDER_LIMIT:
            return "{" + ",".join(str(n) for n in self) + "}"
        return f"{self.lo}..{self.hi}"


class Universe(str, Enum):
    NATURAL = "NATURAL"
    NATURAL1 = "NATURAL1"
    INTEGER = "INTEGER"
    STRING = "STRING"


@dataclass(frozen=True)
class UnboundedSet(SymbolicSet):
    """NATURAL, NATURAL1, INTEGER or the set of all strings."""
    universe: Universe

    @property
    def lower_bound(self) -> Optional[int]:
        return {Universe.NATURAL: 0, Universe.NATURAL1: 1}.get(self.universe)

    def contains(self, value: Any) -> bool:
        if self.universe == Universe.STRING:
            return isinstance(value, str)
        if type(value) is not int:
            return False
        lower = self.lower_bound
        return lower is None or value >= lower

    def is_finite(self) -> bool:
        return False

    def cardinality(self) -> int:
        raise EnumerationError(f"{self.universe.value} is infinite")

    def __iter__(self):
        raise EnumerationError(f"cannot enumerate {self.universe.value}")

    def render(self) -> str:
        return self.universe.value


def is_set(value: Any) -> bool:
    return isinstance(value, (frozenset, SymbolicSet))


def set_contains(collection: Any, value: Any) -> bool:
    """Membership test on a frozenset or a symbolic set."""
    if isinstance(collection, SymbolicSet):
        return collection.contains(value)
    if isinstance(value, SymbolicSet) and not value.is_finite():
        return False
    if isinstance(value, (SymbolicSet, tuple)):
        value = normalize(value)
    return value in collection


def set_is_finite(collection: Any) -> bool:
    if isinstance(collection, SymbolicSet):
        return collection.is_finite()
    return True


def set_cardinality(collection: Any) -> int:
    if isinstance(collection, SymbolicSet):
        return collection.cardinality()
    return len(collection)


def set_elements(collection: Any) -> Iterator[Any]:
    """Iterate a set in canonical order."""
    if isinstance(collection, SymbolicSet):
        return iter(collection)
    return iter(sorted(collection, key=order_key))


def normalize(value: Any) -> Any:
    """Replace finite symbolic sets by frozensets, recursively through pairs."""
    if isinstance(value, SymbolicSet):
        if value.is_finite():
            return frozenset(normalize(v) for v in value)
        return value
    if isinstance(value, tuple):
        return (normalize(value[0]), normalize(value[1]))
    return value


def values_equal(a: Any, b: Any) -> bool:
    """
    Structural equality across representations.

    Raises:
        EnumerationError: If two different infinite descriptions must be compared
    """
    if isinstance(a, SymbolicSet) or isinstance(b, SymbolicSet):
        if a == b:
            return True
        a_finite, b_finite = set_is_finite(a), set_is_finite(b)
        if a_finite and b_finite:
            if set_cardinality(a) != set_cardinality(b):
                return False
            return normalize(a) == normalize(b)
        if a_finite != b_finite:
            return False
        raise EnumerationError(f"cannot compare infinite sets {render_value(a)} and {render_value(b)}")
    if isinstance(a, tuple) and isinstance(b, tuple):
        return values_equal(a[0], b[0]) and values_equal(a[1], b[1])
    return type(a) is type(b) and a == b


def order_key(value: Any) -> tuple:
    """Total order over normalized values: by variant, then recursively."""
    if isinstance(value, bool):
        return (0, int(value))
    if isinstance(value, int):
        return (1, value)
    if isinstance(value, str):
        return (2, value)
    if isinstance(value, ElementValue):
        return (3, value.set_name, value.index, value.name)
    if isinstance(value, tuple):
        return (4, order_key(value[0]), order_key(value[1]))
    if isinstance(value, frozenset):
        return (5, len(value), tuple(sorted(order_key(v) for v in value)))
    if isinstance(value, SymbolicSet):
        return (6, value.render())
    raise TypeError(f"not a B value: {value!r}")


def render_value(value: Any) -> str:
    """Canonical B text of a value."""
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return f'"{value}"'
    if isinstance(value, ElementValue):
        return value.name
    if isinstance(value, tuple):
        return f"({render_value(value[0])}|->{render_value(value[1])})"
    if isinstance(value, frozenset):
        return "{" + ",".join(render_value(v) for v in set_elements(value)) + "}"
    if isinstance(value, SymbolicSet):
        return value.render()
    raise TypeError(f"not a B value: {value!r}")
