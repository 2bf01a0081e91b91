"""
Candidate generation for quantified identifiers.

Types are enumerated in a fixed order: integers as 0, 1, -1, 2, -2, ...
within ``minint..maxint``, BOOL as FALSE then TRUE, given sets in
declaration order, sets by size and then lexicographically, pairs row by row.
All candidates of one quantifier draw from a single ``Budget``.
"""
import itertools
from typing import Any, Iterable, Iterator, List

from src.domain.entities.btypes import (
    BoolType,
    BType,
    DeferredSetType,
    GivenSetType,
    IntegerType,
    PairType,
    SetType,
    StringType,
)
from src.domain.entities.eval_config import EvalConfig
from src.domain.exceptions import BudgetExceeded, EnumerationError


class Budget:
    """Counter shared by every candidate stream of one quantifier evaluation."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def charge(self, count: int = 1) -> None:
        self.used += count
        if self.used > self.limit:
            raise BudgetExceeded(f"more than {self.limit} candidates enumerated")


class EnumStream:
    """
    Candidates for one identifier, charged against a budget as they are drawn.

    Args:
        source: Iterable producing the candidate values
        budget: Counter to charge per candidate
    """

    def __init__(self, source: Iterable[Any], budget: Budget):
        self.source = source
        self.budget = budget

    def __iter__(self) -> Iterator[Any]:
        for value in self.source:
            self.budget.charge()
            yield value


def is_enumerable(t: BType) -> bool:
    """Whether ``enumerate_type`` can list ``t`` without an explicit bound."""
    if isinstance(t, (IntegerType, BoolType, GivenSetType, DeferredSetType)):
        return True
    if isinstance(t, SetType):
        return is_enumerable(t.element)
    if isinstance(t, PairType):
        return is_enumerable(t.left) and is_enumerable(t.right)
    return False


def _zigzag() -> Iterator[int]:
    yield 0
    for n in itertools.count(1):
        yield n
        yield -n


def enumerate_type(t: BType, env, budget: Budget = None) -> Iterator[Any]:
    """
    All values of type ``t`` in canonical enumeration order.

    Args:
        t: A resolved type
        env: Environment providing the elements of given sets
        budget: Optional shared counter; each produced value is charged

    Raises:
        EnumerationError: For STRING or unresolved types
    """
    values = _values(t, env, env.config)
    if budget is not None:
        return iter(EnumStream(values, budget))
    return values


def _values(t: BType, env, config: EvalConfig) -> Iterator[Any]:
    if isinstance(t, IntegerType):
        return integers_between(config.minint, config.maxint)
    if isinstance(t, BoolType):
        return iter((False, True))
    if isinstance(t, StringType):
        raise EnumerationError("cannot enumerate STRING")
    if isinstance(t, (GivenSetType, DeferredSetType)):
        return iter(env.elements_of(t.name))
    if isinstance(t, SetType):
        return _subsets(t.element, env, config)
    if isinstance(t, PairType):
        return _pairs(t, env, config)
    raise EnumerationError(f"cannot enumerate values of type {t}")


def integers_between(lo: int, hi: int) -> Iterator[int]:
    """``lo..hi`` ordered by distance from zero, non-negative first."""
    reach = max(abs(lo), abs(hi))
    for n in _zigzag():
        if abs(n) > reach:
            return
        if lo <= n <= hi:
            yield n


def _subsets(element: BType, env, config: EvalConfig) -> Iterator[frozenset]:
    elements: List[Any] = list(_values(element, env, config))
    for size in range(len(elements) + 1):
        for combination in itertools.combinations(elements, size):
            yield frozenset(combination)


def _pairs(t: PairType, env, config: EvalConfig) -> Iterator[tuple]:
    right = list(_values(t.right, env, config))
    for a in _values(t.left, env, config):
        for b in right:
            yield (a, b)
