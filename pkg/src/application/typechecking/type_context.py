from contextlib import contextmanager
from typing import Dict, Iterator, List, Mapping, Optional

from src.domain.entities.btypes import BType, DeferredSetType, GivenSetType, SetType


class TypeContext:
    """
    Identifier types in nested scopes plus the declared given sets.

    Inner scopes shadow outer ones; leaving a scope restores the outer
    bindings exactly.
    """

    def __init__(self):
        self.scopes: List[Dict[str, BType]] = [{}]
        self.given_sets: Dict[str, List[str]] = {}

    def declare_enumerated_set(self, name: str, elements: List[str]) -> None:
        element_type = GivenSetType(name)
        self.given_sets[name] = list(elements)
        self.scopes[0][name] = SetType(element_type)
        for element in elements:
            self.scopes[0][element] = element_type

    def declare_deferred_set(self, name: str) -> None:
        self.given_sets[name] = []
        self.scopes[0][name] = SetType(DeferredSetType(name))

    def declare(self, name: str, t: BType) -> None:
        self.scopes[-1][name] = t

    def lookup(self, name: str) -> Optional[BType]:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    @contextmanager
    def scope(self, bindings: Mapping[str, BType] = None) -> Iterator[Dict[str, BType]]:
        self.scopes.append(dict(bindings or {}))
        try:
            yield self.scopes[-1]
        finally:
            self.scopes.pop()

    @property
    def depth(self) -> int:
        return len(self.scopes)
