"""
B type trees.

Relations are ``SetType(PairType(a, b))`` and sequences are
``SetType(PairType(INTEGER, a))``; there is no separate constructor for them.
"""
from dataclasses import dataclass
from typing import Dict, Iterator, Union

from src.domain.exceptions import OccursCheckFailure


@dataclass(frozen=True)
class IntegerType:
    def __str__(self) -> str:
        return "INTEGER"


@dataclass(frozen=True)
class BoolType:
    def __str__(self) -> str:
        return "BOOL"


@dataclass(frozen=True)
class StringType:
    def __str__(self) -> str:
        return "STRING"


@dataclass(frozen=True)
class GivenSetType:
    """Type of the elements of an enumerated set."""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class DeferredSetType:
    """Type of the elements of a deferred set."""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SetType:
    element: "BType"

    def __str__(self) -> str:
        return f"POW({self.element})"


@dataclass(frozen=True)
class PairType:
    left: "BType"
    right: "BType"

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, PairType) else str(self.right)
        return f"{self.left}*{right}"


@dataclass(frozen=True)
class TypeVariable:
    """Placeholder for a type that is not known yet."""
    id: int

    def __str__(self) -> str:
        return f"_T{self.id}"


BType = Union[IntegerType, BoolType, StringType, GivenSetType, DeferredSetType,
              SetType, PairType, TypeVariable]

INTEGER = IntegerType()
BOOL = BoolType()
STRING = StringType()


def relation_type(left: BType, right: BType) -> SetType:
    return SetType(PairType(left, right))


def sequence_type(element: BType) -> SetType:
    return SetType(PairType(INTEGER, element))


def type_variables(t: BType) -> Iterator[TypeVariable]:
    """Yield every type variable occurring in ``t``."""
    if isinstance(t, TypeVariable):
        yield t
    elif isinstance(t, SetType):
        yield from type_variables(t.element)
    elif isinstance(t, PairType):
        yield from type_variables(t.left)
        yield from type_variables(t.right)


def is_resolved(t: BType) -> bool:
    """True when ``t`` contains no type variable."""
    return next(type_variables(t), None) is None


class TypeSubstitution:
    """
    Bindings from type-variable ids to types.

    Bindings may chain through other variables; ``apply`` follows them to the
    end so that applying twice gives the same result as applying once.
    """

    def __init__(self, bindings: Dict[int, BType] = None):
        self.bindings: Dict[int, BType] = dict(bindings or {})

    def __len__(self) -> int:
        return len(self.bindings)

    def __contains__(self, var: TypeVariable) -> bool:
        return var.id in self.bindings

    def copy(self) -> "TypeSubstitution":
        return TypeSubstitution(self.bindings)

    def apply(self, t: BType) -> BType:
        """
        Replace every bound variable in ``t`` by its binding, recursively.

        Args:
            t: Type to resolve

        Returns:
            The resolved type; unbound variables are left in place
        """
        if isinstance(t, TypeVariable):
            bound = self.bindings.get(t.id)
            if bound is None:
                return t
            resolved = self.apply(bound)
            if resolved != bound:
                self.bindings[t.id] = resolved
            return resolved
        if isinstance(t, SetType):
            return SetType(self.apply(t.element))
        if isinstance(t, PairType):
            return PairType(self.apply(t.left), self.apply(t.right))
        return t

    def bind(self, var: TypeVariable, t: BType) -> None:
        """
        Bind ``var`` to ``t``.

        Raises:
            OccursCheckFailure: If ``t`` mentions ``var`` after resolution
        """
        resolved = self.apply(t)
        if resolved == var:
            return
        if any(v == var for v in type_variables(resolved)):
            raise OccursCheckFailure(f"type variable {var} occurs in {resolved}")
        self.bindings[var.id] = resolved
