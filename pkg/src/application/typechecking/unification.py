from typing import Optional

from src.domain.entities.btypes import BType, PairType, SetType, TypeSubstitution, TypeVariable
from src.domain.entities.source_span import SourceSpan
from src.domain.exceptions import OccursCheckFailure, TypeMismatch


def unify(a: BType, b: BType, substitution: Optional[TypeSubstitution] = None,
          span: Optional[SourceSpan] = None) -> TypeSubstitution:
    """
    Extend ``substitution`` with the most general unifier of ``a`` and ``b``.

    The substitution is updated in place and returned.

    Args:
        a: Expected type
        b: Found type
        substitution: Bindings collected so far (a new one when omitted)
        span: Source location used in diagnostics

    Raises:
        TypeMismatch: If the types have different constructors
        OccursCheckFailure: If a variable would have to contain itself
    """
    s = substitution if substitution is not None else TypeSubstitution()
    try:
        _unify(a, b, s)
    except TypeMismatch:
        raise TypeMismatch(s.apply(a), s.apply(b), span) from None
    except OccursCheckFailure as e:
        raise OccursCheckFailure(e.message, span) from None
    return s


def _unify(a: BType, b: BType, s: TypeSubstitution) -> None:
    a = s.apply(a)
    b = s.apply(b)
    if a == b:
        return
    if isinstance(a, TypeVariable):
        s.bind(a, b)
        return
    if isinstance(b, TypeVariable):
        s.bind(b, a)
        return
    if isinstance(a, SetType) and isinstance(b, SetType):
        _unify(a.element, b.element, s)
        return
    if isinstance(a, PairType) and isinstance(b, PairType):
        _unify(a.left, b.left, s)
        _unify(a.right, b.right, s)
        return
    raise TypeMismatch(a, b)
