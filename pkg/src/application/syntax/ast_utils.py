"""
Structural helpers over AstNode trees.
"""
import itertools
from typing import Dict, Iterable, List, Optional, Set

from src.domain.entities.ast_node import AstNode, NodeKind as K

# kinds whose first child is an IdentifierList of bound names
BINDER_KINDS = frozenset({K.FORALL, K.EXISTS, K.COMPREHENSION, K.LAMBDA, K.ANY})

_fresh_ids = itertools.count(1)


def bound_names(node: AstNode) -> List[str]:
    """Names bound by a binder node, in declaration order."""
    if node.kind not in BINDER_KINDS:
        return []
    return [child.payload for child in node.children[0].children]


def free_identifiers(node: AstNode, bound: Optional[Set[str]] = None) -> Set[str]:
    """Identifiers occurring in ``node`` that no enclosing binder captures."""
    bound = bound or set()
    if node.kind == K.IDENTIFIER:
        return set() if node.payload in bound else {node.payload}
    if node.kind in BINDER_KINDS:
        inner = bound | set(bound_names(node))
        result: Set[str] = set()
        for child in node.children[1:]:
            result |= free_identifiers(child, inner)
        return result
    result = set()
    for child in node.children:
        result |= free_identifiers(child, bound)
    return result


def conjuncts(node: AstNode) -> List[AstNode]:
    """Flatten nested conjunctions into their top-level conjuncts."""
    if node.kind == K.CONJUNCT:
        return conjuncts(node.children[0]) + conjuncts(node.children[1])
    return [node]


def conjoin(predicates: Iterable[AstNode]) -> Optional[AstNode]:
    """Left-nested conjunction of ``predicates``; None for an empty list."""
    result = None
    for predicate in predicates:
        if result is None:
            result = predicate
        else:
            span = result.span.merge(predicate.span) if result.span and predicate.span else None
            result = AstNode(K.CONJUNCT, [result, predicate], span=span)
    return result


def clone(node: AstNode) -> AstNode:
    """Deep copy without type annotations."""
    return AstNode(node.kind, [clone(c) for c in node.children], node.payload, node.span)


def fresh_name(base: str) -> str:
    return f"{base}__{next(_fresh_ids)}"


def substitute_identifiers(node: AstNode, mapping: Dict[str, AstNode]) -> AstNode:
    """
    Replace free identifiers by copies of the mapped trees.

    Bound names that would capture a free identifier of a replacement are
    renamed first, so the result means the same as a textual substitution
    into fresh variables.
    """
    if node.kind == K.IDENTIFIER:
        if node.payload in mapping:
            return clone(mapping[node.payload])
        return clone(node)
    if node.kind in BINDER_KINDS:
        names = bound_names(node)
        inner = {k: v for k, v in mapping.items() if k not in names}
        captured: Set[str] = set()
        for replacement in inner.values():
            captured |= free_identifiers(replacement)
        renames = {name: fresh_name(name) for name in names if name in captured}
        ids = node.children[0]
        new_ids = AstNode(K.IDENTIFIER_LIST, [
            AstNode(K.IDENTIFIER, payload=renames.get(c.payload, c.payload), span=c.span)
            for c in ids.children
        ], span=ids.span)
        rest = node.children[1:]
        if renames:
            renaming = {old: AstNode(K.IDENTIFIER, payload=new) for old, new in renames.items()}
            rest = [substitute_identifiers(child, renaming) for child in rest]
        rest = [substitute_identifiers(child, inner) for child in rest]
        return AstNode(node.kind, [new_ids] + rest, node.payload, node.span)
    return AstNode(node.kind, [substitute_identifiers(c, mapping) for c in node.children],
                   node.payload, node.span)


def contains_kind(node: AstNode, kind: K) -> bool:
    return any(n.kind == kind for n in node.walk())


def written_variables(node: AstNode) -> Set[str]:
    """Variables a substitution may assign."""
    written: Set[str] = set()
    for n in node.walk():
        if n.kind == K.ASSIGN:
            for target in n.children[0].children:
                if target.kind == K.FUNCTION_APPLICATION:
                    target = target.children[0]
                written.add(target.payload)
        elif n.kind in (K.BECOMES_ELEMENT_OF, K.BECOMES_SUCH_THAT):
            written.update(c.payload for c in n.children[0].children)
    return written
