"""
Render AST nodes back to B concrete syntax.

Every operand that is itself an operator application is parenthesized, so
the output re-parses to the same tree without consulting priorities.
"""
from src.application.syntax.grammar import BINARY_SYMBOLS, FUNCTION_KEYWORDS
from src.domain.entities.ast_node import AstNode, NodeKind as K, ParseUnit

_COMPOUND = frozenset(BINARY_SYMBOLS) - {K.COMPOSITION} | {K.UNARY_MINUS}


def pretty_print(node) -> str:
    """Return B text for a node or a parse unit."""
    if isinstance(node, ParseUnit):
        node = node.root
    return _render(node)


def _operand(node: AstNode) -> str:
    text = _render(node)
    return f"({text})" if node.kind in _COMPOUND else text


def _binder_ids(ids: AstNode) -> str:
    names = [c.payload for c in ids.children]
    return names[0] if len(names) == 1 else "(" + ", ".join(names) + ")"


def _plain_ids(ids: AstNode) -> str:
    return ", ".join(_render(c) for c in ids.children)


def _render(node: AstNode) -> str:
    kind = node.kind
    c = node.children

    if kind == K.COMPOSITION:
        return f"({_operand(c[0])} ; {_operand(c[1])})"
    if kind in BINARY_SYMBOLS:
        return f"{_operand(c[0])} {BINARY_SYMBOLS[kind]} {_operand(c[1])}"
    if kind in FUNCTION_KEYWORDS:
        return f"{FUNCTION_KEYWORDS[kind]}({_render(c[0])})"

    if kind == K.INTEGER_LITERAL:
        return str(node.payload)
    if kind == K.STRING_LITERAL:
        return f'"{node.payload}"'
    if kind == K.BOOLEAN_LITERAL:
        return "TRUE" if node.payload else "FALSE"
    if kind in (K.IDENTIFIER, K.BUILTIN_SET):
        return node.payload
    if kind == K.MAXINT:
        return "MAXINT"
    if kind == K.MININT:
        return "MININT"
    if kind == K.EMPTY_SET:
        return "{}"
    if kind == K.EMPTY_SEQUENCE:
        return "[]"
    if kind == K.TRUTH:
        return "btrue"
    if kind == K.FALSITY:
        return "bfalse"

    if kind == K.NEGATION:
        return f"not({_render(c[0])})"
    if kind == K.FORALL:
        return f"!{_binder_ids(c[0])}.({_render(c[1])})"
    if kind == K.EXISTS:
        return f"#{_binder_ids(c[0])}.({_render(c[1])})"
    if kind == K.UNARY_MINUS:
        return f"-({_render(c[0])})"
    if kind == K.BOOL_OF:
        return f"bool({_render(c[0])})"
    if kind == K.SET_EXTENSION:
        return "{" + ", ".join(_render(x) for x in c) + "}"
    if kind == K.SEQUENCE_EXTENSION:
        return "[" + ", ".join(_render(x) for x in c) + "]"
    if kind == K.COMPREHENSION:
        return "{" + f"{_plain_ids(c[0])} | {_render(c[1])}" + "}"
    if kind == K.LAMBDA:
        return f"%{_binder_ids(c[0])}.({_render(c[1])} | {_render(c[2])})"
    if kind == K.REVERSE:
        return f"{_operand(c[0])}~"
    if kind == K.FUNCTION_APPLICATION:
        return f"{_operand(c[0])}({_render(c[1])})"
    if kind == K.IMAGE:
        return f"{_operand(c[0])}[{_render(c[1])}]"
    if kind == K.DEFINITION_CALL:
        if not c:
            return node.payload
        return f"{node.payload}(" + ", ".join(_render(x) for x in c) + ")"
    if kind in (K.IDENTIFIER_LIST, K.EXPRESSION_LIST):
        return ", ".join(_render(x) for x in c)

    # substitutions
    if kind == K.SKIP:
        return "skip"
    if kind == K.BLOCK:
        return f"BEGIN {_render(c[0])} END"
    if kind == K.ASSIGN:
        return f"{_render(c[0])} := {_render(c[1])}"
    if kind == K.BECOMES_ELEMENT_OF:
        return f"{_render(c[0])} :: {_render(c[1])}"
    if kind == K.BECOMES_SUCH_THAT:
        return f"{_render(c[0])} : ({_render(c[1])})"
    if kind == K.SEQUENCE:
        return f"{_render(c[0])} ; {_render(c[1])}"
    if kind == K.PARALLEL:
        return f"{_render(c[0])} || {_render(c[1])}"
    if kind == K.PRECONDITION:
        return f"PRE {_render(c[0])} THEN {_render(c[1])} END"
    if kind in (K.IF, K.SELECT):
        return _render_guarded(node)
    if kind == K.CHOICE:
        return "CHOICE " + " OR ".join(_render(x) for x in c) + " END"
    if kind == K.ANY:
        return f"ANY {_plain_ids(c[0])} WHERE {_render(c[1])} THEN {_render(c[2])} END"
    raise ValueError(f"cannot print {kind.value}")


def _render_guarded(node: AstNode) -> str:
    opener, continuation = ("IF", "ELSIF") if node.kind == K.IF else ("SELECT", "WHEN")
    c = node.children
    parts = []
    for i in range(0, len(c) - 1, 2):
        keyword = opener if i == 0 else continuation
        parts.append(f"{keyword} {_render(c[i])} THEN {_render(c[i + 1])}")
    if len(c) % 2 == 1:
        parts.append(f"ELSE {_render(c[-1])}")
    return " ".join(parts) + " END"
