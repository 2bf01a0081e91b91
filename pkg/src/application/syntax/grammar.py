"""
Operator tables for the parser and the pretty printer.

Binding powers follow the usual B reference priorities; a larger number
binds tighter. All binary operators are left-associative except ``**``.
Relational composition ``;`` is only recognised inside brackets because at
the top level it is the sequencing of substitutions.
"""
from typing import Dict, NamedTuple

from src.domain.entities.ast_node import NodeKind as K


class Operator(NamedTuple):
    power: int
    kind: K
    right_assoc: bool = False


PREDICATE_BINARY: Dict[str, Operator] = {
    "=>": Operator(30, K.IMPLICATION),
    "&": Operator(40, K.CONJUNCT),
    "or": Operator(40, K.DISJUNCT),
    "<=>": Operator(60, K.EQUIVALENCE),
}

# expression-to-predicate operators; these do not chain
RELATIONS: Dict[str, K] = {
    "=": K.EQUAL,
    "/=": K.NOT_EQUAL,
    "<": K.LESS,
    "<=": K.LESS_EQUAL,
    ">": K.GREATER,
    ">=": K.GREATER_EQUAL,
    ":": K.MEMBER,
    "/:": K.NOT_MEMBER,
    "<:": K.SUBSET,
    "<<:": K.STRICT_SUBSET,
    "/<:": K.NOT_SUBSET,
    "/<<:": K.NOT_STRICT_SUBSET,
}

EXPRESSION_BINARY: Dict[str, Operator] = {
    ";": Operator(20, K.COMPOSITION),
    "<->": Operator(125, K.RELATIONS),
    "+->": Operator(125, K.PARTIAL_FUNCTION),
    "-->": Operator(125, K.TOTAL_FUNCTION),
    ">+>": Operator(125, K.PARTIAL_INJECTION),
    ">->": Operator(125, K.TOTAL_INJECTION),
    "+->>": Operator(125, K.PARTIAL_SURJECTION),
    "-->>": Operator(125, K.TOTAL_SURJECTION),
    ">->>": Operator(125, K.TOTAL_BIJECTION),
    "|->": Operator(160, K.COUPLE),
    "\\/": Operator(160, K.UNION),
    "/\\": Operator(160, K.INTERSECTION),
    "<+": Operator(160, K.OVERWRITE),
    "<|": Operator(160, K.DOMAIN_RESTRICTION),
    "|>": Operator(160, K.RANGE_RESTRICTION),
    "<<|": Operator(160, K.DOMAIN_SUBTRACTION),
    "|>>": Operator(160, K.RANGE_SUBTRACTION),
    "^": Operator(160, K.CONCAT),
    "..": Operator(170, K.INTERVAL),
    "+": Operator(180, K.ADD),
    "-": Operator(180, K.MINUS_OR_SET_SUBTRACT),
    "*": Operator(190, K.MULT_OR_CART),
    "/": Operator(190, K.DIV),
    "mod": Operator(190, K.MOD),
    "**": Operator(200, K.POWER, right_assoc=True),
}

UNARY_MINUS_POWER = 210

# keyword(expression) forms
EXPRESSION_FUNCTIONS: Dict[str, K] = {
    "succ": K.SUCC,
    "pred": K.PRED,
    "POW": K.POW,
    "POW1": K.POW1,
    "FIN": K.FIN,
    "FIN1": K.FIN1,
    "card": K.CARD,
    "min": K.MIN,
    "max": K.MAX,
    "dom": K.DOMAIN,
    "ran": K.RANGE,
    "size": K.SIZE,
    "first": K.FIRST,
    "last": K.LAST,
    "front": K.FRONT,
    "tail": K.TAIL,
    "rev": K.REV,
    "seq": K.SEQ,
    "seq1": K.SEQ1,
    "iseq": K.ISEQ,
}

BUILTIN_SETS = frozenset({
    "NAT", "NAT1", "NATURAL", "NATURAL1", "INT", "INTEGER", "BOOL", "STRING",
})

CLAUSE_KEYWORDS = frozenset({
    "SETS", "CONSTANTS", "CONCRETE_CONSTANTS", "ABSTRACT_CONSTANTS",
    "PROPERTIES", "VARIABLES", "CONCRETE_VARIABLES", "ABSTRACT_VARIABLES",
    "INVARIANT", "ASSERTIONS", "DEFINITIONS", "INITIALISATION",
    "INITIALIZATION", "OPERATIONS",
})

# keywords that open a substitution closed by END
BLOCK_OPENERS = frozenset({"BEGIN", "PRE", "IF", "SELECT", "CHOICE", "ANY"})

# inverse tables used by the pretty printer
BINARY_SYMBOLS: Dict[K, str] = {op.kind: sym for sym, op in EXPRESSION_BINARY.items()}
BINARY_SYMBOLS.update({op.kind: sym for sym, op in PREDICATE_BINARY.items()})
BINARY_SYMBOLS.update({kind: sym for sym, kind in RELATIONS.items()})
BINARY_SYMBOLS[K.MULT] = "*"
BINARY_SYMBOLS[K.CART] = "*"

FUNCTION_KEYWORDS: Dict[K, str] = {kind: word for word, kind in EXPRESSION_FUNCTIONS.items()}
