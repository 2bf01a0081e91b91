"""
Abstract syntax tree for the supported B subset.

Every construct is an ``AstNode`` tagged with a ``NodeKind``. Child arity is
fixed per kind (see ``ARITY``); variadic kinds give a minimum count instead.
Whole machines are held in ``MachineAst`` rather than as nodes.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from src.domain.entities.source_span import SourceSpan
from src.domain.exceptions import MachineValidationError


class NodeKind(str, Enum):
    """One tag per supported B construct."""
    # helpers
    IDENTIFIER_LIST = "IdentifierList"
    EXPRESSION_LIST = "ExpressionList"
    DEFINITION_CALL = "DefinitionCall"

    # predicates
    CONJUNCT = "ConjunctPredicate"
    DISJUNCT = "DisjunctPredicate"
    IMPLICATION = "ImplicationPredicate"
    EQUIVALENCE = "EquivalencePredicate"
    NEGATION = "NegationPredicate"
    FORALL = "ForallPredicate"
    EXISTS = "ExistsPredicate"
    EQUAL = "EqualPredicate"
    NOT_EQUAL = "NotEqualPredicate"
    LESS = "LessPredicate"
    LESS_EQUAL = "LessEqualPredicate"
    GREATER = "GreaterPredicate"
    GREATER_EQUAL = "GreaterEqualPredicate"
    MEMBER = "MemberPredicate"
    NOT_MEMBER = "NotMemberPredicate"
    SUBSET = "SubsetPredicate"
    STRICT_SUBSET = "StrictSubsetPredicate"
    NOT_SUBSET = "NotSubsetPredicate"
    NOT_STRICT_SUBSET = "NotStrictSubsetPredicate"
    TRUTH = "TruthPredicate"
    FALSITY = "FalsityPredicate"

    # scalar expressions
    INTEGER_LITERAL = "IntegerLiteral"
    STRING_LITERAL = "StringLiteral"
    BOOLEAN_LITERAL = "BooleanLiteral"
    IDENTIFIER = "IdentifierExpr"
    BUILTIN_SET = "BuiltinSetExpr"
    MAXINT = "MaxIntExpr"
    MININT = "MinIntExpr"
    ADD = "AddExpr"
    MINUS_OR_SET_SUBTRACT = "MinusOrSetSubtractExpr"
    MULT_OR_CART = "MultOrCartExpr"
    MULT = "MultExpr"
    CART = "CartExpr"
    DIV = "DivExpr"
    MOD = "ModExpr"
    POWER = "PowerExpr"
    UNARY_MINUS = "UnaryMinusExpr"
    SUCC = "SuccExpr"
    PRED = "PredExpr"
    BOOL_OF = "BoolExpr"

    # sets
    EMPTY_SET = "EmptySetExpr"
    SET_EXTENSION = "SetExtensionExpr"
    INTERVAL = "IntervalExpr"
    POW = "PowSetExpr"
    POW1 = "Pow1SetExpr"
    FIN = "FinSetExpr"
    FIN1 = "Fin1SetExpr"
    UNION = "UnionExpr"
    INTERSECTION = "IntersectionExpr"
    CARD = "CardExpr"
    MIN = "MinExpr"
    MAX = "MaxExpr"
    COMPREHENSION = "ComprehensionSetExpr"
    LAMBDA = "LambdaExpr"

    # relations and functions
    COUPLE = "CoupleExpr"
    RELATIONS = "RelationsExpr"
    DOMAIN = "DomainExpr"
    RANGE = "RangeExpr"
    REVERSE = "ReverseExpr"
    IMAGE = "ImageExpr"
    COMPOSITION = "CompositionExpr"
    OVERWRITE = "OverwriteExpr"
    DOMAIN_RESTRICTION = "DomainRestrictionExpr"
    RANGE_RESTRICTION = "RangeRestrictionExpr"
    DOMAIN_SUBTRACTION = "DomainSubtractionExpr"
    RANGE_SUBTRACTION = "RangeSubtractionExpr"
    PARTIAL_FUNCTION = "PartialFunctionExpr"
    TOTAL_FUNCTION = "TotalFunctionExpr"
    PARTIAL_INJECTION = "PartialInjectionExpr"
    TOTAL_INJECTION = "TotalInjectionExpr"
    PARTIAL_SURJECTION = "PartialSurjectionExpr"
    TOTAL_SURJECTION = "TotalSurjectionExpr"
    TOTAL_BIJECTION = "TotalBijectionExpr"
    FUNCTION_APPLICATION = "FunctionApplicationExpr"

    # sequences
    EMPTY_SEQUENCE = "EmptySequenceExpr"
    SEQUENCE_EXTENSION = "SequenceExtensionExpr"
    SIZE = "SizeExpr"
    CONCAT = "ConcatExpr"
    FIRST = "FirstExpr"
    LAST = "LastExpr"
    FRONT = "FrontExpr"
    TAIL = "TailExpr"
    REV = "RevExpr"
    SEQ = "SeqExpr"
    SEQ1 = "Seq1Expr"
    ISEQ = "IseqExpr"

    # substitutions
    SKIP = "SkipSubst"
    BLOCK = "BlockSubst"
    ASSIGN = "AssignSubst"
    BECOMES_ELEMENT_OF = "BecomesElementOfSubst"
    BECOMES_SUCH_THAT = "BecomesSuchThatSubst"
    SEQUENCE = "SequenceSubst"
    PARALLEL = "ParallelSubst"
    PRECONDITION = "PreconditionSubst"
    IF = "IfSubst"
    SELECT = "SelectSubst"
    CHOICE = "ChoiceSubst"
    ANY = "AnySubst"


class UnitVariant(str, Enum):
    """Kinds of top-level parse unit."""
    PREDICATE = "PredicateUnit"
    EXPRESSION = "ExpressionUnit"
    SUBSTITUTION = "SubstitutionUnit"
    MACHINE = "MachineUnit"


K = NodeKind

PREDICATE_KINDS = frozenset({
    K.CONJUNCT, K.DISJUNCT, K.IMPLICATION, K.EQUIVALENCE, K.NEGATION,
    K.FORALL, K.EXISTS, K.EQUAL, K.NOT_EQUAL, K.LESS, K.LESS_EQUAL,
    K.GREATER, K.GREATER_EQUAL, K.MEMBER, K.NOT_MEMBER, K.SUBSET,
    K.STRICT_SUBSET, K.NOT_SUBSET, K.NOT_STRICT_SUBSET, K.TRUTH, K.FALSITY,
})

SUBSTITUTION_KINDS = frozenset({
    K.SKIP, K.BLOCK, K.ASSIGN, K.BECOMES_ELEMENT_OF, K.BECOMES_SUCH_THAT,
    K.SEQUENCE, K.PARALLEL, K.PRECONDITION, K.IF, K.SELECT, K.CHOICE, K.ANY,
})

HELPER_KINDS = frozenset({K.IDENTIFIER_LIST, K.EXPRESSION_LIST, K.DEFINITION_CALL})

EXPRESSION_KINDS = frozenset(
    kind for kind in NodeKind
    if kind not in PREDICATE_KINDS | SUBSTITUTION_KINDS | HELPER_KINDS
)

FUNCTION_ARROW_KINDS = frozenset({
    K.PARTIAL_FUNCTION, K.TOTAL_FUNCTION, K.PARTIAL_INJECTION,
    K.TOTAL_INJECTION, K.PARTIAL_SURJECTION, K.TOTAL_SURJECTION,
    K.TOTAL_BIJECTION,
})

_LEAVES = (
    K.TRUTH, K.FALSITY, K.INTEGER_LITERAL, K.STRING_LITERAL, K.BOOLEAN_LITERAL,
    K.IDENTIFIER, K.BUILTIN_SET, K.MAXINT, K.MININT, K.EMPTY_SET,
    K.EMPTY_SEQUENCE, K.SKIP,
)
_UNARY = (
    K.NEGATION, K.UNARY_MINUS, K.SUCC, K.PRED, K.BOOL_OF, K.POW, K.POW1,
    K.FIN, K.FIN1, K.CARD, K.MIN, K.MAX, K.DOMAIN, K.RANGE, K.REVERSE,
    K.SIZE, K.FIRST, K.LAST, K.FRONT, K.TAIL, K.REV, K.SEQ, K.SEQ1, K.ISEQ,
    K.BLOCK,
)
_VARIADIC = {
    K.IDENTIFIER_LIST: 1, K.EXPRESSION_LIST: 1, K.DEFINITION_CALL: 0,
    K.SET_EXTENSION: 1, K.SEQUENCE_EXTENSION: 1, K.CHOICE: 1,
    K.IF: 2, K.SELECT: 2,
}
_TERNARY = (K.LAMBDA, K.ANY)

# kind -> exact child count, or (minimum, None) for variadic kinds
ARITY: Dict[NodeKind, Union[int, Tuple[int, None]]] = {}
for _kind in NodeKind:
    if _kind in _VARIADIC:
        ARITY[_kind] = (_VARIADIC[_kind], None)
    elif _kind in _LEAVES:
        ARITY[_kind] = 0
    elif _kind in _UNARY:
        ARITY[_kind] = 1
    elif _kind in _TERNARY:
        ARITY[_kind] = 3
    else:
        ARITY[_kind] = 2


def arity_ok(kind: NodeKind, count: int) -> bool:
    """Check a child count against the arity table."""
    expected = ARITY[kind]
    if isinstance(expected, tuple):
        return count >= expected[0]
    return count == expected


@dataclass(eq=False)
class AstNode:
    """
    A node of the abstract syntax tree.

    Equality is structural and ignores spans and inferred types, so a tree
    re-parsed from its pretty-printed form compares equal to the original.
    """
    kind: NodeKind
    children: List["AstNode"] = field(default_factory=list)
    payload: Any = None
    span: Optional[SourceSpan] = None
    inferred_type: Any = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AstNode):
            return NotImplemented
        if self.kind != other.kind or len(self.children) != len(other.children):
            return False
        if type(self.payload) is not type(other.payload) or self.payload != other.payload:
            return False
        return all(a == b for a, b in zip(self.children, other.children))

    __hash__ = None

    def __repr__(self) -> str:
        if self.children:
            inner = ", ".join(repr(child) for child in self.children)
            if self.payload is not None:
                return f"{self.kind.value}[{self.payload!r}]({inner})"
            return f"{self.kind.value}({inner})"
        if self.payload is not None:
            return f"{self.kind.value}({self.payload!r})"
        return self.kind.value

    @property
    def is_predicate(self) -> bool:
        return self.kind in PREDICATE_KINDS

    @property
    def is_expression(self) -> bool:
        return self.kind in EXPRESSION_KINDS

    @property
    def is_substitution(self) -> bool:
        return self.kind in SUBSTITUTION_KINDS

    def walk(self) -> Iterator["AstNode"]:
        """Pre-order traversal of this node and all descendants."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def size(self) -> int:
        return sum(1 for _ in self.walk())


def identifier(name: str, span: Optional[SourceSpan] = None) -> AstNode:
    """Build an IdentifierExpr node."""
    return AstNode(NodeKind.IDENTIFIER, payload=name, span=span)


@dataclass(eq=False)
class ParseUnit:
    """A parsed predicate, expression or substitution."""
    variant: UnitVariant
    root: AstNode

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParseUnit):
            return NotImplemented
        return self.variant == other.variant and self.root == other.root

    __hash__ = None

    def node_count(self) -> int:
        """Number of nodes including the unit itself."""
        return 1 + self.root.size()


@dataclass(eq=False)
class Definition:
    """A DEFINITIONS macro: ``name(params) == body``."""
    name: str
    params: List[str]
    body: AstNode
    span: Optional[SourceSpan] = None

    def __post_init__(self):
        if len(set(self.params)) != len(self.params):
            raise MachineValidationError(
                f"definition {self.name} repeats a parameter name", self.span)


@dataclass(eq=False)
class OperationAst:
    """One entry of the OPERATIONS clause."""
    name: str
    params: List[str]
    body: AstNode
    outputs: List[str] = field(default_factory=list)
    span: Optional[SourceSpan] = None
    param_types: Dict[str, Any] = field(default_factory=dict)

    @property
    def precondition(self) -> Optional[AstNode]:
        """The PRE predicate if the body is a precondition substitution."""
        if self.body.kind == NodeKind.PRECONDITION:
            return self.body.children[0]
        return None


@dataclass(eq=False)
class MachineAst:
    """
    A whole abstract machine.

    ``symbol_types`` is filled by the type checker with the type of every
    constant, variable and set name.
    """
    name: str
    enumerated_sets: Dict[str, List[str]] = field(default_factory=dict)
    deferred_sets: List[str] = field(default_factory=list)
    constants: List[str] = field(default_factory=list)
    properties: Optional[AstNode] = None
    variables: List[str] = field(default_factory=list)
    invariant: Optional[AstNode] = None
    assertions: List[AstNode] = field(default_factory=list)
    definitions: List[Definition] = field(default_factory=list)
    initialisation: Optional[AstNode] = None
    operations: List[OperationAst] = field(default_factory=list)
    span: Optional[SourceSpan] = None
    symbol_types: Dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        """
        Check the declaration invariants of the machine.

        Raises:
            MachineValidationError: On a duplicate declaration or a
                VARIABLES clause without INVARIANT
        """
        seen = set()
        declared = (list(self.enumerated_sets) + list(self.deferred_sets)
                    + [e for elems in self.enumerated_sets.values() for e in elems]
                    + self.constants + self.variables)
        for name in declared:
            if name in seen:
                raise MachineValidationError(
                    f"{name} is declared more than once", self.span)
            seen.add(name)
        if self.variables and self.invariant is None:
            raise MachineValidationError(
                "a machine with VARIABLES needs an INVARIANT", self.span)
        op_names = [op.name for op in self.operations]
        if len(set(op_names)) != len(op_names):
            raise MachineValidationError("duplicate operation name", self.span)
        for op in self.operations:
            clash = set(op.params) & set(self.variables)
            if clash:
                raise MachineValidationError(
                    f"parameter {sorted(clash)[0]} of {op.name} shadows a variable",
                    op.span)

    def operation(self, name: str) -> Optional[OperationAst]:
        for op in self.operations:
            if op.name == name:
                return op
        return None

    @property
    def set_names(self) -> List[str]:
        return list(self.enumerated_sets) + list(self.deferred_sets)
