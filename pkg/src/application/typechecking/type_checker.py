"""
Unification-based type inference for B.

Inference runs in two passes over a copy of the input. The first pass walks
the tree, gives every identifier and expression a type (fresh variables
where nothing is known yet) and records equality constraints. The second
pass solves the constraints, settles each ``*`` as multiplication or
cartesian product once its operand types are known, and writes the
resolved types back onto the nodes. Because nothing is decided during the
walk, the order of conjuncts does not matter.
"""
import copy
import itertools
import logging
from typing import Dict, List, Optional, Tuple

from src.application.syntax.pretty_printer import pretty_print
from src.application.typechecking.type_context import TypeContext
from src.application.typechecking.unification import unify
from src.domain.entities.ast_node import AstNode, MachineAst, NodeKind as K, ParseUnit, UnitVariant
from src.domain.entities.btypes import (
    BOOL,
    INTEGER,
    STRING,
    BType,
    DeferredSetType,
    IntegerType,
    PairType,
    SetType,
    TypeSubstitution,
    TypeVariable,
    is_resolved,
    type_variables,
)
from src.domain.entities.source_span import SourceSpan
from src.domain.exceptions import TypeCheckError, TypeMismatch, UnresolvedTypeError

logger = logging.getLogger(__name__)

_INTEGER_BINARY = frozenset({K.ADD, K.DIV, K.MOD, K.POWER})
_INTEGER_UNARY = frozenset({K.UNARY_MINUS, K.SUCC, K.PRED})
_INTEGER_COMPARISONS = frozenset({K.LESS, K.LESS_EQUAL, K.GREATER, K.GREATER_EQUAL})
_SUBSET_TESTS = frozenset({K.SUBSET, K.STRICT_SUBSET, K.NOT_SUBSET, K.NOT_STRICT_SUBSET})
_CONNECTIVES = frozenset({K.CONJUNCT, K.DISJUNCT, K.IMPLICATION, K.EQUIVALENCE})
_RELATION_SPACES = frozenset({
    K.RELATIONS, K.PARTIAL_FUNCTION, K.TOTAL_FUNCTION, K.PARTIAL_INJECTION,
    K.TOTAL_INJECTION, K.PARTIAL_SURJECTION, K.TOTAL_SURJECTION, K.TOTAL_BIJECTION,
})
_BUILTIN_SET_TYPES = {
    "NAT": SetType(INTEGER), "NAT1": SetType(INTEGER), "NATURAL": SetType(INTEGER),
    "NATURAL1": SetType(INTEGER), "INT": SetType(INTEGER), "INTEGER": SetType(INTEGER),
    "BOOL": SetType(BOOL), "STRING": SetType(STRING),
}


def tuple_type(types: List[BType]) -> BType:
    """Left-nested pair type of several identifiers' types."""
    result = types[0]
    for t in types[1:]:
        result = PairType(result, t)
    return result


class TypeChecker:
    """
    Infer types for one parse unit or one machine.

    A checker instance is single-use: create a new one per input.
    """

    def __init__(self, context: Optional[TypeContext] = None, allow_free: bool = True):
        """
        Initialize the checker.

        Args:
            context: Known identifiers and given sets (empty when omitted)
            allow_free: Whether undeclared identifiers get fresh types
                instead of raising
        """
        self.context = context or TypeContext()
        self.allow_free = allow_free
        self.substitution = TypeSubstitution()
        self.free_types: Dict[str, BType] = {}
        self._ids = itertools.count(1)
        self._constraints: List[Tuple[BType, BType, Optional[SourceSpan]]] = []
        self._annotations: List[Tuple[AstNode, BType]] = []
        self._products: List[Tuple[AstNode, BType, BType, BType]] = []
        self._overloaded_minus: List[Tuple[AstNode, BType]] = []
        self._empty_elements: List[TypeVariable] = []

    # public entry points

    def infer(self, unit: ParseUnit, expected: Optional[BType] = None) -> ParseUnit:
        """
        Return a typed copy of ``unit``.

        Args:
            unit: A definition-free parse unit
            expected: Required type of an expression unit, if any

        Raises:
            TypeMismatch: On conflicting types
            UnresolvedTypeError: If some type stays unknown
        """
        typed = copy.deepcopy(unit)
        if typed.variant == UnitVariant.PREDICATE:
            self._predicate(typed.root)
        elif typed.variant == UnitVariant.EXPRESSION:
            found = self._expression(typed.root)
            if expected is not None:
                self._constrain(expected, found, typed.root.span)
        else:
            self._substitution(typed.root)
        self._solve()
        self._default_empty_elements(list(self.free_types.values()))
        self._annotate()
        return typed

    @property
    def identifier_types(self) -> Dict[str, BType]:
        """Resolved types of the free identifiers met while inferring a unit."""
        return {name: self.substitution.apply(t) for name, t in self.free_types.items()}

    def check_machine(self, machine: MachineAst) -> MachineAst:
        """
        Return a typed copy of a definition-free machine.

        Fills ``symbol_types`` with the type of every set, constant and
        variable, and ``param_types`` of each operation.

        Raises:
            TypeCheckError: On an unknown identifier or a typing conflict
            UnresolvedTypeError: If a constant or variable cannot be typed
        """
        typed = copy.deepcopy(machine)
        context = self.context
        for name, elements in typed.enumerated_sets.items():
            context.declare_enumerated_set(name, elements)
        for name in typed.deferred_sets:
            context.declare_deferred_set(name)
        symbols: Dict[str, BType] = {}
        for name in typed.constants + typed.variables:
            symbols[name] = self._fresh()
            context.declare(name, symbols[name])

        if typed.properties is not None:
            self._predicate(typed.properties)
        if typed.invariant is not None:
            self._predicate(typed.invariant)
        for assertion in typed.assertions:
            self._predicate(assertion)
        if typed.initialisation is not None:
            self._substitution(typed.initialisation)
        operation_types = []
        for operation in typed.operations:
            bindings = {name: self._fresh() for name in operation.params + operation.outputs}
            with context.scope(bindings):
                self._substitution(operation.body)
            operation_types.append((operation, bindings))

        self._solve()
        for name, t in symbols.items():
            resolved = self.substitution.apply(t)
            if not is_resolved(resolved):
                raise UnresolvedTypeError(f"cannot resolve the type of {name}", typed.span)
        self._default_empty_elements(
            [t for _, bindings in operation_types for t in bindings.values()])
        self._annotate()

        typed.symbol_types = {name: context.lookup(name) for name in typed.set_names}
        typed.symbol_types.update({n: self.substitution.apply(t) for n, t in symbols.items()})
        for operation, bindings in operation_types:
            operation.param_types = {}
            for name, t in bindings.items():
                resolved = self.substitution.apply(t)
                if not is_resolved(resolved):
                    raise UnresolvedTypeError(
                        f"cannot resolve the type of parameter {name} of {operation.name}",
                        operation.span)
                operation.param_types[name] = resolved
        logger.debug(f"Typed machine {typed.name}: {len(symbols)} identifiers")
        return typed

    # constraint generation

    def _fresh(self) -> TypeVariable:
        return TypeVariable(next(self._ids))

    def _constrain(self, expected: BType, found: BType, span: Optional[SourceSpan]) -> None:
        self._constraints.append((expected, found, span))

    def _element_of(self, set_type: BType, span) -> TypeVariable:
        element = self._fresh()
        self._constrain(SetType(element), set_type, span)
        return element

    def _relation_of(self, t: BType, span) -> Tuple[TypeVariable, TypeVariable]:
        left, right = self._fresh(), self._fresh()
        self._constrain(SetType(PairType(left, right)), t, span)
        return left, right

    def _bind(self, ids: AstNode) -> Tuple[Dict[str, BType], List[BType]]:
        bindings: Dict[str, BType] = {}
        types: List[BType] = []
        for identifier in ids.children:
            t = self._fresh()
            bindings[identifier.payload] = t
            types.append(t)
            self._annotations.append((identifier, t))
        return bindings, types

    def _predicate(self, node: AstNode) -> None:
        kind = node.kind
        c = node.children
        if kind in _CONNECTIVES:
            self._predicate(c[0])
            self._predicate(c[1])
        elif kind == K.NEGATION:
            self._predicate(c[0])
        elif kind in (K.FORALL, K.EXISTS):
            bindings, _ = self._bind(c[0])
            with self.context.scope(bindings):
                self._predicate(c[1])
        elif kind in (K.EQUAL, K.NOT_EQUAL):
            self._constrain(self._expression(c[0]), self._expression(c[1]), node.span)
        elif kind in _INTEGER_COMPARISONS:
            self._constrain(INTEGER, self._expression(c[0]), c[0].span)
            self._constrain(INTEGER, self._expression(c[1]), c[1].span)
        elif kind in (K.MEMBER, K.NOT_MEMBER):
            element = self._expression(c[0])
            self._constrain(SetType(element), self._expression(c[1]), node.span)
        elif kind in _SUBSET_TESTS:
            left = self._expression(c[0])
            self._element_of(left, c[0].span)
            self._constrain(left, self._expression(c[1]), node.span)
        elif kind in (K.TRUTH, K.FALSITY):
            pass
        elif kind == K.DEFINITION_CALL:
            raise TypeCheckError(f"definition {node.payload} was not expanded", node.span)
        else:
            raise TypeCheckError(f"expected a predicate, found {kind.value}", node.span)

    def _expression(self, node: AstNode) -> BType:
        t = self._expression_type(node)
        self._annotations.append((node, t))
        return t

    def _expression_type(self, node: AstNode) -> BType:
        kind = node.kind
        c = node.children
        span = node.span

        if kind in (K.INTEGER_LITERAL, K.MAXINT, K.MININT):
            return INTEGER
        if kind == K.STRING_LITERAL:
            return STRING
        if kind == K.BOOLEAN_LITERAL:
            return BOOL
        if kind == K.IDENTIFIER:
            return self._identifier(node)
        if kind == K.BUILTIN_SET:
            return _BUILTIN_SET_TYPES[node.payload]

        if kind in _INTEGER_BINARY:
            self._constrain(INTEGER, self._expression(c[0]), c[0].span)
            self._constrain(INTEGER, self._expression(c[1]), c[1].span)
            return INTEGER
        if kind in _INTEGER_UNARY:
            self._constrain(INTEGER, self._expression(c[0]), c[0].span)
            return INTEGER
        if kind == K.MINUS_OR_SET_SUBTRACT:
            left = self._expression(c[0])
            self._constrain(left, self._expression(c[1]), span)
            self._overloaded_minus.append((node, left))
            return left
        if kind in (K.MULT_OR_CART, K.MULT, K.CART):
            left, right = self._expression(c[0]), self._expression(c[1])
            result = self._fresh()
            if kind == K.MULT:
                for t in (left, right, result):
                    self._constrain(INTEGER, t, span)
            elif kind == K.CART:
                a, b = self._element_of(left, span), self._element_of(right, span)
                self._constrain(SetType(PairType(a, b)), result, span)
            else:
                self._products.append((node, left, right, result))
            return result
        if kind == K.BOOL_OF:
            self._predicate(c[0])
            return BOOL

        if kind == K.EMPTY_SET:
            element = self._fresh()
            self._empty_elements.append(element)
            return SetType(element)
        if kind == K.EMPTY_SEQUENCE:
            element = self._fresh()
            self._empty_elements.append(element)
            return SetType(PairType(INTEGER, element))
        if kind in (K.SET_EXTENSION, K.SEQUENCE_EXTENSION):
            element = self._fresh()
            for child in c:
                self._constrain(element, self._expression(child), child.span)
            if kind == K.SET_EXTENSION:
                return SetType(element)
            return SetType(PairType(INTEGER, element))
        if kind == K.INTERVAL:
            self._constrain(INTEGER, self._expression(c[0]), c[0].span)
            self._constrain(INTEGER, self._expression(c[1]), c[1].span)
            return SetType(INTEGER)
        if kind in (K.POW, K.POW1, K.FIN, K.FIN1):
            operand = self._expression(c[0])
            self._element_of(operand, span)
            return SetType(operand)
        if kind in (K.UNION, K.INTERSECTION):
            left = self._expression(c[0])
            self._element_of(left, span)
            self._constrain(left, self._expression(c[1]), span)
            return left
        if kind == K.CARD:
            self._element_of(self._expression(c[0]), span)
            return INTEGER
        if kind in (K.MIN, K.MAX):
            self._constrain(SetType(INTEGER), self._expression(c[0]), span)
            return INTEGER
        if kind == K.COMPREHENSION:
            bindings, types = self._bind(c[0])
            with self.context.scope(bindings):
                self._predicate(c[1])
            return SetType(tuple_type(types))
        if kind == K.LAMBDA:
            bindings, types = self._bind(c[0])
            with self.context.scope(bindings):
                self._predicate(c[1])
                result = self._expression(c[2])
            return SetType(PairType(tuple_type(types), result))

        if kind == K.COUPLE:
            return PairType(self._expression(c[0]), self._expression(c[1]))
        if kind in _RELATION_SPACES:
            a = self._element_of(self._expression(c[0]), span)
            b = self._element_of(self._expression(c[1]), span)
            return SetType(SetType(PairType(a, b)))
        if kind in (K.DOMAIN, K.RANGE, K.REVERSE):
            a, b = self._relation_of(self._expression(c[0]), span)
            if kind == K.DOMAIN:
                return SetType(a)
            if kind == K.RANGE:
                return SetType(b)
            return SetType(PairType(b, a))
        if kind == K.IMAGE:
            a, b = self._relation_of(self._expression(c[0]), span)
            self._constrain(SetType(a), self._expression(c[1]), c[1].span)
            return SetType(b)
        if kind == K.COMPOSITION:
            a, b = self._relation_of(self._expression(c[0]), span)
            b2, d = self._relation_of(self._expression(c[1]), span)
            self._constrain(b, b2, span)
            return SetType(PairType(a, d))
        if kind == K.OVERWRITE:
            left = self._expression(c[0])
            self._relation_of(left, span)
            self._constrain(left, self._expression(c[1]), span)
            return left
        if kind in (K.DOMAIN_RESTRICTION, K.DOMAIN_SUBTRACTION):
            domain = self._expression(c[0])
            relation = self._expression(c[1])
            a, _ = self._relation_of(relation, span)
            self._constrain(SetType(a), domain, c[0].span)
            return relation
        if kind in (K.RANGE_RESTRICTION, K.RANGE_SUBTRACTION):
            relation = self._expression(c[0])
            _, b = self._relation_of(relation, span)
            self._constrain(SetType(b), self._expression(c[1]), c[1].span)
            return relation
        if kind == K.FUNCTION_APPLICATION:
            a, b = self._relation_of(self._expression(c[0]), span)
            self._constrain(a, self._expression(c[1]), c[1].span)
            return b

        if kind == K.SIZE:
            self._relation_of_sequence(c[0])
            return INTEGER
        if kind in (K.FIRST, K.LAST):
            return self._relation_of_sequence(c[0])
        if kind in (K.FRONT, K.TAIL, K.REV):
            return SetType(PairType(INTEGER, self._relation_of_sequence(c[0])))
        if kind == K.CONCAT:
            element = self._relation_of_sequence(c[0])
            self._constrain(SetType(PairType(INTEGER, element)), self._expression(c[1]), span)
            return SetType(PairType(INTEGER, element))
        if kind in (K.SEQ, K.SEQ1, K.ISEQ):
            element = self._element_of(self._expression(c[0]), span)
            return SetType(SetType(PairType(INTEGER, element)))

        if kind == K.DEFINITION_CALL:
            raise TypeCheckError(f"definition {node.payload} was not expanded", span)
        raise TypeCheckError(f"expected an expression, found {kind.value}", span)

    def _relation_of_sequence(self, node: AstNode) -> BType:
        element = self._fresh()
        self._constrain(SetType(PairType(INTEGER, element)), self._expression(node), node.span)
        return element

    def _identifier(self, node: AstNode) -> BType:
        name = node.payload
        t = self.context.lookup(name)
        if t is None:
            t = self.free_types.get(name)
        if t is None:
            if not self.allow_free:
                raise TypeCheckError(f"unknown identifier {name}", node.span)
            t = self.free_types[name] = self._fresh()
        return t

    def _substitution(self, node: AstNode) -> None:
        kind = node.kind
        c = node.children
        if kind == K.SKIP:
            return
        if kind in (K.BLOCK, K.SEQUENCE, K.PARALLEL, K.CHOICE):
            for child in c:
                self._substitution(child)
        elif kind == K.ASSIGN:
            for target, value in zip(c[0].children, c[1].children):
                self._constrain(self._expression(target), self._expression(value), value.span)
        elif kind == K.BECOMES_ELEMENT_OF:
            targets = [self._expression(t) for t in c[0].children]
            self._constrain(SetType(tuple_type(targets)), self._expression(c[1]), c[1].span)
        elif kind == K.BECOMES_SUCH_THAT:
            for target in c[0].children:
                self._expression(target)
            self._predicate(c[1])
        elif kind == K.PRECONDITION:
            self._predicate(c[0])
            self._substitution(c[1])
        elif kind in (K.IF, K.SELECT):
            for i, child in enumerate(c):
                if i % 2 == 0 and i < len(c) - 1:
                    self._predicate(child)
                else:
                    self._substitution(child)
        elif kind == K.ANY:
            bindings, _ = self._bind(c[0])
            with self.context.scope(bindings):
                self._predicate(c[1])
                self._substitution(c[2])
        elif kind == K.DEFINITION_CALL:
            raise TypeCheckError(f"definition {node.payload} was not expanded", node.span)
        else:
            raise TypeCheckError(f"expected a substitution, found {kind.value}", node.span)

    # solving

    def _solve(self) -> None:
        for expected, found, span in self._constraints:
            unify(expected, found, self.substitution, span)
        self._settle_products()
        for node, t in self._overloaded_minus:
            resolved = self.substitution.apply(t)
            if not isinstance(resolved, (IntegerType, SetType, TypeVariable)):
                raise TypeMismatch("INTEGER or POW(_)", resolved, node.span)

    def _settle_products(self) -> None:
        pending = list(self._products)
        s = self.substitution
        while pending:
            remaining = []
            for node, left, right, result in pending:
                resolved = [s.apply(t) for t in (left, right, result)]
                if any(isinstance(t, IntegerType) for t in resolved):
                    for t in (left, right, result):
                        unify(INTEGER, t, s, node.span)
                    node.kind = K.MULT
                elif any(isinstance(t, SetType) for t in resolved):
                    a, b = self._fresh(), self._fresh()
                    unify(SetType(a), left, s, node.children[0].span)
                    unify(SetType(b), right, s, node.children[1].span)
                    unify(SetType(PairType(a, b)), result, s, node.span)
                    node.kind = K.CART
                else:
                    remaining.append((node, left, right, result))
            if len(remaining) == len(pending):
                raise UnresolvedTypeError(
                    "cannot tell whether * is a multiplication or a cartesian product",
                    remaining[0][0].span)
            pending = remaining

    def _default_empty_elements(self, named: List[BType]) -> None:
        """
        Give INTEGER to element types of ``{}`` and ``<>`` that nothing
        else decides.

        A variable reachable from a free identifier, a machine symbol or an
        operation parameter in ``named`` keeps its unresolved state, so
        ``x = {}`` on its own is still reported. The value of an empty
        literal is the same whatever its element type.
        """
        s = self.substitution
        kept = {v for t in named for v in type_variables(s.apply(t))}
        for element in self._empty_elements:
            for var in list(type_variables(s.apply(element))):
                if var not in kept:
                    s.bind(var, INTEGER)

    def _annotate(self) -> None:
        for node, t in self._annotations:
            resolved = self.substitution.apply(t)
            if not is_resolved(resolved):
                raise UnresolvedTypeError(
                    f"cannot resolve the type of {pretty_print(node)}", node.span)
            node.inferred_type = resolved


def context_for_machine(machine: MachineAst,
                        deferred_elements: Optional[Dict[str, List[str]]] = None) -> TypeContext:
    """
    Context holding a typed machine's sets, elements, constants and variables.

    Args:
        machine: A machine returned by ``check_machine``
        deferred_elements: Names to type as elements of each deferred set
    """
    context = TypeContext()
    for name, elements in machine.enumerated_sets.items():
        context.declare_enumerated_set(name, elements)
    for name in machine.deferred_sets:
        context.declare_deferred_set(name)
        for element in (deferred_elements or {}).get(name, []):
            if context.lookup(element) is None:
                context.declare(element, DeferredSetType(name))
    for name in machine.constants + machine.variables:
        context.declare(name, machine.symbol_types[name])
    return context


def infer(unit, context: Optional[TypeContext] = None):
    """
    Type a parse unit (free identifiers allowed) or a machine (free
    identifiers rejected) and return the typed copy.
    """
    if isinstance(unit, MachineAst):
        return TypeChecker(context, allow_free=False).check_machine(unit)
    return TypeChecker(context).infer(unit)
