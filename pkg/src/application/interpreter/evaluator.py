"""
Tree-walking evaluator for typed B predicates and expressions.

Each node kind has a handler in one of two dispatch tables. Conjunction,
disjunction and implication evaluate their left operand first and skip the
right one when it cannot change the result, so guards such as
``x /= 0 & y / x = 1`` never raise.

Quantified identifiers are bound one after another. The candidates of
each identifier come from ``QuickNarrower``; all candidates of one
quantifier, comprehension or lambda are charged to a single budget of
``max_enum`` values.
"""
import logging
from contextlib import closing
from typing import Any, Callable, Dict, Iterator, List, Optional

from src.application.interpreter.enumeration import Budget, EnumStream
from src.application.interpreter.environment import Environment
from src.application.interpreter.quick_eval import QuickNarrower, split_forall
from src.application.syntax.ast_utils import conjuncts
from src.domain.entities.ast_node import FUNCTION_ARROW_KINDS, AstNode, NodeKind as K
from src.domain.entities.bvalues import (
    IntervalSet,
    UnboundedSet,
    Universe,
    normalize,
    set_contains,
    values_equal,
)
from src.domain.exceptions import (
    EvaluationError,
    UnknownIdentifier,
    WDKind,
    WellDefinednessError,
)

logger = logging.getLogger(__name__)

BOOL_SET = frozenset({False, True})


def b_div(a: int, b: int) -> int:
    """Integer division truncating toward zero."""
    if b == 0:
        raise WellDefinednessError(WDKind.DIVISION_BY_ZERO, f"{a} / 0")
    quotient = abs(a) // abs(b)
    return quotient if (a >= 0) == (b > 0) else -quotient


def b_mod(a: int, b: int) -> int:
    if b == 0:
        raise WellDefinednessError(WDKind.MODULO_BY_ZERO, f"{a} mod 0")
    if a < 0 or b < 0:
        raise WellDefinednessError(WDKind.INVALID_MODULO, f"{a} mod {b}")
    return a % b


def b_power(a: int, b: int) -> int:
    if b < 0:
        raise WellDefinednessError(WDKind.NEGATIVE_EXPONENT, f"{a} ** {b}")
    return a ** b


def tuple_value(names: List[str], binding: Dict[str, Any]) -> Any:
    """Left-nested pair of the bound values: ``x |-> y |-> z`` is ``((x, y), z)``."""
    value = binding[names[0]]
    for name in names[1:]:
        value = (value, binding[name])
    return value


class Interpreter:
    """
    Evaluates predicates and expressions against an environment.

    Args:
        env: Bindings, limits and set algebra to evaluate with
    """

    def __init__(self, env: Environment):
        self.env = env
        self.config = env.config
        self.algebra = env.algebra
        self.narrower = QuickNarrower(self)
        self._predicates: Dict[K, Callable[[AstNode], bool]] = {
            K.CONJUNCT: lambda n: self.eval_predicate(n.children[0]) and self.eval_predicate(n.children[1]),
            K.DISJUNCT: lambda n: self.eval_predicate(n.children[0]) or self.eval_predicate(n.children[1]),
            K.IMPLICATION: lambda n: not self.eval_predicate(n.children[0]) or self.eval_predicate(n.children[1]),
            K.EQUIVALENCE: lambda n: self.eval_predicate(n.children[0]) == self.eval_predicate(n.children[1]),
            K.NEGATION: lambda n: not self.eval_predicate(n.children[0]),
            K.FORALL: self.eval_quantifier,
            K.EXISTS: self.eval_quantifier,
            K.TRUTH: lambda n: True,
            K.FALSITY: lambda n: False,
            K.EQUAL: lambda n: values_equal(*self._operands(n)),
            K.NOT_EQUAL: lambda n: not values_equal(*self._operands(n)),
            K.LESS: lambda n: self._compare(n, lambda a, b: a < b),
            K.LESS_EQUAL: lambda n: self._compare(n, lambda a, b: a <= b),
            K.GREATER: lambda n: self._compare(n, lambda a, b: a > b),
            K.GREATER_EQUAL: lambda n: self._compare(n, lambda a, b: a >= b),
            K.MEMBER: self._member,
            K.NOT_MEMBER: lambda n: not self._member(n),
            K.SUBSET: lambda n: self.algebra.is_subset(*self._operands(n)),
            K.NOT_SUBSET: lambda n: not self.algebra.is_subset(*self._operands(n)),
            K.STRICT_SUBSET: lambda n: self.algebra.is_strict_subset(*self._operands(n)),
            K.NOT_STRICT_SUBSET: lambda n: not self.algebra.is_strict_subset(*self._operands(n)),
        }
        a = self.algebra
        self._expressions: Dict[K, Callable[[AstNode], Any]] = {
            K.INTEGER_LITERAL: lambda n: n.payload,
            K.STRING_LITERAL: lambda n: n.payload,
            K.BOOLEAN_LITERAL: lambda n: n.payload,
            K.IDENTIFIER: self._identifier,
            K.BUILTIN_SET: self._builtin_set,
            K.MAXINT: lambda n: self.config.maxint,
            K.MININT: lambda n: self.config.minint,
            K.ADD: lambda n: self._arithmetic(n, lambda x, y: x + y),
            K.MINUS_OR_SET_SUBTRACT: lambda n: a.subtract_overloaded(*self._operands(n)),
            K.MULT: lambda n: self._arithmetic(n, lambda x, y: x * y),
            K.CART: lambda n: a.cartesian_product(*self._operands(n)),
            K.MULT_OR_CART: self._mult_or_cart,
            K.DIV: lambda n: self._arithmetic(n, b_div),
            K.MOD: lambda n: self._arithmetic(n, b_mod),
            K.POWER: lambda n: self._arithmetic(n, b_power),
            K.UNARY_MINUS: lambda n: -self.eval_expression(n.children[0]),
            K.SUCC: lambda n: self.eval_expression(n.children[0]) + 1,
            K.PRED: lambda n: self.eval_expression(n.children[0]) - 1,
            K.BOOL_OF: lambda n: self.eval_predicate(n.children[0]),
            K.EMPTY_SET: lambda n: frozenset(),
            K.SET_EXTENSION: lambda n: a.build(self.eval_expression(c) for c in n.children),
            K.INTERVAL: lambda n: a.interval(*self._operands(n)),
            K.POW: lambda n: a.power_set(self._operand(n)),
            K.POW1: lambda n: a.power_set(self._operand(n), non_empty=True),
            K.FIN: lambda n: a.fin_subsets(self._operand(n)),
            K.FIN1: lambda n: a.fin_subsets(self._operand(n), non_empty=True),
            K.UNION: lambda n: a.union(*self._operands(n)),
            K.INTERSECTION: lambda n: a.intersection(*self._operands(n)),
            K.CARD: lambda n: a.card(self._operand(n)),
            K.MIN: lambda n: a.minimum(self._operand(n)),
            K.MAX: lambda n: a.maximum(self._operand(n)),
            K.COMPREHENSION: self.eval_comprehension,
            K.LAMBDA: self.eval_lambda,
            K.COUPLE: lambda n: tuple(normalize(v) for v in self._operands(n)),
            K.RELATIONS: lambda n: a.relation_space(*self._operands(n)),
            K.DOMAIN: lambda n: a.domain(self._operand(n)),
            K.RANGE: lambda n: a.range(self._operand(n)),
            K.REVERSE: lambda n: a.inverse(self._operand(n)),
            K.IMAGE: lambda n: a.image(*self._operands(n)),
            K.COMPOSITION: lambda n: a.compose(*self._operands(n)),
            K.OVERWRITE: lambda n: a.override(*self._operands(n)),
            K.DOMAIN_RESTRICTION: lambda n: a.domain_restrict(*self._operands(n)),
            K.RANGE_RESTRICTION: lambda n: a.range_restrict(*self._operands(n)),
            K.DOMAIN_SUBTRACTION: lambda n: a.domain_subtract(*self._operands(n)),
            K.RANGE_SUBTRACTION: lambda n: a.range_subtract(*self._operands(n)),
            K.FUNCTION_APPLICATION: lambda n: a.apply_function(*self._operands(n)),
            K.EMPTY_SEQUENCE: lambda n: frozenset(),
            K.SEQUENCE_EXTENSION: lambda n: a.sequence([self.eval_expression(c) for c in n.children]),
            K.SIZE: lambda n: a.size(self._operand(n)),
            K.CONCAT: lambda n: a.concat(*self._operands(n)),
            K.FIRST: lambda n: a.first(self._operand(n)),
            K.LAST: lambda n: a.last(self._operand(n)),
            K.FRONT: lambda n: a.front(self._operand(n)),
            K.TAIL: lambda n: a.tail(self._operand(n)),
            K.REV: lambda n: a.rev(self._operand(n)),
            K.SEQ: lambda n: a.sequence_space(self._operand(n), K.SEQ),
            K.SEQ1: lambda n: a.sequence_space(self._operand(n), K.SEQ1),
            K.ISEQ: lambda n: a.sequence_space(self._operand(n), K.ISEQ),
        }
        for arrow in FUNCTION_ARROW_KINDS:
            self._expressions.setdefault(
                arrow, lambda n: a.function_space(*self._operands(n), n.kind))

    # entry points

    def eval_predicate(self, node: AstNode) -> bool:
        """
        Truth value of a typed predicate.

        Raises:
            WellDefinednessError: If a subterm does not denote
            EnumerationError: If a quantifier cannot be enumerated within limits
            UnknownIdentifier: If an identifier is unbound
        """
        handler = self._predicates.get(node.kind)
        if handler is None:
            raise EvaluationError(f"not a predicate: {node.kind.value}", node.span)
        try:
            return handler(node)
        except WellDefinednessError as e:
            if e.span is None:
                raise WellDefinednessError(e.kind, e.detail, node.span) from None
            raise

    def eval_expression(self, node: AstNode) -> Any:
        """Value of a typed expression; raises like ``eval_predicate``."""
        handler = self._expressions.get(node.kind)
        if handler is None:
            raise EvaluationError(f"not an expression: {node.kind.value}", node.span)
        try:
            return handler(node)
        except WellDefinednessError as e:
            if e.span is None:
                raise WellDefinednessError(e.kind, e.detail, node.span) from None
            raise

    # binders

    def bindings(self, ids: AstNode, constraints: List[AstNode],
                 budget: Optional[Budget] = None) -> Iterator[Dict[str, Any]]:
        """
        Every candidate binding of ``ids``, with the identifiers bound in
        the environment while each binding is being consumed.

        Consumers that stop early must close the generator so its frame is
        released; use ``contextlib.closing``.
        """
        budget = budget or Budget(self.config.max_enum)
        nodes = ids.children
        with self.env.scope() as frame:
            yield from self._extend(nodes, 0, frame, constraints, budget)

    def _extend(self, nodes: List[AstNode], index: int, frame: Dict[str, Any],
                constraints: List[AstNode], budget: Budget) -> Iterator[Dict[str, Any]]:
        if index == len(nodes):
            yield {n.payload: frame[n.payload] for n in nodes}
            return
        node = nodes[index]
        later = {n.payload for n in nodes[index + 1:]}
        frame.pop(node.payload, None)
        domain = self.narrower.candidates(node.payload, node.inferred_type, constraints, later)
        for value in EnumStream(domain, budget):
            frame[node.payload] = value
            yield from self._extend(nodes, index + 1, frame, constraints, budget)
        frame.pop(node.payload, None)

    def solutions(self, ids: AstNode, predicate: AstNode) -> Iterator[Dict[str, Any]]:
        """Bindings of ``ids`` that satisfy ``predicate``, in enumeration order."""
        with closing(self.bindings(ids, conjuncts(predicate))) as candidates:
            for binding in candidates:
                if self.eval_predicate(predicate):
                    yield binding

    def find_witness(self, ids: AstNode, predicate: AstNode) -> Optional[Dict[str, Any]]:
        """The first solution of ``predicate`` in enumeration order, or None."""
        with closing(self.solutions(ids, predicate)) as found:
            for binding in found:
                return binding
        return None

    def eval_quantifier(self, node: AstNode) -> bool:
        ids, body = node.children
        if node.kind == K.EXISTS:
            return self.find_witness(ids, body) is not None
        antecedent, consequent = split_forall(body)
        constraints = conjuncts(antecedent) if antecedent is not None else []
        with closing(self.bindings(ids, constraints)) as candidates:
            for _ in candidates:
                if antecedent is not None and not self.eval_predicate(antecedent):
                    continue
                if not self.eval_predicate(consequent):
                    return False
        return True

    def eval_comprehension(self, node: AstNode) -> frozenset:
        ids, predicate = node.children
        names = [n.payload for n in ids.children]
        members = []
        with closing(self.solutions(ids, predicate)) as found:
            for binding in found:
                members.append(tuple_value(names, binding))
                self.algebra.check_size(len(members), "comprehension")
        return self.algebra.build(members)

    def eval_lambda(self, node: AstNode) -> frozenset:
        ids, predicate, body = node.children
        names = [n.payload for n in ids.children]
        pairs = []
        with closing(self.solutions(ids, predicate)) as found:
            for binding in found:
                pairs.append((tuple_value(names, binding), self.eval_expression(body)))
                self.algebra.check_size(len(pairs), "lambda")
        return self.algebra.build(pairs)

    # helpers

    def _operand(self, node: AstNode) -> Any:
        return self.eval_expression(node.children[0])

    def _operands(self, node: AstNode) -> List[Any]:
        return [self.eval_expression(child) for child in node.children]

    def _arithmetic(self, node: AstNode, op: Callable[[int, int], int]) -> int:
        left, right = self._operands(node)
        return op(left, right)

    def _compare(self, node: AstNode, op: Callable[[int, int], bool]) -> bool:
        left, right = self._operands(node)
        return op(left, right)

    def _member(self, node: AstNode) -> bool:
        element, collection = self._operands(node)
        return set_contains(collection, element)

    def _mult_or_cart(self, node: AstNode) -> Any:
        left, right = self._operands(node)
        if type(left) is int:
            return left * right
        return self.algebra.cartesian_product(left, right)

    def _identifier(self, node: AstNode) -> Any:
        try:
            return self.env.lookup(node.payload)
        except UnknownIdentifier:
            raise UnknownIdentifier(node.payload, node.span) from None

    def _builtin_set(self, node: AstNode) -> Any:
        name = node.payload
        if name == "NAT":
            return IntervalSet(0, self.config.maxint)
        if name == "NAT1":
            return IntervalSet(1, self.config.maxint)
        if name == "INT":
            return IntervalSet(self.config.minint, self.config.maxint)
        if name == "BOOL":
            return BOOL_SET
        return UnboundedSet(Universe(name))
