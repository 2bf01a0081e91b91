"""Evaluator results checked against a direct Python reading of random formulas."""
import operator

import pytest
from hypothesis import given, settings, strategies as st

from src.application.syntax.pretty_printer import pretty_print
from src.domain.entities.ast_node import AstNode, NodeKind as K
from tests.conftest import evaluate_text

pytestmark = pytest.mark.property

ARITHMETIC = {K.ADD: operator.add, K.MINUS_OR_SET_SUBTRACT: operator.sub, K.MULT_OR_CART: operator.mul}
COMPARISONS = {K.EQUAL: operator.eq, K.NOT_EQUAL: operator.ne, K.LESS: operator.lt,
               K.LESS_EQUAL: operator.le, K.GREATER_EQUAL: operator.ge}
CONNECTIVES = {
    K.CONJUNCT: lambda a, b: a and b,
    K.DISJUNCT: lambda a, b: a or b,
    K.IMPLICATION: lambda a, b: (not a) or b,
    K.EQUIVALENCE: operator.eq,
}


def binary(kind, left, right):
    return AstNode(kind, [left, right])


terms = st.recursive(
    st.integers(min_value=0, max_value=6).map(lambda n: AstNode(K.INTEGER_LITERAL, payload=n)),
    lambda inner: st.builds(binary, st.sampled_from(sorted(ARITHMETIC)), inner, inner),
    max_leaves=5,
)

formulas = st.recursive(
    st.builds(binary, st.sampled_from(sorted(COMPARISONS)), terms, terms),
    lambda inner: st.one_of(
        st.builds(binary, st.sampled_from(sorted(CONNECTIVES)), inner, inner),
        inner.map(lambda p: AstNode(K.NEGATION, [p])),
    ),
    max_leaves=6,
)


def oracle(node):
    c = node.children
    if node.kind == K.INTEGER_LITERAL:
        return node.payload
    if node.kind == K.NEGATION:
        return not oracle(c[0])
    table = {**ARITHMETIC, **COMPARISONS, **CONNECTIVES}
    return table[node.kind](oracle(c[0]), oracle(c[1]))


class TestLogicLaws:
    """Property tests relating evaluation to ordinary logic."""

    @settings(max_examples=1000)
    @given(formulas)
    def test_agrees_with_python(self, formula):
        assert evaluate_text(pretty_print(formula)) is oracle(formula)

    @settings(max_examples=500)
    @given(formulas, formulas)
    def test_de_morgan(self, p, q):
        left = evaluate_text(f"not(({pretty_print(p)}) & ({pretty_print(q)}))")
        right = evaluate_text(f"not({pretty_print(p)}) or not({pretty_print(q)})")
        assert left is right

    @settings(max_examples=500)
    @given(formulas, formulas)
    def test_implication_as_disjunction(self, p, q):
        """Test p => q evaluates like not(p) or q."""
        left = evaluate_text(f"({pretty_print(p)}) => ({pretty_print(q)})")
        right = evaluate_text(f"not({pretty_print(p)}) or ({pretty_print(q)})")
        assert left is right

    @settings(max_examples=500)
    @given(st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=40))
    def test_exists_is_any(self, n, m):
        """Test a bounded existential matches a Python any()."""
        found = evaluate_text(f"#x.(x : 0..{n} & x * x = {m})")
        assert found is any(x * x == m for x in range(n + 1))

    @settings(max_examples=500)
    @given(st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=40))
    def test_forall_is_dual_of_exists(self, n, m):
        forall = evaluate_text(f"!x.(x : 0..{n} => x * x /= {m})")
        exists = evaluate_text(f"#x.(x : 0..{n} & x * x = {m})")
        assert forall is (not exists)
