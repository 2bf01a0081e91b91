import pytest
from hypothesis import given, strategies as st

from src.application.syntax.lexer import tokenize
from src.application.syntax.parser import parse_expression, parse_predicate, parse_substitution
from src.application.syntax.pretty_printer import pretty_print
from src.domain.entities.ast_node import AstNode, NodeKind as K, identifier


def binary(kind, left, right):
    return AstNode(kind, [left, right])


leaves = st.one_of(
    st.integers(min_value=0, max_value=50).map(lambda n: AstNode(K.INTEGER_LITERAL, payload=n)),
    st.sampled_from(["x", "y", "zz"]).map(identifier),
)

expressions = st.recursive(
    leaves,
    lambda inner: st.builds(
        binary,
        st.sampled_from([K.ADD, K.MINUS_OR_SET_SUBTRACT, K.MULT_OR_CART, K.DIV,
                         K.MOD, K.POWER, K.INTERVAL, K.UNION]),
        inner, inner),
    max_leaves=8,
)

relations = st.builds(
    binary,
    st.sampled_from([K.EQUAL, K.NOT_EQUAL, K.LESS, K.MEMBER, K.SUBSET]),
    expressions, expressions,
)

predicates = st.recursive(
    relations,
    lambda inner: st.one_of(
        st.builds(binary,
                  st.sampled_from([K.CONJUNCT, K.DISJUNCT, K.IMPLICATION, K.EQUIVALENCE]),
                  inner, inner),
        inner.map(lambda p: AstNode(K.NEGATION, [p])),
    ),
    max_leaves=6,
)


class TestPrettyPrint:
    """Test cases for rendering trees back to B text."""

    def test_compound_operands_are_parenthesized(self):
        """Test operator operands print inside parentheses."""
        assert pretty_print(parse_predicate(tokenize("x + 1 = y"))) == "(x + 1) = y"

    def test_negation_and_quantifier(self):
        """Test negation and binders keep their bracket forms."""
        assert pretty_print(parse_predicate(tokenize("not(x = 1)"))) == "not(x = 1)"
        assert pretty_print(parse_predicate(tokenize("#(a, b).(a < b)"))) == "#(a, b).(a < b)"

    def test_expression_forms(self):
        """Test keyword functions, sequences and composition."""
        assert pretty_print(parse_expression(tokenize("card({1, 2})"))) == "card({1, 2})"
        assert pretty_print(parse_expression(tokenize("<>"))) == "[]"
        assert pretty_print(parse_expression(tokenize("(r ; s)"))) == "(r ; s)"

    def test_substitutions(self):
        """Test guarded substitutions print with their keywords."""
        # Arrange
        text = "IF x = 1 THEN y := 1 ELSE y := 2 END"

        # Act
        printed = pretty_print(parse_substitution(tokenize(text)))

        # Assert
        assert printed == text
        assert pretty_print(parse_substitution(tokenize("x :: {1, 2} || y := 3"))) == "x :: {1, 2} || y := 3"

    @pytest.mark.parametrize("parse, text", [
        (parse_predicate, "1+1=x"),
        (parse_predicate, "x = 1 & y = 2 or z = 3"),
        (parse_predicate, "x = 1 & y = 2 => z = 3"),
        (parse_predicate, "(x + 1) * 2 = y"),
        (parse_predicate, "#(x, y).(x : NAT & y = x)"),
        (parse_predicate, "!x.(x : NAT => x >= 0)"),
        (parse_predicate, "x /: S & A /<<: B"),
        (parse_predicate, "not(x = 1) or btrue"),
        (parse_expression, "1 + 2 * 3"),
        (parse_expression, "2 ** 3 ** 2"),
        (parse_expression, "-3 - x"),
        (parse_expression, "f(1, 2) |-> r[{1}]"),
        (parse_expression, "{x, y | x : NAT & y = x}"),
        (parse_expression, "%x.(x : NAT | x + 1)"),
        (parse_expression, "[1, 2] ^ [3] ^ <>"),
        (parse_predicate, "(r ; s)~ : S >->> T"),
        (parse_expression, "card({1}) + max(INT)"),
        (parse_expression, "bool(1 = 1)"),
        (parse_substitution, "x, y := 1, 2 || f(1) := 2"),
        (parse_substitution, "x :: {1, 2} ; y : (y > x)"),
        (parse_substitution, "IF x = 1 THEN y := 1 ELSIF x = 2 THEN y := 2 ELSE y := 3 END"),
        (parse_substitution, "SELECT x = 1 THEN y := 1 WHEN x = 2 THEN skip END"),
        (parse_substitution, "CHOICE x := 1 OR BEGIN x := 2 END END"),
        (parse_substitution, "ANY v WHERE v : 1..3 THEN PRE v > 0 THEN x := v END END"),
    ])
    def test_parser_corpus_round_trip(self, parse, text):
        """Test printing a parsed text and parsing it again gives the same tree."""
        # Arrange
        tree = parse(tokenize(text)).root

        # Act
        reparsed = parse(tokenize(pretty_print(tree))).root

        # Assert
        assert reparsed == tree

    @pytest.mark.property
    @given(predicates)
    def test_printed_predicates_parse_back(self, predicate):
        """Test printing then parsing gives the same tree."""
        assert parse_predicate(tokenize(pretty_print(predicate))).root == predicate

    @pytest.mark.property
    @given(expressions)
    def test_printed_expressions_parse_back(self, expression):
        """Test printing then parsing an expression gives the same tree."""
        assert parse_expression(tokenize(pretty_print(expression))).root == expression
