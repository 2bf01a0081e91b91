import time

import pytest

from src.application.interpreter.environment import Environment
from src.application.interpreter.evaluator import Interpreter, b_div, b_mod, b_power
from src.application.syntax.lexer import tokenize
from src.application.syntax.parser import parse_predicate
from src.application.typechecking.type_checker import TypeChecker
from src.domain.entities.ast_node import AstNode, NodeKind as K
from src.domain.entities.btypes import BOOL, INTEGER
from src.domain.entities.bvalues import IntervalSet
from src.domain.entities.eval_config import EvalConfig
from src.domain.exceptions import (
    BudgetExceeded,
    EnumerationError,
    SizeCapExceeded,
    WDKind,
    WellDefinednessError,
)


class TestArithmetic:
    """Test cases for integer operators."""

    @pytest.mark.parametrize("text, expected", [
        ("7 / 2", 3),
        ("-7 / 2", -3),
        ("7 / -2", -3),
        ("7 mod 3", 1),
        ("2 ** 10", 1024),
        ("MAXINT + 1", 128),
        ("succ(MININT)", -127),
        ("-(3 - 5)", 2),
    ])
    def test_values(self, evaluate, text, expected):
        assert evaluate(text) == expected

    @pytest.mark.parametrize("text, kind", [
        ("1 / 0", WDKind.DIVISION_BY_ZERO),
        ("1 mod 0", WDKind.MODULO_BY_ZERO),
        ("-7 mod 3", WDKind.INVALID_MODULO),
        ("2 ** -1", WDKind.NEGATIVE_EXPONENT),
    ])
    def test_undefined_terms(self, evaluate, text, kind):
        """Test ill-defined arithmetic raises with its kind and a location."""
        with pytest.raises(WellDefinednessError) as info:
            evaluate(text)
        assert info.value.kind == kind
        assert info.value.span is not None

    def test_helpers(self):
        """Test the integer helpers directly."""
        assert b_div(-9, 4) == -2
        assert b_mod(9, 4) == 1
        assert b_power(0, 0) == 1


class TestConnectives:
    """Test cases for short-circuit evaluation of connectives."""

    @pytest.mark.parametrize("text, expected", [
        ("1 = 0 & 1 / 0 = 1", False),
        ("1 = 1 or 1 / 0 = 1", True),
        ("1 = 0 => 1 / 0 = 1", True),
        ("(1 = 1) <=> (2 = 2)", True),
        ("not(1 = 1)", False),
        ("bool(1 < 2) = TRUE", True),
    ])
    def test_truth_values(self, evaluate, text, expected):
        assert evaluate(text) is expected

    def test_right_operand_still_evaluated_when_needed(self, evaluate):
        """Test the guard only protects when it decides the result."""
        with pytest.raises(WellDefinednessError):
            evaluate("1 = 1 & 1 / 0 = 1")


class TestSets:
    """Test cases for set expressions."""

    @pytest.mark.parametrize("text, expected", [
        ("{1, 2} \\/ {2, 3}", frozenset({1, 2, 3})),
        ("{1, 2} /\\ {2, 3}", frozenset({2})),
        ("{1, 2, 3} - {2}", frozenset({1, 3})),
        ("{1} * {TRUE}", frozenset({(1, True)})),
        ("{x | x : 1..10 & x mod 3 = 0}", frozenset({3, 6, 9})),
        ("%x.(x : 1..3 | x * x)", frozenset({(1, 1), (2, 4), (3, 9)})),
        ("%x.(x : {} | x)", frozenset()),
        ("{x | x : {}}", frozenset()),
    ])
    def test_set_values(self, evaluate, text, expected):
        assert evaluate(text) == expected

    def test_symbolic_results(self, evaluate):
        """Test intervals and universes stay symbolic where possible."""
        assert evaluate("1..3") == IntervalSet(1, 3)
        assert evaluate("NATURAL /\\ -3..3") == IntervalSet(0, 3)

    @pytest.mark.parametrize("text, expected", [
        ("card(POW({1, 2, 3}))", 8),
        ("card(POW1({1, 2, 3}))", 7),
        ("min(NATURAL)", 0),
        ("max(1..5)", 5),
        ("card({1, 2} --> {5, 6})", 4),
        ("card({1, 2} +-> {5, 6})", 9),
        ("card({1, 2} >-> {5, 6})", 2),
        ("card({1, 2} >+> {5, 6})", 7),
        ("card({1, 2} <-> {5, 6})", 16),
        ("card(iseq({1, 2}))", 5),
    ])
    def test_cardinalities(self, evaluate, text, expected):
        assert evaluate(text) == expected

    @pytest.mark.parametrize("text, expected", [
        ("100000 : NATURAL", True),
        ("-1 : NATURAL", False),
        ("NAT <: NATURAL", True),
        ("NATURAL1 <: INTEGER", True),
        ("{1, 2} <<: {1, 2}", False),
        ('"ab" = "ab"', True),
        ("BOOL = {TRUE, FALSE}", True),
        ("{1} : POW(NATURAL)", True),
    ])
    def test_set_predicates(self, evaluate, text, expected):
        assert evaluate(text) is expected

    def test_comparing_infinite_sets(self, evaluate):
        """Test two different infinite sets cannot be compared."""
        with pytest.raises(EnumerationError):
            evaluate("NATURAL = INTEGER")

    def test_empty_max(self, evaluate):
        with pytest.raises(WellDefinednessError) as info:
            evaluate("max({})")
        assert info.value.kind == WDKind.EMPTY_MIN_MAX


class TestRelations:
    """Test cases for relations and functions."""

    @pytest.mark.parametrize("text, expected", [
        ("dom({1 |-> 2, 3 |-> 4})", frozenset({1, 3})),
        ("ran({1 |-> 2, 3 |-> 4})", frozenset({2, 4})),
        ("({1 |-> 2, 2 |-> 3} ; {2 |-> 5, 3 |-> 6})", frozenset({(1, 5), (2, 6)})),
        ("{1 |-> 2} <+ {1 |-> 3}", frozenset({(1, 3)})),
        ("{1 |-> 2, 2 |-> 3}[{1}]", frozenset({2})),
        ("{1 |-> 2}~", frozenset({(2, 1)})),
        ("{1} <| {1 |-> 2, 2 |-> 3}", frozenset({(1, 2)})),
        ("{1 |-> 2, 2 |-> 3} |>> {3}", frozenset({(1, 2)})),
        ("{1 |-> 2, 2 |-> 3}(2)", 3),
        ("%x.(x : NAT | x + 1)(4)", 5),
    ])
    def test_relation_values(self, evaluate, text, expected):
        assert evaluate(text) == expected

    @pytest.mark.parametrize("text, expected", [
        ("{1 |-> 5, 2 |-> 6} : {1, 2} --> {5, 6}", True),
        ("{1 |-> 5} : {1, 2} --> {5, 6}", False),
        ("{1 |-> 5, 2 |-> 5} : {1, 2} >-> {5, 6}", False),
        ("{1 |-> 5, 2 |-> 6} : {1, 2} >->> {5, 6}", True),
        ("{1 |-> 5} : NAT +-> NAT", True),
        ("{1 |-> 5} : NATURAL --> NATURAL", False),
    ])
    def test_function_classes(self, evaluate, text, expected):
        assert evaluate(text) is expected

    @pytest.mark.parametrize("text, kind", [
        ("{1 |-> 2}(5)", WDKind.APPLICATION_OUTSIDE_DOMAIN),
        ("{1 |-> 2, 1 |-> 3}(1)", WDKind.NOT_A_FUNCTION),
    ])
    def test_bad_application(self, evaluate, text, kind):
        with pytest.raises(WellDefinednessError) as info:
            evaluate(text)
        assert info.value.kind == kind


class TestSequences:
    """Test cases for sequence operators."""

    @pytest.mark.parametrize("text, expected", [
        ("[1, 2] ^ [3]", frozenset({(1, 1), (2, 2), (3, 3)})),
        ("size([4, 5, 6])", 3),
        ("first([4, 5])", 4),
        ("last([4, 5])", 5),
        ("rev([1, 2])", frozenset({(1, 2), (2, 1)})),
        ("tail([1, 2, 3])", frozenset({(1, 2), (2, 3)})),
        ("front([1, 2, 3])", frozenset({(1, 1), (2, 2)})),
    ])
    def test_sequence_values(self, evaluate, text, expected):
        assert evaluate(text) == expected

    @pytest.mark.parametrize("text, expected", [
        ("[5] : seq(NAT)", True),
        ("[1, 1] : iseq(NAT)", False),
        ("[] : seq1(NAT)", False),
        ("{2 |-> 7} : seq(NAT)", False),
    ])
    def test_sequence_spaces(self, evaluate, text, expected):
        assert evaluate(text) is expected

    def test_first_of_empty(self, evaluate):
        with pytest.raises(WellDefinednessError) as info:
            evaluate("first(tail([1]))")
        assert info.value.kind == WDKind.EMPTY_SEQUENCE

    @pytest.mark.parametrize("text", ["tail(<>)", "front([])", "last(<>)"])
    def test_untyped_empty_sequence(self, evaluate, text):
        """Test an empty literal with no other typing still reaches evaluation."""
        with pytest.raises(WellDefinednessError) as info:
            evaluate(text)
        assert info.value.kind == WDKind.EMPTY_SEQUENCE

    def test_not_a_sequence(self, evaluate):
        with pytest.raises(WellDefinednessError) as info:
            evaluate("size({2 |-> 7})")
        assert info.value.kind == WDKind.NOT_A_SEQUENCE


class TestQuantifiers:
    """Test cases for quantified predicates."""

    @pytest.mark.parametrize("text, expected", [
        ("#x.(x : NAT & x * x = 49)", True),
        ("!x.(x : 1..10 => x * 2 > x)", True),
        ("!x.(x : 0..10 => x * 2 > x)", False),
        ("#(x, y).(x : 1..3 & y : 1..3 & x + y = 6)", True),
        ("#(x, y).(x : 1..3 & y : 1..3 & x + y = 7)", False),
        ("!b.(b : BOOL => b = TRUE or b = FALSE)", True),
        ("#x.(x > 2 & x < 5)", True),
        ("#s.(s <: {1, 2, 3} & card(s) = 2)", True),
    ])
    def test_truth_values(self, evaluate, text, expected):
        assert evaluate(text) is expected

    @pytest.mark.parametrize("text", [
        "#x.(x : NATURAL & x > MAXINT)",
        "!x.(x : INTEGER & x < MININT - 1 => x = x)",
        '#s.(s : STRING & s = s)',
    ])
    def test_unbounded_quantifiers(self, evaluate, text):
        """Test an identifier that cannot be enumerated within bounds is an error."""
        with pytest.raises(EnumerationError):
            evaluate(text)

    @pytest.mark.parametrize("text", [
        "#x.(x > 2 & x < 5)",
        "#x.(x * x = 9)",
        "#x.(x * x = 10)",
        "!x.(x : INTEGER => x * x >= 0)",
        "!x.(x >= 0 & x <= 3 => x * x <= 9)",
        "#(x, y).(x : 1..5 & y > x & y < 7 & x + y = 11)",
        "#x.(x : NATURAL & x < 0)",
    ])
    def test_quick_narrowing_does_not_change_the_result(self, evaluate, text):
        """Test comparisons only shrink the candidates, never the answer."""
        assert evaluate(text) is evaluate(text, EvalConfig(quick_narrow=False))

    @pytest.mark.parametrize("text, expected", [
        ("!x.(x : INTEGER => x = x)", True),
        ("#x.(x * x = 9)", True),
        ("#x.(x : NATURAL & x < 0)", False),
    ])
    def test_integers_range_over_bounds(self, evaluate, text, expected):
        """Test an integer nothing confines ranges over MININT..MAXINT."""
        assert evaluate(text) is expected

    def test_budget(self, evaluate):
        """Test one quantifier may not draw more than max_enum candidates."""
        with pytest.raises(BudgetExceeded):
            evaluate("#x.(x : 1..100 & x * x = 2500)", EvalConfig(max_enum=10))

    def test_size_cap(self, evaluate):
        """Test sets larger than max_set_size are not built."""
        with pytest.raises(SizeCapExceeded):
            evaluate("card(1..10 \\/ {0})", EvalConfig(max_set_size=5))

    def test_builtin_sets_follow_bounds(self, evaluate, small_config):
        assert evaluate("card(NAT)", small_config) == 5
        assert evaluate("card(INT)", small_config) == 9
        assert evaluate("MAXINT", small_config) == 4


def typed_predicate(text):
    checker = TypeChecker()
    unit = checker.infer(parse_predicate(tokenize(text)))
    ids = AstNode(K.IDENTIFIER_LIST, [
        AstNode(K.IDENTIFIER, payload=name, inferred_type=t)
        for name, t in sorted(checker.identifier_types.items())
    ])
    return ids, unit.root


class TestSolutions:
    """Test cases for solving free identifiers."""

    def test_solutions_in_domain_order(self, small_config):
        """Test solutions come out in the order of the narrowed domain."""
        # Arrange
        ids, predicate = typed_predicate("x : -4..4 & x * x = 4")
        interpreter = Interpreter(Environment(small_config))

        # Act
        found = list(interpreter.solutions(ids, predicate))

        # Assert
        assert found == [{"x": -2}, {"x": 2}]
        assert ids.children[0].inferred_type == INTEGER

    def test_witness_follows_type_order(self, small_config):
        """Test an unconstrained boolean is tried FALSE first."""
        ids, predicate = typed_predicate("b = TRUE or b = FALSE")
        assert ids.children[0].inferred_type == BOOL
        assert Interpreter(Environment(small_config)).find_witness(ids, predicate) == {"b": False}

    def test_no_witness(self, small_config):
        ids, predicate = typed_predicate("x : 1..3 & x > 3")
        assert Interpreter(Environment(small_config)).find_witness(ids, predicate) is None

    def test_frames_released_after_early_exit(self, small_config):
        """Test a witness search leaves the environment as it found it."""
        # Arrange
        env = Environment(small_config)
        ids, predicate = typed_predicate("x : 1..3")

        # Act
        Interpreter(env).find_witness(ids, predicate)

        # Assert
        assert env.depth == 2
        assert not env.is_bound("x")


class TestSetConstructionScale:
    """Test cases for building larger sets."""

    def test_lambda_bounded_by_its_guard(self, evaluate):
        """Test comparisons in the guard are enough to enumerate the lambda."""
        assert evaluate("%x.(x>0 & x<4|x*x)") == frozenset({(1, 1), (2, 4), (3, 9)})

    @pytest.mark.parametrize("size", range(17))
    def test_power_set_cardinality(self, evaluate, size):
        """Test card(POW(S)) is 2 ** card(S)."""
        assert evaluate(f"card(POW(1..{size}))") == 2 ** size

    @pytest.mark.parametrize("size", [0, 3, 8])
    def test_built_power_set_cardinality(self, evaluate, size):
        """Test a materialized power set has every subset exactly once."""
        assert evaluate(f"card(POW(1..{size}) \\/ {{}})") == 2 ** size

    @pytest.mark.slow
    def test_power_set_of_eighteen_elements(self, evaluate, record_property):
        """Test all 262144 subsets of an 18 element set are built."""
        # Act
        started = time.perf_counter()
        count = evaluate("card(POW(1..18) \\/ {})")
        elapsed = time.perf_counter() - started
        record_property("power_set_seconds", round(elapsed, 3))

        # Assert
        assert count == 2 ** 18
        assert elapsed < 60
