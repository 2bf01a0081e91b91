import pytest

from src.application.interpreter.environment import Environment
from src.application.interpreter.evaluator import Interpreter
from src.application.interpreter.quick_eval import Bounds, split_forall
from src.application.interpreter.symbolic_sets import PowerSetView
from src.application.syntax.ast_utils import conjuncts
from src.application.syntax.lexer import tokenize
from src.application.syntax.parser import parse_predicate
from src.application.typechecking.type_checker import TypeChecker
from src.domain.entities.ast_node import NodeKind as K
from src.domain.entities.btypes import INTEGER
from src.domain.entities.bvalues import IntervalSet
from src.domain.entities.eval_config import EvalConfig
from src.domain.exceptions import EnumerationError


def constraints(text):
    return conjuncts(TypeChecker().infer(parse_predicate(tokenize(text))).root)


@pytest.fixture
def interpreter():
    return Interpreter(Environment(EvalConfig()))


class TestBounds:
    """Test cases for combining what constraints say about one identifier."""

    def test_smallest_domain_wins(self):
        bounds = Bounds()
        bounds.offer(frozenset({1, 2, 3}))
        bounds.offer(frozenset({9}))
        bounds.offer(IntervalSet(1, 5))
        assert bounds.resolve() == frozenset({9})

    def test_interval_domain_is_clipped(self):
        bounds = Bounds(domain=IntervalSet(0, 10))
        bounds.raise_lower(2)
        bounds.raise_lower(1)
        bounds.cap_upper(5)
        assert bounds.resolve() == IntervalSet(2, 5)

    def test_one_sided_bound_is_not_enough(self):
        bounds = Bounds()
        bounds.raise_lower(3)
        assert bounds.resolve() is None

    def test_smaller_interval_replaces_larger_domain(self):
        bounds = Bounds(domain=frozenset(range(10)), lower=4, upper=5)
        assert bounds.resolve() == IntervalSet(4, 5)


class TestSplitForall:
    def test_implication_body(self):
        body = parse_predicate(tokenize("x : NAT => x >= 0")).root
        antecedent, consequent = split_forall(body)
        assert antecedent.kind == K.MEMBER
        assert consequent.kind == K.GREATER_EQUAL

    def test_plain_body(self):
        body = parse_predicate(tokenize("x = x")).root
        assert split_forall(body) == (None, body)


class TestQuickNarrower:
    """Test cases for candidate domains."""

    def test_membership_and_comparison(self, interpreter):
        found = interpreter.narrower.narrow("x", constraints("x : 1..10 & x > 3"), set())
        assert found == IntervalSet(4, 10)

    def test_identifier_on_the_right(self, interpreter):
        """Test 5 > x is read as x < 5."""
        found = interpreter.narrower.narrow("x", constraints("x : NATURAL & 5 > x"), set())
        assert found == IntervalSet(0, 4)

    def test_equality_against_bound_values(self, interpreter):
        """Test an equality is used once its other side can be evaluated."""
        # Arrange
        conjs = constraints("x : 1..10 & y = x + 1")

        # Act
        blocked = interpreter.narrower.narrow("y", conjs, {"x"})
        with interpreter.env.scope({"x": 3}):
            bound = interpreter.narrower.narrow("y", conjs, set())

        # Assert
        assert blocked is None
        assert bound == frozenset({4})

    def test_subset_constraint(self, interpreter):
        found = interpreter.narrower.narrow("s", constraints("s <: {1, 2}"), set())
        assert found == PowerSetView(frozenset({1, 2}))

    def test_only_membership_without_quick_narrowing(self):
        interpreter = Interpreter(Environment(EvalConfig(quick_narrow=False)))
        found = interpreter.narrower.narrow("x", constraints("x : 1..10 & x > 3"), set())
        assert found == IntervalSet(1, 10)

    def test_unevaluable_bound_is_ignored(self, interpreter):
        """Test a constraint whose bound fails to evaluate is skipped."""
        found = interpreter.narrower.narrow("x", constraints("x : 1..3 & x < 1 / 0"), set())
        assert found == IntervalSet(1, 3)

    def test_one_sided_integer_bound_is_clipped(self, interpreter):
        """Test a lower bound alone leaves the range up to MAXINT."""
        found = interpreter.narrower.candidates("x", INTEGER, constraints("x > 0"), set())
        assert list(found) == list(range(1, 128))

    def test_unconstrained_integer_follows_enumeration_order(self, small_config):
        interpreter = Interpreter(Environment(small_config))
        found = interpreter.narrower.candidates("x", INTEGER, [], set())
        assert list(found)[:5] == [0, 1, -1, 2, -2]

    @pytest.mark.parametrize("text", ["x > MAXINT", "x < MININT - 3"])
    def test_integer_constraint_outside_bounds(self, interpreter, text):
        """Test a constraint beyond MININT..MAXINT is not silently dropped."""
        with pytest.raises(EnumerationError, match="outside MININT..MAXINT"):
            interpreter.narrower.candidates("x", INTEGER, constraints(text), set())

    @pytest.mark.parametrize("quick_narrow", [True, False])
    def test_integer_beyond_maxint_in_both_modes(self, quick_narrow):
        interpreter = Interpreter(Environment(EvalConfig(quick_narrow=quick_narrow)))
        with pytest.raises(EnumerationError):
            interpreter.narrower.candidates("x", INTEGER, constraints("x : NATURAL & x > 200"), set())
