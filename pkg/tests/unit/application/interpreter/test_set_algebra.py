import pytest
from hypothesis import given, strategies as st

from src.application.interpreter.set_algebra import SetAlgebra
from src.application.interpreter.symbolic_sets import CartesianView, PowerSetView
from src.domain.entities.ast_node import NodeKind as K
from src.domain.entities.bvalues import IntervalSet, UnboundedSet, Universe, values_equal
from src.domain.entities.eval_config import EvalConfig
from src.domain.exceptions import EnumerationError, SizeCapExceeded, WDKind, WellDefinednessError

NATURAL = UnboundedSet(Universe.NATURAL)
INTEGER = UnboundedSet(Universe.INTEGER)


@pytest.fixture
def algebra():
    return SetAlgebra(EvalConfig(max_set_size=100))


class TestBooleanOperators:
    """Test cases for union, intersection and difference."""

    def test_finite_union(self, algebra):
        assert algebra.union(IntervalSet(1, 2), frozenset({5})) == frozenset({1, 2, 5})

    def test_union_with_a_subset_of_an_infinite_set(self, algebra):
        """Test a union that equals one operand keeps it symbolic."""
        assert algebra.union(NATURAL, IntervalSet(1, 5)) == NATURAL
        assert algebra.union(NATURAL, INTEGER) == INTEGER

    def test_union_without_representation(self, algebra):
        with pytest.raises(EnumerationError):
            algebra.union(NATURAL, frozenset({-1}))

    def test_intersection(self, algebra):
        assert algebra.intersection(NATURAL, IntervalSet(-3, 3)) == IntervalSet(0, 3)
        assert algebra.intersection(IntervalSet(1, 5), IntervalSet(4, 9)) == IntervalSet(4, 5)
        assert algebra.intersection(frozenset({-1, 2}), NATURAL) == frozenset({2})

    def test_difference(self, algebra):
        assert algebra.difference(IntervalSet(1, 4), frozenset({2, 3})) == frozenset({1, 4})
        assert algebra.difference(NATURAL, frozenset()) == NATURAL
        with pytest.raises(EnumerationError):
            algebra.difference(NATURAL, frozenset({0}))

    def test_overloaded_minus(self, algebra):
        assert algebra.subtract_overloaded(5, 7) == -2
        assert algebra.subtract_overloaded(frozenset({1, 2}), frozenset({1})) == frozenset({2})


class TestConstruction:
    """Test cases for building and measuring sets."""

    def test_size_cap(self, algebra):
        with pytest.raises(SizeCapExceeded):
            algebra.reify(IntervalSet(1, 101))
        with pytest.raises(SizeCapExceeded):
            algebra.cartesian_product(IntervalSet(1, 20), IntervalSet(1, 20))

    def test_reify_infinite(self, algebra):
        with pytest.raises(EnumerationError):
            algebra.reify(NATURAL)

    def test_products(self, algebra):
        assert algebra.cartesian_product(frozenset({1}), frozenset({True, False})) == \
            frozenset({(1, True), (1, False)})
        assert algebra.cartesian_product(NATURAL, frozenset({1})) == CartesianView(NATURAL, frozenset({1}))

    def test_power_set_stays_symbolic(self, algebra):
        powerset = algebra.power_set(IntervalSet(1, 30))
        assert isinstance(powerset, PowerSetView)
        assert powerset.contains(frozenset({3, 7}))

    def test_card(self, algebra):
        assert algebra.card(IntervalSet(3, 7)) == 5
        assert algebra.card(IntervalSet(3, 1)) == 0
        with pytest.raises(EnumerationError):
            algebra.card(NATURAL)

    def test_min_max(self, algebra):
        assert algebra.minimum(frozenset({4, -2})) == -2
        assert algebra.maximum(IntervalSet(1, 9)) == 9
        with pytest.raises(WellDefinednessError) as info:
            algebra.minimum(IntervalSet(2, 1))
        assert info.value.kind == WDKind.EMPTY_MIN_MAX
        with pytest.raises(EnumerationError):
            algebra.maximum(NATURAL)


class TestRelationsAndSequences:
    """Test cases for relation and sequence operators."""

    def test_relation_operators(self, algebra):
        r = frozenset({(1, 2), (2, 3)})
        assert algebra.domain(r) == frozenset({1, 2})
        assert algebra.inverse(r) == frozenset({(2, 1), (3, 2)})
        assert algebra.compose(r, r) == frozenset({(1, 3)})
        assert algebra.override(r, frozenset({(2, 9)})) == frozenset({(1, 2), (2, 9)})
        assert algebra.domain_subtract(frozenset({1}), r) == frozenset({(2, 3)})

    def test_application(self, algebra):
        f = frozenset({(1, frozenset({2}))})
        assert algebra.apply_function(f, 1) == frozenset({2})
        with pytest.raises(WellDefinednessError) as info:
            algebra.apply_function(f, 7)
        assert info.value.kind == WDKind.APPLICATION_OUTSIDE_DOMAIN

    def test_function_spaces(self, algebra):
        space = algebra.function_space(frozenset({1, 2}), frozenset({5}), K.TOTAL_FUNCTION)
        assert list(space) == [frozenset({(1, 5), (2, 5)})]
        assert algebra.is_member_of_function_class(
            frozenset({(1, 5)}), frozenset({1, 2}), frozenset({5}), K.PARTIAL_FUNCTION)

    def test_sequence_operators(self, algebra):
        s = algebra.sequence(["a", "b", "c"])
        assert algebra.entries(s) == ["a", "b", "c"]
        assert algebra.entries(algebra.concat(s, algebra.sequence(["d"]))) == ["a", "b", "c", "d"]
        assert algebra.entries(algebra.rev(s)) == ["c", "b", "a"]
        assert algebra.first(s) == "a"
        assert algebra.entries(algebra.front(s)) == ["a", "b"]

    def test_not_a_sequence(self, algebra):
        with pytest.raises(WellDefinednessError) as info:
            algebra.entries(frozenset({(0, "a")}))
        assert info.value.kind == WDKind.NOT_A_SEQUENCE

    def test_empty_sequence(self, algebra):
        with pytest.raises(WellDefinednessError) as info:
            algebra.last(frozenset())
        assert info.value.kind == WDKind.EMPTY_SEQUENCE


small_ints = st.integers(min_value=-3, max_value=3)
relations = st.frozensets(st.tuples(small_ints, small_ints), max_size=8)


@pytest.mark.property
class TestAlgebraicLaws:
    """Property tests for laws relating the set operators."""

    @given(relations)
    def test_inverse_swaps_domain_and_range(self, r):
        algebra = SetAlgebra(EvalConfig(max_set_size=100))
        assert algebra.domain(algebra.inverse(r)) == algebra.range(r)
        assert algebra.range(algebra.inverse(r)) == algebra.domain(r)

    @given(relations, relations)
    def test_inverse_of_composition(self, r, q):
        """Test (r ; q)~ equals q~ ; r~."""
        algebra = SetAlgebra(EvalConfig(max_set_size=100))
        assert algebra.inverse(algebra.compose(r, q)) == algebra.compose(
            algebra.inverse(q), algebra.inverse(r))

    @given(small_ints, small_ints)
    def test_interval_equals_its_extension(self, lo, hi):
        assert values_equal(IntervalSet(lo, hi), frozenset(range(lo, hi + 1)))

    @given(st.dictionaries(small_ints, small_ints, min_size=1, max_size=6), st.data())
    def test_application_lands_in_the_range(self, table, data):
        """Test f(x) is in ran(f) and x |-> f(x) is in f for every x in dom(f)."""
        # Arrange
        algebra = SetAlgebra(EvalConfig(max_set_size=100))
        f = frozenset(table.items())
        x = data.draw(st.sampled_from(sorted(algebra.domain(f))))

        # Act
        y = algebra.apply_function(f, x)

        # Assert
        assert y in algebra.range(f)
        assert (x, y) in f
