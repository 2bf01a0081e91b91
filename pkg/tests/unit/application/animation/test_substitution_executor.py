import pytest
from hypothesis import given, settings, strategies as st

from src.application.animation.substitution_executor import exec_substitution, unpack
from src.application.interpreter.environment import Environment
from src.application.services.machine_loader import MachineLoader
from src.application.syntax.lexer import tokenize
from src.application.syntax.parser import parse_substitution
from src.application.typechecking.type_checker import TypeChecker
from src.domain.entities.eval_config import EvalConfig
from src.domain.entities.machine_state import State
from src.domain.exceptions import DoubleWriteError, EvaluationError, UninitialisedVariable


def machine_with(operations: str, initialisation: str = "x := 0 || y := 0"):
    text = f"""
    MACHINE Steps
    VARIABLES x, y
    INVARIANT x : 0..10 & y : 0..10
    INITIALISATION {initialisation}
    OPERATIONS
      {operations}
    END
    """
    return MachineLoader(None, EvalConfig()).load_text(text)


def run(operation: str, body: str, x: int = 0, y: int = 0):
    animator = machine_with(f"{operation} = {body}").animator()
    return animator.execute_operation(State({}, {"x": x, "y": y}), operation)


def xs(successors):
    return sorted(s.state.get("x") for s in successors)


def table_animator(body: str):
    text = f"""
    MACHINE Table
    VARIABLES ff
    INVARIANT ff : 1..2 --> 0..5
    INITIALISATION ff := {{1 |-> 0, 2 |-> 0}}
    OPERATIONS
      put = {body}
    END
    """
    return MachineLoader(None, EvalConfig()).load_text(text).animator()


class TestDeterministicSubstitutions:
    """Test cases for substitutions with exactly one outcome."""

    def test_parallel_assignment_reads_pre_state(self):
        """Test both sides of || see the values from before the step."""
        # Act
        successors = run("swap", "x := y || y := x", x=1, y=2)

        # Assert
        assert len(successors) == 1
        assert dict(successors.successors[0].state.variables) == {"x": 2, "y": 1}

    def test_sequence_reads_intermediate_state(self):
        """Test the second step of ; sees the first step's write."""
        successors = run("step", "x := x + 1 ; x := x * 2")
        assert xs(successors) == [2]

    def test_skip_keeps_state(self):
        """Test skip yields the pre-state itself."""
        successors = run("idle", "skip", x=3)
        assert State({}, {"x": 3, "y": 0}) in successors

    def test_if_without_else_and_false_guard(self):
        """Test a false IF without ELSE leaves the state unchanged."""
        successors = run("maybe", "IF x > 5 THEN x := 0 END", x=2)
        assert xs(successors) == [2]

    def test_if_elsif_chain(self):
        """Test the first true guard of an IF chain wins."""
        successors = run("pick", "IF x = 0 THEN y := 1 ELSIF x >= 0 THEN y := 2 ELSE y := 3 END")
        assert successors.successors[0].state.get("y") == 1

    def test_function_point_assignment(self):
        """Test f(a) := b overrides a single point of a function."""
        # Arrange
        text = """
        MACHINE Table
        VARIABLES ff
        INVARIANT ff : 1..2 --> 0..5
        INITIALISATION ff := {1 |-> 0, 2 |-> 0}
        OPERATIONS
          put = ff(1) := 3
        END
        """
        animator = MachineLoader(None, EvalConfig()).load_text(text).animator()
        root = animator.initialise().states[0]

        # Act
        successors = animator.execute_operation(root, "put")

        # Assert
        assert successors.states[0].get("ff") == frozenset({(1, 3), (2, 0)})


class TestNondeterministicSubstitutions:
    """Test cases for substitutions with several outcomes and their traces."""

    def test_choice_merges_equal_states(self):
        """Test two CHOICE branches reaching one state give one successor with two traces."""
        # Act
        successors = run("pick", "CHOICE x := 1 OR x := 2 OR x := 1 END")

        # Assert
        assert len(successors) == 2
        one = next(s for s in successors if s.state.get("x") == 1)
        assert one.traces == [("OR 1",), ("OR 3",)]

    def test_any_yields_one_successor_per_binding(self):
        """Test ANY branches over every solution of its guard."""
        # Act
        successors = run("pick", "ANY v WHERE v : 1..3 THEN x := v END")

        # Assert
        assert xs(successors) == [1, 2, 3]
        assert successors.successors[0].traces == [("ANY v=1",)]

    def test_becomes_element_of(self):
        """Test x :: S picks every element of S."""
        # Act
        successors = run("pick", "x :: {4, 5}")

        # Assert
        assert xs(successors) == [4, 5]
        assert ("x::4",) in successors.successors[0].traces

    def test_becomes_such_that(self):
        """Test x : (P) picks every solution of P."""
        # Act
        successors = run("pick", "x : (x : 1..3 & x /= 2)")

        # Assert
        assert xs(successors) == [1, 3]
        assert successors.successors[0].traces == [(":(x=1)",)]

    def test_select_runs_every_true_branch(self):
        """Test SELECT collects all branches whose guard holds."""
        successors = run("pick", "SELECT x = 0 THEN y := 1 WHEN x < 5 THEN y := 2 ELSE y := 3 END")
        assert sorted(s.state.get("y") for s in successors) == [1, 2]

    def test_select_else_only_without_true_guard(self):
        """Test the ELSE branch of SELECT runs only when no guard is true."""
        # Act
        successors = run("pick", "SELECT x = 1 THEN y := 1 ELSE y := 3 END")

        # Assert
        assert [s.state.get("y") for s in successors] == [3]
        assert successors.successors[0].traces == [("ELSE",)]

    def test_false_precondition_has_no_successor(self):
        """Test PRE with a false guard yields nothing."""
        assert len(run("dec", "PRE x > 0 THEN x := x - 1 END")) == 0

    def test_sequence_of_choices_multiplies(self):
        """Test ; combines every outcome of the first step with every outcome of the second."""
        successors = run("pick", "x :: {1, 2} ; y :: {3, 4}")
        assert len(successors) == 4

    @pytest.mark.parametrize("arms", range(1, 7))
    def test_choice_arm_count(self, arms):
        """Test CHOICE with distinct deterministic arms has one successor per arm."""
        body = " OR ".join(f"x := {i}" for i in range(1, arms + 1))
        assert xs(run("pick", f"CHOICE {body} END")) == list(range(1, arms + 1))

    @pytest.mark.parametrize("bound", range(1, 7))
    def test_any_solution_count(self, bound):
        """Test ANY over 1..m has m successors."""
        assert len(run("pick", f"ANY z WHERE z : 1..{bound} THEN x := z END")) == bound


class TestExecutionErrors:
    """Test cases for substitutions that cannot be executed."""

    def test_parallel_double_write(self):
        """Test both sides of || writing one variable is an error."""
        with pytest.raises(DoubleWriteError, match=r"both sides of \|\| write x"):
            run("clash", "x := 1 || x := 2")

    @pytest.mark.parametrize("body", ["x, x := 1, 2", "x, y, x := 1, 2, 1"])
    def test_multiple_assignment_double_write(self, body):
        """Test a multiple assignment naming one variable twice is an error."""
        with pytest.raises(DoubleWriteError, match="multiple assignment writes x twice"):
            run("clash", body)

    @pytest.mark.parametrize("body", [
        "ff(1), ff(1) := 3, 4",
        "ff(1), ff(3 - 2) := 3, 3",
        "ff, ff(1) := {1 |-> 0, 2 |-> 0}, 5",
    ])
    def test_function_point_double_write(self, body):
        """Test two writes to one function clash when they reach the same point."""
        animator = table_animator(body)
        root = animator.initialise().states[0]
        with pytest.raises(DoubleWriteError, match="writes ff twice"):
            animator.execute_operation(root, "put")

    def test_distinct_function_points(self):
        """Test one assignment may write a function at two different points."""
        animator = table_animator("ff(1), ff(2) := 3, 4")
        successors = animator.execute_operation(animator.initialise().states[0], "put")
        assert successors.states[0].get("ff") == frozenset({(1, 3), (2, 4)})

    def test_initialisation_must_bind_every_variable(self):
        """Test INITIALISATION leaving y unbound is reported."""
        # Arrange
        animator = machine_with("noop = skip", initialisation="x := 0").animator()

        # Act / Assert
        with pytest.raises(UninitialisedVariable):
            animator.initialise()

    def test_unassigned_output(self):
        """Test an operation must assign each of its outputs."""
        # Arrange
        animator = machine_with("rr <-- peek = IF x > 5 THEN rr := x END").animator()

        # Act / Assert
        with pytest.raises(EvaluationError, match="output rr is never assigned"):
            animator.execute_operation(State({}, {"x": 0, "y": 0}), "peek")


class TestStandaloneSubstitutions:
    """Test cases for exec_substitution outside a machine."""

    def test_free_variables_come_from_state(self):
        """Test a standalone substitution updates the given state."""
        # Arrange
        unit = TypeChecker(allow_free=True).infer(parse_substitution(tokenize("x := x + 1")))
        env = Environment(EvalConfig())

        # Act
        successors = exec_substitution(unit.root, env, State({}, {"x": 4}))

        # Assert
        assert successors.states == [State({}, {"x": 5})]

    def test_environment_is_restored(self):
        """Test the state frame holds the pre-state again afterwards."""
        # Arrange
        unit = TypeChecker(allow_free=True).infer(parse_substitution(tokenize("x :: {1, 2}")))
        env = Environment(EvalConfig())

        # Act
        exec_substitution(unit.root, env, State({}, {"x": 9}))

        # Assert
        assert env.lookup("x") == 9


class TestUnpack:
    def test_left_nested_pairs(self):
        """Test a nested pair is spread over three names."""
        assert unpack(["a", "b", "c"], ((1, 2), 3)) == {"a": 1, "b": 2, "c": 3}


STEPS = [
    "skip",
    "x := (x + 1) mod 4",
    "y := x",
    "x, y := y, x",
    "x :: {0, 1, 2}",
    "CHOICE x := 0 OR y := 1 END",
    "ANY z WHERE z : 0..2 THEN y := z END",
    "IF x > 1 THEN x := 0 ELSE y := (y + 1) mod 4 END",
    "SELECT x = 0 THEN y := 2 WHEN y = 0 THEN x := 3 END",
    "PRE x < 3 THEN x := x + 1 END",
]
small = st.integers(min_value=0, max_value=3)


class TestSequentialComposition:
    @pytest.mark.property
    @settings(max_examples=100)
    @given(st.sampled_from(STEPS), st.sampled_from(STEPS), small, small)
    def test_sequence_is_relational_composition(self, first, second, x, y):
        """Test T1 ; T2 reaches exactly the T2-successors of the T1-successors."""
        # Act
        composed = run("step", f"{first} ; {second}", x=x, y=y)
        middle = run("step", first, x=x, y=y)

        # Assert
        expected = set()
        for successor in middle:
            state = successor.state
            expected.update(run("step", second, x=state.get("x"), y=state.get("y")).states)
        assert set(composed.states) == expected
