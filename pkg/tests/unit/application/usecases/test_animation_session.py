from unittest.mock import Mock

import pytest

from src.application.services.machine_loader import MachineLoader
from src.application.usecases.animation_session import AnimationSession
from src.domain.entities.eval_config import EvalConfig
from src.domain.entities.verdict import Outcome
from src.domain.exceptions import AtRootState, EvaluationError
from src.domain.ports.file_system import FileSystem


@pytest.fixture
def session(cruise):
    return AnimationSession(cruise)


class TestAnimationSession:
    """Test cases for interactive animation."""

    def test_initial_choices(self, session):
        """Test the first options are the initial states."""
        # Act
        choices = session.choices()

        # Assert
        assert session.current is None
        assert [c.label for c in choices] == ["INITIALISATION"]
        assert session.invariant() is None

    def test_choose_and_continue(self, session):
        """Test choosing moves to a state and lists its successors."""
        # Act
        session.choose(1)
        labels = [c.label for c in session.choices()]

        # Assert
        assert session.current.get("speed") == 0
        assert labels == ["switch_on", "read_speed --> 0"]

    def test_walk_and_backtrack(self, session):
        """Test backtracking returns to the previous state."""
        # Arrange
        session.choose(1)
        session.choose(1)

        # Act
        previous = session.backtrack()

        # Assert
        assert previous.get("mode").name == "OFF"
        with pytest.raises(AtRootState):
            session.backtrack()

    def test_choice_out_of_range(self, session):
        """Test an index outside the options is rejected."""
        with pytest.raises(IndexError, match="between 1 and 1"):
            session.choose(2)

    def test_invariant_of_current_state(self, session):
        """Test the invariant is evaluated on the current state."""
        session.choose(1)
        assert session.invariant().outcome == Outcome.OK

    def test_failing_operation_cannot_be_chosen(self):
        """Test an operation that fails to evaluate is listed with its error."""
        # Arrange
        machine = MachineLoader(None, EvalConfig()).load_text("""
        MACHINE Divide
        VARIABLES x
        INVARIANT x : INT
        INITIALISATION x := 0
        OPERATIONS
          halve = x := 10 / x
        END
        """)
        session = AnimationSession(machine)
        session.choose(1)

        # Act
        choices = session.choices()

        # Assert
        assert choices[0].label.startswith("halve: ")
        with pytest.raises(EvaluationError):
            session.choose(1)


class TestSaveState:
    """Test cases for saving the current state."""

    def test_save_writes_state_file(self, cruise):
        """Test the current state is written as a state file."""
        # Arrange
        file_system = Mock(spec=FileSystem)
        file_system.write_file.return_value = True
        session = AnimationSession(cruise, file_system)
        session.choose(1)

        # Act
        session.save("root.state")

        # Assert
        path, text = file_system.write_file.call_args.args
        assert path == "root.state"
        assert text.startswith("#PREDICATE\nMAX_SPEED = 5 &\n")

    def test_nothing_to_save_before_first_choice(self, cruise):
        """Test saving needs a current state."""
        session = AnimationSession(cruise, Mock(spec=FileSystem))
        with pytest.raises(ValueError, match="no state to save yet"):
            session.save("root.state")

    def test_failed_write(self, cruise):
        """Test a write the file system refuses is an OSError."""
        # Arrange
        file_system = Mock(spec=FileSystem)
        file_system.write_file.return_value = False
        session = AnimationSession(cruise, file_system)
        session.choose(1)

        # Act / Assert
        with pytest.raises(OSError, match="could not write root.state"):
            session.save("root.state")
