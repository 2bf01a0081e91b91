from pathlib import Path
from unittest.mock import Mock

import pytest

from src.application.usecases.machine_checking import (
    CheckStateUseCase,
    CheckTraceUseCase,
    TypecheckMachineUseCase,
)
from src.domain.entities.verdict import Claim, Outcome
from src.domain.exceptions import StateFileError
from src.infrastructure.adapters.file_system_adapter import FileSystemAdapter


class TestTypecheckMachineUseCase:
    """Test cases for the typecheck use case."""

    def test_cruise_types(self, loader, fixture_path):
        """Test every constant, variable, parameter and output is listed."""
        # Act
        report = TypecheckMachineUseCase(loader).execute(fixture_path("cruise.mch"))

        # Assert
        assert report.machine == "Cruise"
        assert report.entries == [
            ("MAX_SPEED", "INTEGER"),
            ("mode", "MODE"),
            ("speed", "INTEGER"),
            ("target", "INTEGER"),
            ("engaged", "BOOL"),
            ("set_target.tt", "INTEGER"),
            ("read_speed.ss", "INTEGER"),
        ]
        assert report.render().splitlines()[1] == "mode : MODE"

    def test_deferred_set_parameter(self, loader, fixture_path):
        """Test parameters typed by a deferred set."""
        report = TypecheckMachineUseCase(loader).execute(fixture_path("scheduler.mch"))
        assert ("active", "POW(PID)") in report.entries
        assert ("new.pp", "PID") in report.entries


class TestCheckStateUseCase:
    """Test cases for double-checking state files."""

    @pytest.fixture
    def use_case(self, loader):
        return CheckStateUseCase(loader, FileSystemAdapter())

    def test_ok_state(self, use_case, fixture_path):
        """Test a consistent state is OK."""
        verdict = use_case.execute(fixture_path("cruise.mch"), fixture_path("cruise_ok.state"))
        assert verdict.outcome == Outcome.OK

    def test_claim_agreement(self, use_case, fixture_path):
        """Test a correct violation claim agrees."""
        verdict = use_case.execute(fixture_path("cruise.mch"), fixture_path("cruise_mutated.state"),
                                   Claim.VIOLATION)
        assert verdict.outcome == Outcome.AGREE
        assert verdict.claim == Claim.VIOLATION

    def test_unevaluable_state_is_an_error(self, use_case, fixture_path, tmp_path):
        """Test a state whose values cannot be evaluated gives an ERROR verdict."""
        # Arrange
        state = tmp_path / "bad.state"
        state.write_text("#PREDICATE MAX_SPEED = 5 & mode = OFF & speed = 1 / 0 & "
                         "target = 0 & engaged = FALSE\n")

        # Act
        verdict = use_case.execute(fixture_path("cruise.mch"), str(state))

        # Assert
        assert verdict.outcome == Outcome.ERROR
        assert "cannot evaluate speed" in verdict.diagnostic

    def test_external_function_is_an_error(self, use_case, fixture_path, tmp_path):
        """Test a value calling a function B does not define gives an ERROR verdict."""
        # Arrange
        state = tmp_path / "external.state"
        state.write_text("#PREDICATE MAX_SPEED = 5 & mode = OFF & speed = append(1, 2) & "
                         "target = 0 & engaged = FALSE\n")

        # Act
        verdict = use_case.execute(fixture_path("cruise.mch"), str(state), Claim.OK)

        # Assert
        assert verdict.outcome == Outcome.ERROR
        assert verdict.claim == Claim.OK
        assert "append" in verdict.diagnostic

    def test_malformed_state_file(self, use_case, fixture_path, tmp_path):
        """Test a malformed state file is an input error."""
        state = tmp_path / "bad.state"
        state.write_text("mode = OFF\n")
        with pytest.raises(StateFileError):
            use_case.execute(fixture_path("cruise.mch"), str(state))

    @pytest.mark.parametrize("jobs", [1, 3])
    def test_execute_many_keeps_order(self, use_case, fixture_path, jobs):
        """Test several states are checked and reported in input order."""
        # Arrange
        paths = [fixture_path("cruise_mutated.state"), fixture_path("cruise_ok.state")] * 2

        # Act
        results = use_case.execute_many(fixture_path("cruise.mch"), paths, jobs=jobs)

        # Assert
        assert [path for path, _ in results] == paths
        assert [v.outcome for _, v in results] == [
            Outcome.VIOLATION, Outcome.OK, Outcome.VIOLATION, Outcome.OK]

    def test_state_files_read_through_port(self, loader, fixture_path):
        """Test state files are read from the injected file system."""
        # Arrange
        file_system = Mock()
        file_system.read_file.return_value = (
            "#PREDICATE MAX_SPEED = 5 & mode = OFF & speed = 0 & target = 0 & engaged = FALSE")

        # Act
        verdict = CheckStateUseCase(loader, file_system).execute(
            fixture_path("cruise.mch"), "memory.state")

        # Assert
        file_system.read_file.assert_called_once_with("memory.state")
        assert verdict.outcome == Outcome.OK


class TestCheckTraceUseCase:
    """Test cases for replaying trace files."""

    @pytest.fixture
    def use_case(self, loader):
        return CheckTraceUseCase(loader, FileSystemAdapter())

    def test_matching_trace(self, use_case, fixture_path):
        """Test the sample trace agrees."""
        verdict = use_case.execute(fixture_path("cruise.mch"), fixture_path("cruise.trace"))
        assert verdict.outcome == Outcome.AGREE

    def test_bad_trace(self, use_case, fixture_path):
        """Test the faulty trace disagrees at its second step."""
        verdict = use_case.execute(fixture_path("cruise.mch"), fixture_path("cruise_bad.trace"))
        assert verdict.outcome == Outcome.DISAGREE
        assert verdict.steps[-1].operation == "accelerate"


class TestStateDirectories:
    """Test cases for directories given as state paths."""

    def test_directory_expands_to_state_files(self, loader, fixture_path, tmp_path):
        """Test a directory stands for the state files inside it."""
        # Arrange
        for name in ["cruise_ok.state", "cruise_mutated.state"]:
            (tmp_path / name).write_text(Path(fixture_path(name)).read_text())
        (tmp_path / "notes.txt").write_text("ignored")
        use_case = CheckStateUseCase(loader, FileSystemAdapter())

        # Act
        results = use_case.execute_many(fixture_path("cruise.mch"), [str(tmp_path)])

        # Assert
        assert [p.rsplit("/", 1)[-1] for p, _ in results] == [
            "cruise_mutated.state", "cruise_ok.state"]
        assert [v.outcome for _, v in results] == [Outcome.VIOLATION, Outcome.OK]

    def test_empty_directory(self, loader, fixture_path, tmp_path):
        """Test a directory without state files is rejected."""
        use_case = CheckStateUseCase(loader, FileSystemAdapter())
        with pytest.raises(ValueError, match="no state files to check"):
            use_case.execute_many(fixture_path("cruise.mch"), [str(tmp_path)])

    def test_missing_path(self, loader, fixture_path, tmp_path):
        """Test a path that is neither file nor directory."""
        use_case = CheckStateUseCase(loader, FileSystemAdapter())
        with pytest.raises(ValueError, match="Directory not found"):
            use_case.execute_many(fixture_path("cruise.mch"), [str(tmp_path / "none.state")])
