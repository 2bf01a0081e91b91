"""
Interactive animation: choose among the initial states, then among the
successors of the enabled operations, with backtracking.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional

from src.application.services.machine_loader import LoadedMachine
from src.application.validation.state_file_reader import render_state_file
from src.domain.entities.machine_state import State
from src.domain.entities.verdict import Verdict
from src.domain.exceptions import EvaluationError
from src.domain.ports.file_system import FileSystem


@dataclass
class Choice:
    """One numbered entry offered to the user."""
    label: str
    state: Optional[State] = None
    error: Optional[EvaluationError] = None


class AnimationSession:
    """
    Use case driving one animation of a machine.

    Before the first choice the options are the initial states; afterwards
    they are one entry per (operation instance, successor) of the current
    state. Operations that fail to evaluate are listed with their error and
    cannot be chosen.
    """

    def __init__(self, machine: LoadedMachine, file_system: Optional[FileSystem] = None):
        self.machine = machine
        self.file_system = file_system
        self.animator = machine.animator()
        self.state_space = self.animator.state_space
        self._roots: Optional[List[State]] = None
        self.logger = logging.getLogger(__name__)

    @property
    def current(self) -> Optional[State]:
        return self.state_space.current

    def choices(self) -> List[Choice]:
        """
        Options from the current position.

        Raises:
            EvaluationError: If PROPERTIES or INITIALISATION cannot be evaluated
        """
        if self.current is None:
            if self._roots is None:
                self._roots = self.animator.initialise().states
            return [Choice("INITIALISATION", state) for state in self._roots]
        result = []
        for instance in self.animator.enabled_operations(self.current, strict=False):
            if instance.error is not None:
                result.append(Choice(f"{instance.name}: {instance.error}", error=instance.error))
                continue
            for successor in instance.successors:
                result.append(Choice(str(instance.label(successor.outputs)), successor.state))
        return result

    def choose(self, index: int) -> State:
        """
        Move to the state of option ``index`` (counted from 1).

        Raises:
            IndexError: If there is no such option
            EvaluationError: If the option is an operation that failed
        """
        options = self.choices()
        if not 1 <= index <= len(options):
            raise IndexError(f"choose a number between 1 and {len(options)}")
        choice = options[index - 1]
        if choice.error is not None:
            raise choice.error
        self.logger.debug(f"Chose {choice.label}")
        return self.state_space.move_to(self.state_space.add_state(choice.state))

    def backtrack(self) -> State:
        """
        Step back to the previous state.

        Raises:
            AtRootState: If the current state is the first one chosen
        """
        return self.state_space.backtrack()

    def invariant(self) -> Optional[Verdict]:
        if self.current is None:
            return None
        return self.animator.check_invariant(self.current)

    def save(self, path: str) -> str:
        """
        Write the current state as a state file.

        Raises:
            ValueError: If no state has been chosen yet or nothing can be written
            OSError: If the file cannot be written
        """
        if self.file_system is None:
            raise ValueError("File system is required for this operation")
        if self.current is None:
            raise ValueError("no state to save yet")
        if not self.file_system.write_file(path, render_state_file(self.current)):
            raise OSError(f"could not write {path}")
        self.logger.info(f"Saved state {self.current.id} to {path}")
        return path
