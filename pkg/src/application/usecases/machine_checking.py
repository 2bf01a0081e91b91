"""
Use cases for type-checking machines and double-checking states and traces.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from src.application.services.machine_loader import LoadedMachine, MachineLoader
from src.application.validation.state_checker import StateChecker
from src.application.validation.state_file_reader import read_state_file
from src.application.validation.trace_checker import TraceChecker
from src.application.validation.trace_file_reader import read_trace_file
from src.domain.entities.verdict import Claim, Outcome, Verdict
from src.domain.exceptions import EvaluationError, TypeCheckError
from src.domain.ports.file_system import FileSystem

STATE_FILE_PATTERN = "*.state"


@dataclass
class TypecheckReport:
    """Types of a machine's constants, variables and operation parameters."""
    machine: str
    entries: List[Tuple[str, str]] = field(default_factory=list)

    def render(self) -> str:
        return "\n".join(f"{name} : {t}" for name, t in self.entries)


class TypecheckMachineUseCase:
    """Use case for the ``typecheck`` command."""

    def __init__(self, loader: MachineLoader):
        self.loader = loader
        self.logger = logging.getLogger(__name__)

    def execute(self, machine_path: str) -> TypecheckReport:
        """
        Type-check a machine file.

        Raises:
            InputError: On a lexing, parsing or typing error
        """
        machine = self.loader.load(machine_path).machine
        report = TypecheckReport(machine.name)
        for name in machine.constants + machine.variables:
            report.entries.append((name, str(machine.symbol_types[name])))
        for operation in machine.operations:
            for name in operation.params + operation.outputs:
                report.entries.append((f"{operation.name}.{name}",
                                       str(operation.param_types[name])))
        self.logger.info(f"Typed {len(report.entries)} identifier(s) of {machine.name}")
        return report


class CheckStateUseCase:
    """
    Use case for double-checking state files against a machine.

    Every state file gets its own animator, so several files can be
    checked in parallel.
    """

    def __init__(self, loader: MachineLoader, file_system: FileSystem):
        """
        Initialize the use case.

        Args:
            loader: Loader producing the typed machine
            file_system: Source of the state files
        """
        self.loader = loader
        self.file_system = file_system
        self.logger = logging.getLogger(__name__)

    def execute(self, machine_path: str, state_path: str,
                claim: Optional[Claim] = None) -> Verdict:
        """
        Check one state file.

        Returns:
            The verdict; a value that cannot be typed or evaluated gives
            an ERROR verdict

        Raises:
            InputError: If the machine or the state file is malformed
        """
        return self.check(self.loader.load(machine_path), state_path, claim)

    def expand_paths(self, paths: List[str]) -> List[str]:
        """
        Replace every directory among ``paths`` by the ``*.state`` files in it.

        Raises:
            ValueError: If a path is neither a file nor a directory
        """
        expanded = []
        for path in paths:
            if self.file_system.file_exists(path):
                expanded.append(path)
            else:
                found = self.file_system.list_files(path, STATE_FILE_PATTERN)
                self.logger.debug(f"{len(found)} state file(s) in {path}")
                expanded.extend(found)
        return expanded

    def execute_many(self, machine_path: str, state_paths: List[str],
                     claim: Optional[Claim] = None,
                     jobs: int = 1) -> List[Tuple[str, Verdict]]:
        """
        Check several state files, ``jobs`` at a time. Directories stand
        for the state files they contain.

        Returns:
            (path, verdict) pairs in the order of ``state_paths``

        Raises:
            ValueError: If no state file is left after expanding directories
        """
        loaded = self.loader.load(machine_path)
        state_paths = self.expand_paths(state_paths)
        if not state_paths:
            raise ValueError("no state files to check")
        if jobs <= 1 or len(state_paths) <= 1:
            return [(path, self.check(loaded, path, claim)) for path in state_paths]
        self.logger.info(f"Checking {len(state_paths)} state files with {jobs} workers")
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(lambda path: self.check(loaded, path, claim), state_paths))
        return list(zip(state_paths, verdicts))

    def check(self, loaded: LoadedMachine, state_path: str,
              claim: Optional[Claim] = None) -> Verdict:
        state_file = read_state_file(self.file_system.read_file(state_path), state_path)
        try:
            state = loaded.state_loader().load(state_file)
        except (EvaluationError, TypeCheckError) as e:
            self.logger.warning(f"Cannot evaluate state {state_path}: {e}")
            return Verdict(outcome=Outcome.ERROR, claim=claim, diagnostic=str(e))
        return StateChecker(loaded.animator()).check(state, claim)


class CheckTraceUseCase:
    """Use case for replaying a trace file against a machine."""

    def __init__(self, loader: MachineLoader, file_system: FileSystem):
        self.loader = loader
        self.file_system = file_system
        self.logger = logging.getLogger(__name__)

    def execute(self, machine_path: str, trace_path: str, root: int = 0) -> Verdict:
        """
        Replay a trace.

        Args:
            machine_path: Machine file
            trace_path: Trace file
            root: Initial state to start from when the trace has no INIT line

        Raises:
            InputError: If a file is malformed or ``root`` is out of range
        """
        loaded = self.loader.load(machine_path)
        trace = read_trace_file(self.file_system.read_file(trace_path), trace_path)
        self.logger.info(f"Replaying {len(trace.steps)} step(s) from {trace_path}")
        return TraceChecker(loaded.animator(), loaded.state_loader()).check(trace, root)
