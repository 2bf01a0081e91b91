"""
Runtime bindings for the interpreter.

The environment is a stack of frames. Frame 0 holds the given sets and
their elements, frame 1 the machine state (constants and variables), and
every quantifier, comprehension, lambda, operation call or ANY pushes a
frame of its own on top.
"""
import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Mapping, Optional

from src.application.interpreter.set_algebra import SetAlgebra
from src.domain.entities.ast_node import MachineAst
from src.domain.entities.bvalues import ElementValue
from src.domain.entities.eval_config import EvalConfig
from src.domain.entities.machine_state import State
from src.domain.exceptions import MissingBinding, UnknownIdentifier

logger = logging.getLogger(__name__)

SETS_FRAME = 0
STATE_FRAME = 1


def deferred_element_names(set_name: str, cardinality: int) -> List[str]:
    """Names given to the elements of a deferred set: ``D1``, ``D2``, ..."""
    return [f"{set_name}{i}" for i in range(1, cardinality + 1)]


class Environment:
    """
    Frame stack of identifier bindings.

    Args:
        config: Evaluation limits shared by everything evaluated here
        machine: Machine whose sets are instantiated in frame 0
    """

    def __init__(self, config: Optional[EvalConfig] = None,
                 machine: Optional[MachineAst] = None):
        self.config = config or EvalConfig()
        self.machine = machine
        self.algebra = SetAlgebra(self.config)
        self.frames: List[Dict[str, Any]] = [{}, {}]
        self.given_sets: Dict[str, List[ElementValue]] = {}
        if machine is not None:
            self._instantiate_sets(machine)

    def _instantiate_sets(self, machine: MachineAst) -> None:
        frame = self.frames[SETS_FRAME]
        for set_name, names in machine.enumerated_sets.items():
            elements = [ElementValue(set_name, name, i) for i, name in enumerate(names)]
            self._declare_set(frame, set_name, elements)
        for set_name in machine.deferred_sets:
            names = deferred_element_names(set_name, self.config.deferred_set_card)
            elements = [ElementValue(set_name, name, i) for i, name in enumerate(names)]
            self._declare_set(frame, set_name, elements)
            logger.debug(f"Deferred set {set_name} instantiated with {len(elements)} elements")

    def _declare_set(self, frame: Dict[str, Any], set_name: str,
                     elements: List[ElementValue]) -> None:
        self.given_sets[set_name] = elements
        frame[set_name] = frozenset(elements)
        for element in elements:
            frame.setdefault(element.name, element)

    def elements_of(self, set_name: str) -> List[ElementValue]:
        """Elements of a given set in declaration order."""
        if set_name not in self.given_sets:
            raise UnknownIdentifier(set_name)
        return self.given_sets[set_name]

    # frames

    @property
    def depth(self) -> int:
        return len(self.frames)

    def push_frame(self, bindings: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
        frame = dict(bindings or {})
        self.frames.append(frame)
        return frame

    def pop_frame(self) -> Dict[str, Any]:
        if len(self.frames) <= STATE_FRAME + 1:
            raise IndexError("cannot pop the set or state frame")
        return self.frames.pop()

    @contextmanager
    def scope(self, bindings: Optional[Mapping[str, Any]] = None) -> Iterator[Dict[str, Any]]:
        """Push a frame for the duration of a ``with`` block."""
        depth = len(self.frames)
        frame = self.push_frame(bindings)
        try:
            yield frame
        finally:
            del self.frames[depth:]

    def bind(self, name: str, value: Any) -> None:
        """Write the innermost frame that binds ``name``, or the top frame."""
        for frame in reversed(self.frames):
            if name in frame:
                frame[name] = value
                return
        self.frames[-1][name] = value

    def lookup(self, name: str) -> Any:
        for frame in reversed(self.frames):
            if name in frame:
                return frame[name]
        raise UnknownIdentifier(name)

    def is_bound(self, name: str) -> bool:
        return any(name in frame for frame in self.frames)

    # machine state

    def load(self, constants: Mapping[str, Any], variables: Mapping[str, Any]) -> None:
        """Replace the contents of the state frame."""
        frame = self.frames[STATE_FRAME]
        frame.clear()
        frame.update(constants)
        frame.update(variables)

    def restore(self, state: State) -> None:
        self.load(state.constants, state.variables)

    def snapshot(self) -> State:
        """
        Capture the machine state held in the state frame.

        Raises:
            MissingBinding: If a declared constant or variable is unbound
        """
        if self.machine is None:
            return State({}, self.frames[STATE_FRAME])
        frame = self.frames[STATE_FRAME]
        values: Dict[str, Any] = {}
        for name in self.machine.constants + self.machine.variables:
            if name not in frame:
                raise MissingBinding(name)
            values[name] = frame[name]
        constants = {name: values[name] for name in self.machine.constants}
        variables = {name: values[name] for name in self.machine.variables}
        return State(constants, variables)
