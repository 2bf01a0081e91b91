"""
Machine states and the state space visited while animating.
"""
import hashlib
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from src.domain.entities.bvalues import normalize, render_value
from src.domain.exceptions import AtRootState


class StateSpaceValidationError(Exception):
    """Exception raised when a transition refers to an unknown state."""
    pass


class State:
    """
    Immutable valuation of a machine's constants and variables.

    Values are normalized on construction, so two states are equal exactly
    when their bindings are structurally equal.
    """

    __slots__ = ("_constants", "_variables", "_text", "_id")

    def __init__(self, constants: Mapping[str, Any] = None,
                 variables: Mapping[str, Any] = None):
        self._constants = MappingProxyType(
            {k: normalize(v) for k, v in sorted((constants or {}).items())})
        self._variables = MappingProxyType(
            {k: normalize(v) for k, v in sorted((variables or {}).items())})
        self._text = self._render()
        self._id = hashlib.sha256(self._text.encode("utf-8")).hexdigest()[:16]

    @property
    def constants(self) -> Mapping[str, Any]:
        return self._constants

    @property
    def variables(self) -> Mapping[str, Any]:
        return self._variables

    @property
    def id(self) -> str:
        """Content hash of the canonical rendering."""
        return self._id

    def bindings(self) -> Dict[str, Any]:
        merged = dict(self._constants)
        merged.update(self._variables)
        return merged

    def get(self, name: str, default: Any = None) -> Any:
        if name in self._variables:
            return self._variables[name]
        return self._constants.get(name, default)

    def with_variables(self, updates: Mapping[str, Any]) -> "State":
        variables = dict(self._variables)
        variables.update(updates)
        return State(self._constants, variables)

    def _render(self) -> str:
        parts = [f"{k} = {render_value(v)}" for k, v in self._constants.items()]
        parts.append("|")
        parts.extend(f"{k} = {render_value(v)}" for k, v in self._variables.items())
        return "\n".join(parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return (self._text == other._text
                and dict(self._constants) == dict(other._constants)
                and dict(self._variables) == dict(other._variables))

    def __hash__(self) -> int:
        return hash(self._text)

    def __repr__(self) -> str:
        return f"State({self._text.replace(chr(10), ', ')})"


@dataclass(frozen=True)
class OperationLabel:
    """Operation name plus parameter and output valuations of one transition."""
    name: str
    args: Tuple[Tuple[str, Any], ...] = ()
    outputs: Tuple[Tuple[str, Any], ...] = ()

    def __str__(self) -> str:
        text = self.name
        if self.args:
            text += "(" + ",".join(render_value(v) for _, v in self.args) + ")"
        if self.outputs:
            text += " --> " + ",".join(render_value(v) for _, v in self.outputs)
        return text


@dataclass(frozen=True)
class Transition:
    source: str
    label: OperationLabel
    target: str


@dataclass
class StateSpace:
    """
    Every visited state and transition plus the current animation path.

    States and transitions are never removed; backtracking only moves
    along the path.
    """
    _states: Dict[str, State] = field(default_factory=dict)
    _ids: Dict[State, str] = field(default_factory=dict)
    _transitions: Dict[Transition, None] = field(default_factory=dict)
    roots: List[str] = field(default_factory=list)
    path: List[str] = field(default_factory=list)

    @property
    def states(self) -> Mapping[str, State]:
        return MappingProxyType(self._states)

    @property
    def transitions(self) -> List[Transition]:
        return list(self._transitions)

    def __len__(self) -> int:
        return len(self._states)

    def add_state(self, state: State) -> str:
        """
        Store ``state`` and return its id; equal states share one id.
        """
        existing = self._ids.get(state)
        if existing is not None:
            return existing
        state_id = state.id
        suffix = 1
        while state_id in self._states:
            state_id = f"{state.id}-{suffix}"
            suffix += 1
        self._states[state_id] = state
        self._ids[state] = state_id
        return state_id

    def add_root(self, state: State) -> str:
        state_id = self.add_state(state)
        if state_id not in self.roots:
            self.roots.append(state_id)
        return state_id

    def add_transition(self, source: str, label: OperationLabel, target: str) -> Transition:
        """
        Record a transition between two stored states.

        Raises:
            StateSpaceValidationError: If either endpoint is unknown
        """
        for endpoint in (source, target):
            if endpoint not in self._states:
                raise StateSpaceValidationError(f"unknown state id {endpoint}")
        transition = Transition(source, label, target)
        self._transitions[transition] = None
        return transition

    def outgoing(self, source: str) -> Iterator[Transition]:
        return (t for t in self._transitions if t.source == source)

    def state(self, state_id: str) -> State:
        return self._states[state_id]

    @property
    def current(self) -> Optional[State]:
        if not self.path:
            return None
        return self._states[self.path[-1]]

    def move_to(self, state_id: str) -> State:
        if state_id not in self._states:
            raise StateSpaceValidationError(f"unknown state id {state_id}")
        self.path.append(state_id)
        return self._states[state_id]

    def backtrack(self) -> State:
        """
        Step back along the path.

        Raises:
            AtRootState: If the path holds only the initial state
        """
        if len(self.path) <= 1:
            raise AtRootState("cannot backtrack from the initial state")
        self.path.pop()
        return self._states[self.path[-1]]


@dataclass
class Successor:
    """One distinct post-state together with every branch trace reaching it."""
    state: State
    outputs: Tuple[Tuple[str, Any], ...] = ()
    traces: List[Tuple[str, ...]] = field(default_factory=list)


@dataclass
class SuccessorSet:
    """
    Post-states of a substitution, merged when equal.

    Two derivations that end in the same state (and produce the same
    outputs) are one successor with two traces.
    """
    source: Optional[State] = None
    successors: List[Successor] = field(default_factory=list)
    _index: Dict[Tuple[State, tuple], Successor] = field(default_factory=dict, repr=False)

    def add(self, state: State, trace: Tuple[str, ...] = (),
            outputs: Tuple[Tuple[str, Any], ...] = ()) -> Successor:
        outputs = tuple((k, normalize(v)) for k, v in outputs)
        key = (state, outputs)
        successor = self._index.get(key)
        if successor is None:
            successor = Successor(state, outputs)
            self._index[key] = successor
            self.successors.append(successor)
        if trace not in successor.traces:
            successor.traces.append(trace)
        return successor

    def merge(self, other: "SuccessorSet") -> None:
        for successor in other.successors:
            for trace in successor.traces:
                self.add(successor.state, trace, successor.outputs)

    @property
    def states(self) -> List[State]:
        seen: Dict[State, None] = {}
        for successor in self.successors:
            seen.setdefault(successor.state, None)
        return list(seen)

    def __contains__(self, state: object) -> bool:
        return any(s.state == state for s in self.successors)

    def __iter__(self) -> Iterator[Successor]:
        return iter(self.successors)

    def __len__(self) -> int:
        return len(self.successors)
