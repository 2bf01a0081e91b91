from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.domain.entities.ast_node import AstNode
from src.domain.entities.source_span import SourceSpan
from src.domain.exceptions import StateFileError


@dataclass(eq=False)
class StateFile:
    """
    Parsed body of a state file: ``#PREDICATE`` then ``Id = Expr & ...``.

    Args:
        entries: (identifier, value expression) pairs in file order
        path: Where the text came from, for diagnostics
        text: The raw text

    Raises:
        StateFileError: If an identifier is given twice
    """
    entries: List[Tuple[str, AstNode]]
    path: str = "<string>"
    text: str = ""

    def __post_init__(self):
        seen = set()
        for name, node in self.entries:
            if name in seen:
                raise StateFileError(f"{name} is given more than once in {self.path}",
                                     node.span)
            seen.add(name)

    def as_dict(self) -> Dict[str, AstNode]:
        return dict(self.entries)

    @property
    def identifiers(self) -> List[str]:
        return [name for name, _ in self.entries]


@dataclass(eq=False)
class TraceStep:
    """One ``OP name(args) -> #PREDICATE ...`` line."""
    operation: str
    args: List[AstNode]
    post_state: StateFile
    line: int = 0
    span: Optional[SourceSpan] = None


@dataclass(eq=False)
class TraceFile:
    """
    A claimed execution: optional initial state then operation steps.
    """
    steps: List[TraceStep] = field(default_factory=list)
    initial_state: Optional[StateFile] = None
    path: str = "<string>"
