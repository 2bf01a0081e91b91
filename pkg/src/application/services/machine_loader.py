"""
Service turning machine source text into everything needed to animate and check it.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.application.animation.animator import Animator
from src.application.interpreter.environment import Environment, deferred_element_names
from src.application.syntax.definitions import expand_definitions
from src.application.syntax.lexer import tokenize
from src.application.syntax.parser import parse_machine
from src.application.typechecking.type_checker import TypeChecker, context_for_machine
from src.application.typechecking.type_context import TypeContext
from src.application.validation.state_file_reader import StateLoader
from src.domain.entities.ast_node import Definition, MachineAst
from src.domain.entities.eval_config import EvalConfig
from src.domain.ports.file_system import FileSystem


@dataclass
class LoadedMachine:
    """
    A parsed, expanded and typed machine plus its evaluation settings.

    ``definitions`` keeps the machine's DEFINITIONS so that formulas typed
    at the REPL can use the same macros.
    """
    machine: MachineAst
    config: EvalConfig
    path: str = "<string>"
    definitions: List[Definition] = field(default_factory=list)

    def deferred_elements(self) -> Dict[str, List[str]]:
        return {name: deferred_element_names(name, self.config.deferred_set_card)
                for name in self.machine.deferred_sets}

    def type_context(self) -> TypeContext:
        """Typing context holding the machine's sets, elements and state names."""
        return context_for_machine(self.machine, self.deferred_elements())

    def environment(self) -> Environment:
        return Environment(self.config, self.machine)

    def animator(self) -> Animator:
        """A fresh animator with its own environment and state space."""
        return Animator(self.machine, self.environment())

    def state_loader(self) -> StateLoader:
        return StateLoader(self.machine, self.config)


class MachineLoader:
    """
    Reads machines through the FileSystem port and runs the front end on them.

    Each call produces an independent ``LoadedMachine``; nothing is cached.
    """

    def __init__(self, file_system: Optional[FileSystem], config: EvalConfig):
        """
        Initialize the loader.

        Args:
            file_system: Source of machine files (only needed by ``load``)
            config: Evaluation settings attached to every loaded machine
        """
        self.file_system = file_system
        self.config = config
        self.logger = logging.getLogger(__name__)

    def load(self, path: str) -> LoadedMachine:
        """
        Read, parse and type-check the machine stored at ``path``.

        Raises:
            FileNotFoundError: If the file does not exist
            InputError: If the machine does not lex, parse or type-check
        """
        if self.file_system is None:
            raise ValueError("File system is required for this operation")
        if not self.file_system.file_exists(path):
            raise FileNotFoundError(f"File not found: {path}")
        return self.load_text(self.file_system.read_file(path), path)

    def load_text(self, text: str, path: str = "<string>") -> LoadedMachine:
        """Run the front end on machine text already in memory."""
        parsed = parse_machine(tokenize(text))
        definitions = list(parsed.definitions)
        expanded = expand_definitions(parsed)
        typed = TypeChecker(allow_free=False).check_machine(expanded)
        self.logger.info(
            f"Loaded machine {typed.name} from {path}: {len(typed.constants)} constant(s), "
            f"{len(typed.variables)} variable(s), {len(typed.operations)} operation(s)")
        return LoadedMachine(typed, self.config, path, definitions)
