"""
DEFINITIONS macro expansion.
"""
import logging
from dataclasses import replace
from typing import Dict, Iterable, Union

from src.application.syntax.ast_utils import substitute_identifiers
from src.domain.entities.ast_node import AstNode, Definition, MachineAst, NodeKind as K, ParseUnit
from src.domain.exceptions import ArityError, CyclicDefinitionError

logger = logging.getLogger(__name__)

MAX_EXPANSION_DEPTH = 500


class DefinitionExpander:
    """
    Replace every DefinitionCall node by the called body, with actual
    arguments substituted for the formal parameters, until none remain.
    """

    def __init__(self, definitions: Iterable[Definition]):
        self.definitions: Dict[str, Definition] = {d.name: d for d in definitions}

    def expand(self, node: AstNode, depth: int = 0) -> AstNode:
        """
        Expand one tree.

        Raises:
            ArityError: If a call passes the wrong number of arguments
            CyclicDefinitionError: If expansion nests deeper than MAX_EXPANSION_DEPTH
        """
        if node.kind == K.DEFINITION_CALL:
            return self._expand_call(node, depth)
        children = [self.expand(child, depth) for child in node.children]
        return AstNode(node.kind, children, node.payload, node.span)

    def _expand_call(self, call: AstNode, depth: int) -> AstNode:
        if depth >= MAX_EXPANSION_DEPTH:
            raise CyclicDefinitionError(
                f"expansion of {call.payload} does not terminate", call.span)
        definition = self.definitions.get(call.payload)
        if definition is None:
            raise ArityError(f"unknown definition {call.payload}", call.span)
        if len(call.children) != len(definition.params):
            raise ArityError(
                f"{definition.name} expects {len(definition.params)} arguments, "
                f"got {len(call.children)}", call.span)
        arguments = [self.expand(arg, depth) for arg in call.children]
        body = substitute_identifiers(definition.body, dict(zip(definition.params, arguments)))
        return self.expand(body, depth + 1)


def expand_definitions(unit: Union[ParseUnit, MachineAst],
                       definitions: Iterable[Definition] = None) -> Union[ParseUnit, MachineAst]:
    """
    Return a definition-free copy of a parse unit or machine.

    Args:
        unit: What to expand
        definitions: Macros to use; a machine's own DEFINITIONS when omitted

    Raises:
        ArityError: On a call with the wrong number of arguments
        CyclicDefinitionError: When expansion does not reach a fixed point
    """
    if definitions is None:
        definitions = unit.definitions if isinstance(unit, MachineAst) else []
    expander = DefinitionExpander(definitions)
    try:
        if isinstance(unit, ParseUnit):
            return ParseUnit(unit.variant, expander.expand(unit.root))
        return _expand_machine(unit, expander)
    except RecursionError:
        raise CyclicDefinitionError("definition expansion nests too deeply") from None


def _expand_machine(machine: MachineAst, expander: DefinitionExpander) -> MachineAst:
    def maybe(node):
        return expander.expand(node) if node is not None else None

    operations = [replace(op, body=expander.expand(op.body), param_types={})
                  for op in machine.operations]
    expanded = replace(
        machine,
        enumerated_sets=dict(machine.enumerated_sets),
        deferred_sets=list(machine.deferred_sets),
        constants=list(machine.constants),
        variables=list(machine.variables),
        properties=maybe(machine.properties),
        invariant=maybe(machine.invariant),
        assertions=[expander.expand(a) for a in machine.assertions],
        initialisation=maybe(machine.initialisation),
        operations=operations,
        definitions=[],
        symbol_types={},
    )
    logger.debug(f"Expanded {len(expander.definitions)} definitions in {machine.name}")
    return expanded
