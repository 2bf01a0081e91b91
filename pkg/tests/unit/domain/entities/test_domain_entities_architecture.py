import ast
import inspect

import pytest

from src.domain.entities import (
    ast_node,
    btypes,
    bvalues,
    eval_config,
    machine_state,
    source_span,
    state_file,
    verdict,
)

ENTITY_MODULES = [ast_node, btypes, bvalues, eval_config, machine_state, source_span,
                  state_file, verdict]


def imported_modules(module):
    tree = ast.parse(inspect.getsource(module))
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom) and node.module:
            yield node.module
        elif isinstance(node, ast.Import):
            for alias in node.names:
                yield alias.name


class TestDomainEntitiesArchitecture:
    """Test cases for the dependency direction of the domain layer."""

    @pytest.mark.parametrize("module", ENTITY_MODULES, ids=lambda m: m.__name__)
    def test_entities_do_not_import_outer_layers(self, module):
        """Test domain entities depend on nothing from application or infrastructure."""
        for name in imported_modules(module):
            assert not name.startswith("src.application"), f"{module.__name__} imports {name}"
            assert not name.startswith("src.infrastructure"), f"{module.__name__} imports {name}"
