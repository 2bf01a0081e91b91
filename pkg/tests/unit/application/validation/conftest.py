from pathlib import Path

import pytest

from src.application.services.machine_loader import MachineLoader
from src.domain.entities.eval_config import EvalConfig


@pytest.fixture
def read_fixture(fixture_path):
    """Text of a file under tests/fixtures."""
    def _read(name: str) -> str:
        return Path(fixture_path(name)).read_text()
    return _read


@pytest.fixture
def cruise(read_fixture):
    """The typed cruise controller machine."""
    return MachineLoader(None, EvalConfig()).load_text(read_fixture("cruise.mch"), "cruise.mch")
