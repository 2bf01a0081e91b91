import pytest

from src.application.services.machine_loader import MachineLoader
from src.domain.entities.eval_config import EvalConfig
from src.infrastructure.adapters.file_system_adapter import FileSystemAdapter


@pytest.fixture
def loader():
    """Machine loader reading from the local disk."""
    return MachineLoader(FileSystemAdapter(), EvalConfig())


@pytest.fixture
def cruise(loader, fixture_path):
    return loader.load(fixture_path("cruise.mch"))
