import inspect
from abc import ABC
from typing import List, Optional

import pytest

from src.domain.ports.file_system import FileSystem


class InMemoryFileSystem(FileSystem):
    """Dictionary-backed implementation used to exercise the contract."""

    def __init__(self):
        self.files = {}

    def read_file(self, path: str) -> str:
        if path not in self.files:
            raise FileNotFoundError(f"File not found: {path}")
        return self.files[path]

    def write_file(self, path: str, content: str) -> bool:
        self.files[path] = content
        return True

    def list_files(self, directory: str, pattern: Optional[str] = None) -> List[str]:
        prefix = directory.rstrip("/") + "/"
        names = [p for p in self.files if p.startswith(prefix)]
        if pattern is not None:
            suffix = pattern.lstrip("*")
            names = [p for p in names if p.endswith(suffix)]
        return sorted(names)

    def file_exists(self, path: str) -> bool:
        return path in self.files


class TestFileSystem:
    """Test cases for the FileSystem port."""

    def test_file_system_interface(self):
        """Test that FileSystem declares the methods the use cases call."""
        assert issubclass(FileSystem, ABC)
        for method_name in ["read_file", "write_file", "list_files", "file_exists"]:
            assert method_name in FileSystem.__abstractmethods__

    def test_file_system_independency(self):
        """Test that the port does not reference a concrete storage."""
        source = inspect.getsource(FileSystem).lower()
        for term in ["os.path", "pathlib", "open(", "shutil"]:
            assert term not in source, f"FileSystem should not reference '{term}'"

    def test_cannot_instantiate_port(self):
        """Test the port is abstract."""
        with pytest.raises(TypeError):
            FileSystem()

    def test_file_system_contract(self):
        """Test the contract that implementations must adhere to."""
        # Arrange
        fs = InMemoryFileSystem()

        # Act
        written = fs.write_file("/m/cruise.mch", "MACHINE Cruise END")
        fs.write_file("/m/ok.state", "#PREDICATE btrue")

        # Assert
        assert written
        assert fs.file_exists("/m/cruise.mch")
        assert fs.read_file("/m/cruise.mch") == "MACHINE Cruise END"
        assert fs.list_files("/m", "*.state") == ["/m/ok.state"]
        with pytest.raises(FileNotFoundError):
            fs.read_file("/m/missing.mch")
