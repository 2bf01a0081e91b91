"""Adapters connecting the domain ports to the outside world."""

from src.infrastructure.adapters.file_system_adapter import FileSystemAdapter

__all__ = [
    "FileSystemAdapter"
]
