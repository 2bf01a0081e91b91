"""Infrastructure layer implementing the interfaces defined in the domain."""

from src.infrastructure.adapters.file_system_adapter import FileSystemAdapter

__all__ = [
    "FileSystemAdapter"
]
