"""
Port interfaces for the domain layer.

Machines, state files and traces are read and written through this port.
"""

from src.domain.ports.file_system import FileSystem

__all__ = [
    "FileSystem",
]
