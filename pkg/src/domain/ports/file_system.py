from abc import ABC, abstractmethod
from typing import List, Optional


class FileSystem(ABC):
    """
    Port interface for reading machines, state files and trace files.

    Keeps the use cases independent of where the text actually lives.
    """

    @abstractmethod
    def read_file(self, path: str) -> str:
        """
        Read a UTF-8 text file.

        Args:
            path: Path to the file to read

        Returns:
            Contents of the file as a string

        Raises:
            FileNotFoundError: If the file does not exist
        """
        pass

    @abstractmethod
    def write_file(self, path: str, content: str) -> bool:
        """
        Write a report or a rendered state file.

        Returns:
            True if the file was written successfully, False otherwise
        """
        pass

    @abstractmethod
    def list_files(self, directory: str, pattern: Optional[str] = None) -> List[str]:
        """
        List files in a directory, optionally filtered by a glob pattern
        such as ``"*.state"``.
        """
        pass

    @abstractmethod
    def file_exists(self, path: str) -> bool:
        pass
