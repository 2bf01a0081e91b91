import fnmatch
import logging
import os
from typing import List, Optional

from src.domain.ports.file_system import FileSystem


class FileSystemAdapter(FileSystem):
    """
    FileSystem port on the local disk.

    Machines, state files and traces are read as UTF-8 text.
    """

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def read_file(self, path: str) -> str:
        """
        Read a text file.

        Raises:
            FileNotFoundError: If the file does not exist
        """
        try:
            with open(path, "r", encoding="utf-8") as file:
                return file.read()
        except FileNotFoundError:
            self.logger.error(f"File not found: {path}")
            raise
        except Exception as e:
            self.logger.error(f"Error reading file {path}: {str(e)}")
            raise

    def write_file(self, path: str, content: str) -> bool:
        try:
            directory = os.path.dirname(path)
            if directory and not os.path.exists(directory):
                os.makedirs(directory)
            with open(path, "w", encoding="utf-8") as file:
                file.write(content)
            return True
        except OSError as e:
            self.logger.error(f"Error writing to file {path}: {str(e)}")
            return False

    def list_files(self, directory: str, pattern: Optional[str] = None) -> List[str]:
        """
        Files directly inside ``directory``, sorted by name.

        Raises:
            ValueError: If ``directory`` is not a directory
        """
        if not os.path.isdir(directory):
            self.logger.error(f"Directory not found: {directory}")
            raise ValueError(f"Directory not found: {directory}")
        return sorted(
            os.path.join(directory, name)
            for name in os.listdir(directory)
            if os.path.isfile(os.path.join(directory, name))
            and (pattern is None or fnmatch.fnmatch(name, pattern))
        )

    def file_exists(self, path: str) -> bool:
        return os.path.isfile(path)
