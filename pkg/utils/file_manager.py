import logging
import os
from pathlib import Path

from utils.config import get_output_dir

logger = logging.getLogger(__name__)


class FileManager:
    """Manage table and report output files."""

    ALLOWED_FORMATS = {"csv", "json"}

    @staticmethod
    def create_output_folder(folder: str = None) -> str:
        """Create the output folder if needed and return its path."""
        folder = folder or get_output_dir()
        if not os.path.exists(folder):
            os.makedirs(folder)
            logger.info(f"Created output folder: {folder}")
        return folder

    @staticmethod
    def get_file_extension(filename: str) -> str:
        """Get file extension without the dot."""
        return Path(filename).suffix.lower().lstrip(".")

    @staticmethod
    def is_valid_output(filename: str) -> bool:
        """Check that the file name carries a supported table format."""
        return FileManager.get_file_extension(filename) in FileManager.ALLOWED_FORMATS

    @staticmethod
    def default_path(name: str, fmt: str) -> str:
        """Path inside the output folder for an export called `name`."""
        return os.path.join(FileManager.create_output_folder(), f"{name}.{fmt}")

    @staticmethod
    def write_text(file_path: str, text: str) -> bool:
        """Write a rendered table or report, creating parent folders."""
        try:
            directory = os.path.dirname(file_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(file_path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            logger.info(f"Wrote {FileManager.get_file_size(file_path)} bytes to {file_path}")
            return True
        except OSError as e:
            logger.error(f"Error writing {file_path}: {e}")
            return False

    @staticmethod
    def get_file_size(file_path: str) -> int:
        """Get file size in bytes."""
        try:
            return os.path.getsize(file_path)
        except OSError as e:
            logger.error(f"Error getting file size: {e}")
            return 0
