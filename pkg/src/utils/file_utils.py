"""
File utility functions for trdiff.

Provides helpers for file system operations. Artifacts are written through a
temporary sibling file and renamed into place so a failed run never leaves a
partial file behind.
"""

import os
import tempfile
from pathlib import Path


def ensure_directory(path: Path) -> None:
    """
    Create directory if it doesn't exist.

    Args:
        path: Directory path to create
    """
    path.mkdir(parents=True, exist_ok=True)


def atomic_write_text(path: str | Path, text: str) -> Path:
    """
    Write text with LF line endings, atomically.

    Args:
        path: Destination file
        text: File content

    Returns:
        Destination path
    """
    path = Path(path)
    ensure_directory(path.parent)

    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise

    return path


FLOAT_FORMAT = "%.17g"


def format_float(value: float) -> str:
    """Full-precision decimal text (17 significant digits, trailing zeros dropped)."""
    return FLOAT_FORMAT % float(value)
