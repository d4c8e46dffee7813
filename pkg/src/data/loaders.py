"""
Readers for trdiff artifacts (probe CSVs, VTK volumes, reports).
"""

from pathlib import Path
from typing import Dict, Tuple

import numpy as np
import pandas as pd

from src.grid.fields import SPECIES_LABELS
from src.utils.errors import ConfigurationError
from src.utils.logger import get_logger

logger = get_logger(__name__)


def read_probe_csv(file_path: str | Path) -> pd.DataFrame:
    """Load a probe CSV written by write_probe_csv."""
    df = pd.read_csv(file_path, dtype=float)
    if list(df.columns) != ["coord", *SPECIES_LABELS]:
        raise ConfigurationError(f"{file_path}: unexpected probe columns {list(df.columns)}")
    return df


def read_volume(file_path: str | Path) -> Tuple[Dict[str, np.ndarray], np.ndarray]:
    """
    Load a legacy VTK ASCII STRUCTURED_POINTS file with cell scalars.

    Args:
        file_path: Path to the .vtk file

    Returns:
        (header dict with 'dimensions', 'origin', 'spacing', temperatures (3, nx, ny, nz))
    """
    lines = Path(file_path).read_text(encoding="utf-8").split("\n")
    header: Dict[str, np.ndarray] = {}
    fields: Dict[str, np.ndarray] = {}

    position = 3
    n_values = None
    while position < len(lines):
        parts = lines[position].split()
        position += 1
        if not parts:
            continue
        keyword = parts[0].upper()
        if keyword == "DIMENSIONS":
            header["dimensions"] = np.array(parts[1:4], dtype=int)
        elif keyword in ("ORIGIN", "SPACING"):
            header[keyword.lower()] = np.array(parts[1:4], dtype=float)
        elif keyword == "CELL_DATA":
            n_values = int(parts[1])
        elif keyword == "SCALARS":
            if n_values is None:
                raise ConfigurationError(f"{file_path}: SCALARS before CELL_DATA")
            if lines[position].split()[0].upper() == "LOOKUP_TABLE":
                position += 1
            block = lines[position:position + n_values]
            fields[parts[1]] = np.array(block, dtype=float)
            position += n_values

    if "dimensions" not in header:
        raise ConfigurationError(f"{file_path}: missing DIMENSIONS")
    missing = [label for label in SPECIES_LABELS if label not in fields]
    if missing:
        raise ConfigurationError(f"{file_path}: missing scalars {missing}")

    cells = tuple(int(n) - 1 for n in header["dimensions"])
    temperature = np.stack([fields[label].reshape(cells, order="F") for label in SPECIES_LABELS])
    logger.debug(f"Loaded volume {file_path} with cells {cells}")
    return header, temperature


def read_report(file_path: str | Path) -> Dict[str, str]:
    """Load a key = value report."""
    values: Dict[str, str] = {}
    for line in Path(file_path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            key, _, value = line.partition(" = ")
            values[key.strip()] = value.strip()
    return values
