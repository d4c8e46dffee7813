"""
Artifact writers for trdiff.

Every writer renders the full file text first and then replaces the target
atomically, so an error never leaves a partial artifact behind.
"""

import io
from pathlib import Path
from typing import Dict, Mapping, Optional

import numpy as np
import pandas as pd

from src.benchmarks.probes import ProbeLine, probe_frame
from src.grid.fields import SPECIES_LABELS
from src.grid.structured_grid import StructuredGrid
from src.utils.errors import ConfigurationError
from src.utils.file_utils import FLOAT_FORMAT, atomic_write_text, format_float
from src.utils.logger import get_logger

logger = get_logger(__name__)

PROBE_COLUMNS = ["coord", *SPECIES_LABELS]


def frame_to_csv_text(df: pd.DataFrame) -> str:
    """CSV text with full-precision floats and LF line endings."""
    return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_probe_csv(
    temperature: np.ndarray,
    grid: StructuredGrid,
    line: Optional[ProbeLine],
    output_path: str | Path
) -> Path:
    """
    Write temperatures along a probe line.

    Args:
        temperature: Interior temperatures (3, nx, ny, nz)
        grid: Grid
        line: Probe line aligned with a cell row (or snapped)
        output_path: Destination CSV

    Returns:
        Path of the written file

    Raises:
        ConfigurationError: Missing or misaligned line; nothing is written
    """
    if line is None:
        raise ConfigurationError(f"No probe line given for {output_path}")

    df = probe_frame(temperature, grid, line)
    path = atomic_write_text(output_path, frame_to_csv_text(df[PROBE_COLUMNS]))
    logger.debug(f"Probe {line.name}: {len(df)} cells -> {path}")
    return path


def write_table_csv(df: pd.DataFrame, output_path: str | Path) -> Path:
    """Write a benchmark table (errors, bounds, histories) as CSV."""
    return atomic_write_text(output_path, frame_to_csv_text(df))


def volume_text(temperature: np.ndarray, grid: StructuredGrid, title: str = "trdiff") -> str:
    """
    Legacy VTK ASCII STRUCTURED_POINTS text with Te, Ti, Tr as cell data.

    Values are listed with x varying fastest.
    """
    temperature = np.asarray(temperature, dtype=float)
    expected = (3,) + tuple(grid.n_cells)
    if temperature.shape != expected:
        raise ConfigurationError(f"Volume field has shape {temperature.shape}, expected {expected}")

    dims = " ".join(str(n + 1) for n in grid.n_cells)
    origin = " ".join(format_float(v) for v in grid.domain_lo)
    spacing = " ".join(format_float(v) for v in grid.spacing)

    buffer = io.StringIO()
    buffer.write("# vtk DataFile Version 3.0\n")
    buffer.write(f"{title.splitlines()[0][:255] if title else 'trdiff'}\n")
    buffer.write("ASCII\n")
    buffer.write("DATASET STRUCTURED_POINTS\n")
    buffer.write(f"DIMENSIONS {dims}\n")
    buffer.write(f"ORIGIN {origin}\n")
    buffer.write(f"SPACING {spacing}\n")
    buffer.write(f"CELL_DATA {grid.n_interior}\n")
    for species, label in enumerate(SPECIES_LABELS):
        buffer.write(f"SCALARS {label} double 1\n")
        buffer.write("LOOKUP_TABLE default\n")
        np.savetxt(buffer, temperature[species].ravel(order="F"), fmt=FLOAT_FORMAT)
    return buffer.getvalue()


def write_volume(
    temperature: np.ndarray,
    grid: StructuredGrid,
    output_path: str | Path,
    title: str = "trdiff"
) -> Path:
    """
    Write a legacy VTK volume of interior temperatures.

    Raises:
        OSError: Write failure (message includes the path)
    """
    text = volume_text(temperature, grid, title)
    try:
        path = atomic_write_text(output_path, text)
    except OSError as e:
        raise OSError(f"Cannot write volume {output_path}: {e}") from e
    logger.debug(f"Volume written: {path}")
    return path


def report_text(values: Mapping[str, str]) -> str:
    return "".join(f"{key} = {value}\n" for key, value in values.items())


def write_report(values: Dict[str, str], output_path: str | Path) -> Path:
    """Write the machine-readable key = value report."""
    path = atomic_write_text(output_path, report_text(values))
    logger.info(f"Report written: {path}")
    return path


class RunArtifacts:
    """
    File layout of one run directory.

        probes/<run>_<probe>_t<t>.csv
        volumes/<run>_t<t>.vtk
        histories/<run>_<point>.csv
        tables/<name>.csv

    Args:
        out_dir: Run output directory
        volumes: Write a volume at every checkpoint
    """

    def __init__(self, out_dir: str | Path, volumes: bool = False):
        self.out_dir = Path(out_dir)
        self.volumes = volumes
        self.written: list = []

    def probe(self, run: str, line: ProbeLine, t: float, temperature: np.ndarray,
              grid: StructuredGrid) -> Path:
        path = self.out_dir / "probes" / f"{run}_{line.name}_t{format_float(t)}.csv"
        self.written.append(write_probe_csv(temperature, grid, line, path))
        return path

    def volume(self, run: str, t: float, temperature: np.ndarray, grid: StructuredGrid) -> Optional[Path]:
        if not self.volumes:
            return None
        path = self.out_dir / "volumes" / f"{run}_t{format_float(t)}.vtk"
        self.written.append(write_volume(temperature, grid, path, title=f"{run} t={format_float(t)}"))
        return path

    def history(self, run: str, name: str, df: pd.DataFrame) -> Path:
        path = self.out_dir / "histories" / f"{run}_{name}.csv"
        self.written.append(write_table_csv(df, path))
        return path

    def table(self, name: str, df: pd.DataFrame) -> Path:
        path = self.out_dir / "tables" / f"{name}.csv"
        self.written.append(write_table_csv(df, path))
        return path
