"""
Probe lines and history points.

A probe line runs along one axis through a point; its two fixed coordinates
must sit on a cell-centre row unless `snap` is set, in which case the row of
cells containing the point is used.
"""

from typing import List, Literal, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.grid.fields import SPECIES_LABELS
from src.grid.structured_grid import AXES, StructuredGrid
from src.utils.errors import ConfigurationError

AXIS_INDEX = {name: m for m, name in enumerate(AXES)}


class ProbeLine(BaseModel):
    """Cell row along `axis` through `point`."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., min_length=1)
    axis: Literal["x", "y", "z"]
    point: Tuple[float, float, float]
    snap: bool = Field(False, description="Use the row containing the point instead of requiring alignment")

    @field_validator("name")
    @classmethod
    def plain_name(cls, v: str) -> str:
        if any(c.isspace() or c in ";,=" for c in v):
            raise ValueError(f"probe name '{v}' may not contain spaces or ';,='")
        return v


class HistoryPoint(BaseModel):
    """Cell whose temperatures are recorded after every step."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., min_length=1)
    point: Tuple[float, float, float]

    @field_validator("name")
    @classmethod
    def plain_name(cls, v: str) -> str:
        if any(c.isspace() or c in ";,=" for c in v):
            raise ValueError(f"history name '{v}' may not contain spaces or ';,='")
        return v


def line_index(grid: StructuredGrid, line: ProbeLine) -> Tuple[int, np.ndarray]:
    """
    Resolve a probe line to cells.

    Returns:
        (axis, index tuple selecting the row from an interior (nx, ny, nz) array)
    """
    axis = AXIS_INDEX[line.axis]
    point = list(line.point)
    point[axis] = float(grid.domain_lo[axis] + 0.5 * grid.spacing[axis])
    cell = list(grid.cell_index(point, snap=line.snap))
    index = [slice(None) if m == axis else cell[m] for m in range(3)]
    return axis, tuple(index)


def probe_frame(temperature: np.ndarray, grid: StructuredGrid, line: ProbeLine) -> pd.DataFrame:
    """
    Temperatures along a probe line.

    Args:
        temperature: Interior temperatures (3, nx, ny, nz)
        grid: Grid
        line: Probe line

    Returns:
        DataFrame with columns coord, Te, Ti, Tr; one row per cell centre
    """
    axis, index = line_index(grid, line)
    data = {"coord": grid.centers(axis, padded=False)}
    for species, label in enumerate(SPECIES_LABELS):
        data[label] = np.asarray(temperature[species][index], dtype=float)
    return pd.DataFrame(data)


def history_cells(grid: StructuredGrid, points: List[HistoryPoint]) -> List[Tuple[int, int, int]]:
    """Cells containing each history point (snapped)."""
    return [grid.cell_index(p.point, snap=True) for p in points]


def compare_probes(reference: pd.DataFrame, candidate: pd.DataFrame, column: str = "Tr") -> float:
    """L1-relative difference sum |c - r| / sum |r| along a probe."""
    if len(reference) != len(candidate):
        raise ConfigurationError("Probe series have different lengths")
    ref = reference[column].to_numpy()
    diff = np.abs(candidate[column].to_numpy() - ref).sum()
    scale = np.abs(ref).sum()
    return float(diff / scale) if scale > 0 else float(diff)


def front_extent(frame: pd.DataFrame, column: str, threshold: float = 0.01) -> np.ndarray:
    """Coordinates along a probe where `column` exceeds `threshold`."""
    return frame.loc[frame[column] > threshold, "coord"].to_numpy()
