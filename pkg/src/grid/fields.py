"""
Cell-averaged field storage for the three species.

Interior fields have shape (3, nx, ny, nz), species order (e, i, r).
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.grid.boundary import BoundarySpec, fill_ghosts
from src.grid.structured_grid import StructuredGrid
from src.utils.errors import ConfigurationError

SPECIES = ("e", "i", "r")
SPECIES_LABELS = ("Te", "Ti", "Tr")


def _check_shape(values: np.ndarray, label: str) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim != 4 or values.shape[0] != len(SPECIES):
        raise ConfigurationError(f"{label} must have shape (3, nx, ny, nz), got {values.shape}")
    return values


@dataclass
class TemperatureState:
    """Cell-averaged temperatures (T_e, T_i, T_r)."""
    values: np.ndarray

    def __post_init__(self):
        self.values = _check_shape(self.values, "TemperatureState")

    @classmethod
    def uniform(cls, grid: StructuredGrid, temperature) -> "TemperatureState":
        temps = np.broadcast_to(np.asarray(temperature, dtype=float), (3,))
        values = np.empty((3,) + tuple(grid.n_cells))
        values[:] = temps[:, None, None, None]
        return cls(values)

    def padded(self, grid: StructuredGrid, boundary: BoundarySpec, t: float) -> np.ndarray:
        """Padded copy with ghost layers filled for time `t`."""
        return fill_ghosts(grid.pad(self.values), grid, boundary, t)

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """Per-species (min, max) over interior cells."""
        flat = self.values.reshape(3, -1)
        return flat.min(axis=1), flat.max(axis=1)

    def copy(self) -> "TemperatureState":
        return TemperatureState(self.values.copy())


@dataclass
class EnergyState:
    """Cell-averaged energy densities (W_e, W_i, W_r)."""
    values: np.ndarray

    def __post_init__(self):
        self.values = _check_shape(self.values, "EnergyState")

    def copy(self) -> "EnergyState":
        return EnergyState(self.values.copy())

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))


def total_energy(state: EnergyState, grid: StructuredGrid) -> Tuple[Tuple[float, float, float], float]:
    """
    Volume-integrated energy per species and in total.

    Summation uses math.fsum over cells in C (lexicographic) order, so the
    result does not depend on reduction order.

    Args:
        state: Energy densities
        grid: Grid the state lives on

    Returns:
        ((E_e, E_i, E_r), E_e + E_i + E_r)
    """
    volume = grid.cell_volume
    per_species = tuple(
        math.fsum((state.values[s] * volume).ravel(order="C")) for s in range(len(SPECIES))
    )
    return per_species, math.fsum(per_species)
