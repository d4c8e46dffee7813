"""
Structured Cartesian grid for trdiff.

Cell-centred lattice with two ghost layers per side. All field arrays carry the
species axis first, followed by the padded (x, y, z) cell axes.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from src.utils.errors import ConfigurationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

N_GHOST = 2
MIN_CELLS = 3
AXES = ("x", "y", "z")

RegionClassifier = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class StructuredGrid:
    """
    Uniform-per-axis 3D grid.

    Attributes:
        domain_lo: Lower corner (3,)
        domain_hi: Upper corner (3,)
        n_cells: Interior cell counts per axis
        spacing: Cell widths per axis (3,)
        region_id: Material tag per padded cell, ghosts copy the nearest interior cell
        n_ghost: Ghost layers per side
    """
    domain_lo: np.ndarray
    domain_hi: np.ndarray
    n_cells: Tuple[int, int, int]
    spacing: np.ndarray
    region_id: np.ndarray
    n_ghost: int = N_GHOST

    @property
    def padded_shape(self) -> Tuple[int, int, int]:
        return tuple(n + 2 * self.n_ghost for n in self.n_cells)

    @property
    def interior(self) -> Tuple[slice, slice, slice]:
        """Slices selecting interior cells of a padded (x, y, z) array."""
        g = self.n_ghost
        return tuple(slice(g, g + n) for n in self.n_cells)

    @property
    def n_interior(self) -> int:
        return int(np.prod(self.n_cells))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def interior_region_id(self) -> np.ndarray:
        return self.region_id[self.interior]

    def face_area(self, axis: int) -> float:
        """Area of a face normal to `axis`."""
        others = [m for m in range(3) if m != axis]
        return float(self.spacing[others[0]] * self.spacing[others[1]])

    def centers(self, axis: int, padded: bool = True) -> np.ndarray:
        """Cell-centre coordinates along one axis."""
        g = self.n_ghost if padded else 0
        index = np.arange(self.n_cells[axis] + 2 * g) - g
        return self.domain_lo[axis] + (index + 0.5) * self.spacing[axis]

    def mesh(self, padded: bool = False) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Cell-centre coordinate arrays (X, Y, Z) with 'ij' indexing."""
        return tuple(np.meshgrid(
            self.centers(0, padded), self.centers(1, padded), self.centers(2, padded),
            indexing="ij"
        ))

    def interior_view(self, field: np.ndarray) -> np.ndarray:
        """Interior part of a padded field with leading species/component axes."""
        return field[(Ellipsis,) + self.interior]

    def pad(self, interior_field: np.ndarray) -> np.ndarray:
        """Embed an interior field into a zero padded array (ghosts left unset)."""
        lead = interior_field.shape[:-3]
        padded = np.zeros(lead + self.padded_shape, dtype=float)
        padded[(Ellipsis,) + self.interior] = interior_field
        return padded

    def cell_index(self, point: Sequence[float], snap: bool = True) -> Tuple[int, int, int]:
        """
        Interior index of the cell containing `point`.

        Args:
            point: Physical coordinates
            snap: If False, the point must coincide with a cell centre

        Returns:
            (i, j, k) interior index
        """
        index = []
        for m in range(3):
            h = self.spacing[m]
            s = (point[m] - self.domain_lo[m]) / h
            if s < -1e-9 or s > self.n_cells[m] + 1e-9:
                raise ConfigurationError(
                    f"Point {tuple(point)} lies outside the domain along {AXES[m]}"
                )
            i = int(np.floor(s))
            if not snap and abs(s - (i + 0.5)) > 1e-6:
                raise ConfigurationError(
                    f"Coordinate {AXES[m]}={point[m]} is not aligned with a cell centre"
                )
            index.append(min(max(i, 0), self.n_cells[m] - 1))
        return tuple(index)


def build_grid(
    domain_lo: Sequence[float],
    domain_hi: Sequence[float],
    n_cells: Sequence[int],
    region_classifier: Optional[RegionClassifier] = None
) -> StructuredGrid:
    """
    Build a structured grid and tag every cell with a material region.

    Args:
        domain_lo: Lower corner coordinates
        domain_hi: Upper corner coordinates
        n_cells: Cell counts per axis (at least 3 each)
        region_classifier: Vectorized (x, y, z) -> region id, evaluated at cell
            centres. Defaults to a single region 0.

    Returns:
        StructuredGrid
    """
    lo = np.asarray(domain_lo, dtype=float)
    hi = np.asarray(domain_hi, dtype=float)
    counts = tuple(int(n) for n in n_cells)

    if lo.shape != (3,) or hi.shape != (3,) or len(counts) != 3:
        raise ConfigurationError("Grid needs three coordinates per corner and three cell counts")
    for m in range(3):
        if not hi[m] > lo[m]:
            raise ConfigurationError(f"Non-positive extent along {AXES[m]}: [{lo[m]}, {hi[m]}]")
        if counts[m] < MIN_CELLS:
            raise ConfigurationError(
                f"Need at least {MIN_CELLS} cells along {AXES[m]}, got {counts[m]}"
            )

    spacing = (hi - lo) / np.asarray(counts, dtype=float)

    provisional = StructuredGrid(
        domain_lo=lo, domain_hi=hi, n_cells=counts, spacing=spacing,
        region_id=np.zeros(tuple(n + 2 * N_GHOST for n in counts), dtype=np.int64)
    )

    if region_classifier is None:
        interior_regions = np.zeros(counts, dtype=np.int64)
    else:
        X, Y, Z = provisional.mesh(padded=False)
        interior_regions = np.asarray(region_classifier(X, Y, Z), dtype=np.int64)
        interior_regions = np.broadcast_to(interior_regions, counts).copy()

    region_id = np.pad(interior_regions, N_GHOST, mode="edge")

    grid = StructuredGrid(
        domain_lo=lo, domain_hi=hi, n_cells=counts, spacing=spacing, region_id=region_id
    )
    logger.debug(f"Built grid {counts} with spacing {spacing.tolist()}")
    return grid
