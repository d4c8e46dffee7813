"""
Semi-discrete right-hand side dW/dt = L(W, t).

L_j = (1 / |cell|) * sum of signed face fluxes + S_j (+ optional manufactured
source).
"""

from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from src.grid.boundary import BoundarySpec, fill_ghosts
from src.grid.structured_grid import StructuredGrid
from src.materials.models import MaterialModel
from src.operators.flux import face_flux
from src.operators.source import cell_gradients, cell_source
from src.reconstruction.faces import FaceReconstruction, reconstruct_all_faces
from src.reconstruction.geno1d import GENO, check_scheme

ExtraSource = Callable[[StructuredGrid, float], np.ndarray]


def flux_divergence(fluxes: List[np.ndarray], grid: StructuredGrid) -> np.ndarray:
    """Net inflow per unit volume from the face fluxes of the three axes."""
    total = np.zeros((3,) + tuple(grid.n_cells))
    for axis, flux in enumerate(fluxes):
        total += np.diff(flux, axis=1 + axis)
    return total / grid.cell_volume


def spatial_operator(
    temperature: np.ndarray,
    grid: StructuredGrid,
    model: MaterialModel,
    boundary: BoundarySpec,
    t: float,
    scheme: str = GENO,
    extra_source: Optional[ExtraSource] = None
) -> np.ndarray:
    """
    Evaluate L for every interior cell.

    Args:
        temperature: Interior temperatures (3, nx, ny, nz)
        grid: Structured grid
        model: Material model
        boundary: Boundary conditions
        t: Time
        scheme: Reconstruction scheme
        extra_source: Optional (grid, t) -> (3, nx, ny, nz) added to L

    Returns:
        L (3, nx, ny, nz)
    """
    padded = fill_ghosts(grid.pad(temperature), grid, boundary, t)
    faces = reconstruct_all_faces(padded, grid, boundary, scheme)
    return assemble_rhs(temperature, faces, grid, model, t, extra_source)


def assemble_rhs(
    temperature: np.ndarray,
    faces: List[FaceReconstruction],
    grid: StructuredGrid,
    model: MaterialModel,
    t: float,
    extra_source: Optional[ExtraSource] = None
) -> np.ndarray:
    """L from an existing face reconstruction."""
    fluxes = [face_flux(face, grid, model) for face in faces]
    rhs = flux_divergence(fluxes, grid)
    rhs += cell_source(
        temperature, cell_gradients(faces), grid.interior_region_id, model, grid.spacing
    )
    if extra_source is not None:
        rhs += extra_source(grid, t)
    return rhs


@dataclass
class SemiDiscreteProblem:
    """
    Everything the time integrators need to evaluate L.

    Attributes:
        grid: Structured grid
        model: Material model
        boundary: Boundary conditions
        scheme: Reconstruction scheme
        extra_source: Optional manufactured source (grid, t) -> (3, nx, ny, nz)
    """
    grid: StructuredGrid
    model: MaterialModel
    boundary: BoundarySpec
    scheme: str = GENO
    extra_source: Optional[ExtraSource] = None

    def __post_init__(self):
        check_scheme(self.scheme)

    @property
    def region_ids(self) -> np.ndarray:
        return self.grid.interior_region_id

    def temperature(self, energy: np.ndarray) -> np.ndarray:
        return self.model.temperature_field(self.region_ids, energy)

    def energy(self, temperature: np.ndarray) -> np.ndarray:
        return self.model.energy_field(self.region_ids, temperature)

    def rhs_temperature(self, temperature: np.ndarray, t: float) -> np.ndarray:
        return spatial_operator(
            temperature, self.grid, self.model, self.boundary, t, self.scheme, self.extra_source
        )

    def rhs(self, energy: np.ndarray, t: float) -> np.ndarray:
        """L(W, t)."""
        return self.rhs_temperature(self.temperature(energy), t)
