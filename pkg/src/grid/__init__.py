"""
Grid package for trdiff.

Structured grid, boundary conditions with ghost filling, and field storage.
"""

from src.grid.boundary import (
    FACES, Analytic, BoundarySpec, Condition, Dirichlet, Neumann,
    boundary_from_strings, face_name, fill_ghosts, parse_condition
)
from src.grid.fields import SPECIES, SPECIES_LABELS, EnergyState, TemperatureState, total_energy
from src.grid.structured_grid import N_GHOST, StructuredGrid, build_grid

__all__ = [
    "FACES", "Analytic", "BoundarySpec", "Condition", "Dirichlet", "Neumann",
    "boundary_from_strings", "face_name", "fill_ghosts", "parse_condition",
    "SPECIES", "SPECIES_LABELS", "EnergyState", "TemperatureState", "total_energy",
    "N_GHOST", "StructuredGrid", "build_grid",
]
