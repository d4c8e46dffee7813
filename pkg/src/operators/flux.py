"""
Diffusive face fluxes.

Face conductivities are evaluated at the reconstructed Gauss-point
temperatures with the coefficients of both adjacent regions and combined by
the harmonic mean where the regions differ.
"""

from typing import Tuple

import numpy as np

from src.grid.structured_grid import AXES, StructuredGrid
from src.materials.models import MaterialModel
from src.reconstruction.faces import FaceReconstruction
from src.reconstruction.geno2d import N_QUAD
from src.utils.errors import PositivityError

QUAD_WEIGHT = 1.0 / N_QUAD


def effective_conductivity(k_left, k_right):
    """
    Harmonic-mean conductivity 2 k_l k_r / (k_l + k_r).

    Written as 2 k_l (k_r / (k_l + k_r)) so very large arguments do not overflow.
    """
    k_left = np.asarray(k_left, dtype=float)
    k_right = np.asarray(k_right, dtype=float)
    if np.any(~(k_left > 0.0)) or np.any(~(k_right > 0.0)):
        raise PositivityError(
            f"Effective conductivity needs positive inputs, got k_l={k_left!r}, k_r={k_right!r}"
        )
    return 2.0 * k_left * (k_right / (k_left + k_right))


def face_regions(grid: StructuredGrid, axis: int) -> Tuple[np.ndarray, np.ndarray]:
    """Region ids of the cells left and right of every face normal to `axis`."""
    g = grid.n_ghost
    n = grid.n_cells[axis]
    moved = np.moveaxis(grid.region_id, axis, 0)
    tangential = tuple(slice(g, g + grid.n_cells[m]) for m in range(3) if m != axis)
    left = moved[(slice(g - 1, g + n),) + tangential]
    right = moved[(slice(g, g + n + 1),) + tangential]
    return np.moveaxis(left, 0, axis), np.moveaxis(right, 0, axis)


def face_conductivity(
    temperature_q: np.ndarray,
    species: int,
    left: np.ndarray,
    right: np.ndarray,
    model: MaterialModel,
    where: str = "face"
) -> np.ndarray:
    """k-hat at Gauss points; temperature_q has shape (4, ...) matching left/right (...)."""
    k_left = model.conductivity(left, species, temperature_q, where)
    interface = left != right
    if not np.any(interface):
        return k_left
    k_right = model.conductivity(right, species, temperature_q, where)
    mask = np.broadcast_to(interface, k_left.shape)
    k_hat = k_left.copy()
    k_hat[mask] = effective_conductivity(k_left[mask], k_right[mask])
    return k_hat


def face_flux(faces: FaceReconstruction, grid: StructuredGrid, model: MaterialModel) -> np.ndarray:
    """
    Quadrature-integrated normal flux |face| * sum_q w_q k-hat(T_q) G_q.

    Args:
        faces: Reconstruction of the faces normal to one axis
        grid: Structured grid
        model: Material model

    Returns:
        Fluxes (3, ...) in the natural face layout, positive along the axis
    """
    axis = faces.axis
    left, right = face_regions(grid, axis)
    area = grid.face_area(axis)
    flux = np.empty_like(faces.value_avg)
    for species in range(3):
        k_hat = face_conductivity(
            faces.value_q[species], species, left, right, model,
            where=f"{AXES[axis]}-face (gauss, i, j, k)"
        )
        flux[species] = area * QUAD_WEIGHT * np.sum(k_hat * faces.grad_q[species], axis=0)
    return flux
