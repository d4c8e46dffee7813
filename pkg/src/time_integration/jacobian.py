"""
Simplified Jacobian of the semi-discrete operator.

The Jacobian is the exact derivative of a second-order operator with frozen
coefficients: face conductivities from the average temperature of the two
adjacent cells (harmonic mean across material interfaces), exchange
coefficients frozen at the cell electron temperature, and boundary faces
closed with the first ghost layer. Derivatives of k and omega with respect to
W are dropped.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from src.grid.boundary import Analytic, BoundarySpec, Dirichlet, Neumann, fill_ghosts
from src.grid.structured_grid import StructuredGrid
from src.materials.models import MaterialModel
from src.operators.flux import face_conductivity, face_regions
from src.time_integration.lusgs import BlockSystem

# d(ghost)/d(adjacent interior value) for each condition type
_GHOST_SLOPE = {Dirichlet: -1.0, Neumann: 1.0, Analytic: 0.0}


@dataclass
class FrozenCoefficients:
    """
    Coefficients held fixed by the simplified operator.

    Attributes:
        face_k: Per axis, face conductivities (3, natural face layout)
        omega: Exchange coefficients (2, nx, ny, nz) for the ei and er pairs
    """
    face_k: List[np.ndarray]
    omega: np.ndarray


def freeze_coefficients(temperature: np.ndarray, grid: StructuredGrid,
                        model: MaterialModel) -> FrozenCoefficients:
    """Evaluate frozen face conductivities and exchange coefficients at `temperature`."""
    regions = grid.interior_region_id
    face_k = []
    for axis in range(3):
        n = grid.n_cells[axis]
        left, right = face_regions(grid, axis)
        k_axis = np.empty((3,) + left.shape)
        lower = np.take(temperature, np.arange(0, n - 1), axis=1 + axis)
        upper = np.take(temperature, np.arange(1, n), axis=1 + axis)
        average = 0.5 * (lower + upper)
        inner = [slice(None)] * 3
        inner[axis] = slice(1, n)
        first = [slice(None)] * 3
        first[axis] = slice(0, 1)
        last = [slice(None)] * 3
        last[axis] = slice(n, n + 1)
        for species in range(3):
            k_axis[species][tuple(inner)] = face_conductivity(
                average[species], species, left[tuple(inner)], right[tuple(inner)], model,
                where="jacobian face"
            )
            first_cells = np.take(temperature[species], [0], axis=axis)
            last_cells = np.take(temperature[species], [n - 1], axis=axis)
            k_axis[species][tuple(first)] = model.conductivity(
                np.take(regions, [0], axis=axis), species, first_cells, "boundary cell"
            )
            k_axis[species][tuple(last)] = model.conductivity(
                np.take(regions, [n - 1], axis=axis), species, last_cells, "boundary cell"
            )
        face_k.append(k_axis)

    omega = np.stack([model.exchange_coeff(regions, pair, temperature[0]) for pair in (0, 1)])
    return FrozenCoefficients(face_k=face_k, omega=omega)


def _exchange_source(temperature: np.ndarray, omega: np.ndarray) -> np.ndarray:
    term_i = omega[0] * (temperature[1] - temperature[0])
    term_r = omega[1] * (temperature[2] - temperature[0])
    return np.stack([term_i + term_r, -term_i, -term_r])


def frozen_second_order_operator(
    energy: np.ndarray,
    grid: StructuredGrid,
    model: MaterialModel,
    boundary: BoundarySpec,
    frozen: FrozenCoefficients,
    t: float = 0.0
) -> np.ndarray:
    """
    Second-order operator with frozen coefficients.

    Face gradients are two-point differences; boundary faces use the first
    ghost layer. The assembled Jacobian is its exact derivative.
    """
    temperature = model.temperature_field(grid.interior_region_id, energy)
    padded = fill_ghosts(grid.pad(temperature), grid, boundary, t)
    g = grid.n_ghost
    total = np.zeros_like(temperature)
    for axis in range(3):
        n = grid.n_cells[axis]
        h = grid.spacing[axis]
        tangential = [slice(g, g + grid.n_cells[m]) for m in range(3)]
        tangential[axis] = slice(g - 1, g + n + 1)
        row = padded[(slice(None),) + tuple(tangential)]
        gradient = np.diff(row, axis=1 + axis) / h
        flux = frozen.face_k[axis] * gradient
        total += np.diff(flux, axis=1 + axis) / h
    return total + _exchange_source(temperature, frozen.omega)


def jacobian_blocks(
    energy: np.ndarray,
    grid: StructuredGrid,
    model: MaterialModel,
    boundary: BoundarySpec,
    frozen: Optional[FrozenCoefficients] = None
):
    """
    Blocks of J = dL2/dW.

    Returns:
        (diag (nx, ny, nz, 3, 3), neighbors (6, nx, ny, nz, 3, 3), frozen)
    """
    regions = grid.interior_region_id
    temperature = model.temperature_field(regions, energy)
    if frozen is None:
        frozen = freeze_coefficients(temperature, grid, model)

    shape = tuple(grid.n_cells)
    dT_dW = 1.0 / model.heat_capacity_field(regions, temperature)

    diag = np.zeros(shape + (3, 3))
    neighbors = np.zeros((6,) + shape + (3, 3))

    for axis in range(3):
        n = grid.n_cells[axis]
        inv_h2 = 1.0 / grid.spacing[axis] ** 2
        k_axis = frozen.face_k[axis]
        k_minus = np.take(k_axis, np.arange(0, n), axis=1 + axis)
        k_plus = np.take(k_axis, np.arange(1, n + 1), axis=1 + axis)

        for species in range(3):
            factor_minus = np.ones(shape)
            factor_plus = np.ones(shape)
            first = [slice(None)] * 3
            first[axis] = 0
            last = [slice(None)] * 3
            last[axis] = n - 1
            low = boundary.condition(axis, 0, species)
            high = boundary.condition(axis, 1, species)
            factor_minus[tuple(first)] = 1.0 - _GHOST_SLOPE[type(low)]
            factor_plus[tuple(last)] = 1.0 - _GHOST_SLOPE[type(high)]

            diag[..., species, species] -= (
                (k_minus[species] * factor_minus + k_plus[species] * factor_plus)
                * inv_h2 * dT_dW[species]
            )

            minus_dir, plus_dir = 2 * axis, 2 * axis + 1
            neighbor_minus = np.zeros(shape)
            neighbor_plus = np.zeros(shape)
            inner_lo = [slice(None)] * 3
            inner_lo[axis] = slice(1, n)
            inner_hi = [slice(None)] * 3
            inner_hi[axis] = slice(0, n - 1)
            dT_species = dT_dW[species]
            neighbor_minus[tuple(inner_lo)] = (
                k_minus[species][tuple(inner_lo)] * inv_h2 * dT_species[tuple(inner_hi)]
            )
            neighbor_plus[tuple(inner_hi)] = (
                k_plus[species][tuple(inner_hi)] * inv_h2 * dT_species[tuple(inner_lo)]
            )
            neighbors[minus_dir][..., species, species] = neighbor_minus
            neighbors[plus_dir][..., species, species] = neighbor_plus

    omega_i, omega_r = frozen.omega
    source = np.zeros(shape + (3, 3))
    source[..., 0, 0] = -(omega_i + omega_r)
    source[..., 0, 1] = omega_i
    source[..., 0, 2] = omega_r
    source[..., 1, 0] = omega_i
    source[..., 1, 1] = -omega_i
    source[..., 2, 0] = omega_r
    source[..., 2, 2] = -omega_r
    diag += source * np.moveaxis(dT_dW, 0, -1)[..., None, :]

    return diag, neighbors, frozen


def assemble_jacobian(
    energy: np.ndarray,
    grid: StructuredGrid,
    model: MaterialModel,
    boundary: BoundarySpec,
    dt: float,
    dtau: float,
    frozen: Optional[FrozenCoefficients] = None
) -> BlockSystem:
    """
    Implicit matrix A = (1/dt + 1/dtau) I - J.

    Args:
        energy: Current inner iterate W (3, nx, ny, nz)
        grid: Structured grid
        model: Material model
        boundary: Boundary conditions
        dt: Physical time step
        dtau: Pseudo time step
        frozen: Optional precomputed frozen coefficients

    Returns:
        BlockSystem with zero right-hand side
    """
    j_diag, j_neighbors, _ = jacobian_blocks(energy, grid, model, boundary, frozen)
    system = BlockSystem.zeros(grid.n_cells)
    system.diag = (1.0 / dt + 1.0 / dtau) * np.eye(3) - j_diag
    system.neighbors = -j_neighbors
    return system
