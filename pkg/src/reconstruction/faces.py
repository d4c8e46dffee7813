"""
Face reconstruction over the whole grid.

For each axis the normal stage runs on every face plane of every padded
tangential row, then the tangential stage distributes face averages of value
and normal gradient to the 2x2 Gauss points of the interior faces. Domain
boundary faces of species with Dirichlet or Neumann conditions are replaced by
the two-cell boundary formulas, replicated at all Gauss points.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from src.grid.boundary import Analytic, BoundarySpec, Dirichlet, Neumann
from src.grid.structured_grid import StructuredGrid
from src.reconstruction.boundary import reconstruct_boundary_dirichlet, reconstruct_boundary_neumann
from src.reconstruction.geno1d import GENO, check_scheme, reconstruct_face_1d
from src.reconstruction.geno2d import N_QUAD, STENCIL_OFFSETS, reconstruct_face_2d
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class FaceReconstruction:
    """
    Reconstructed state on all faces normal to one axis.

    Face arrays use the natural layout: for axis 0 the shape is
    (3, nx + 1, ny, nz), and face f lies between interior cells f - 1 and f.

    Attributes:
        axis: Normal axis
        value_avg: Face-average temperatures (3, ...)
        grad_avg: Face-average normal gradients (3, ...)
        value_q: Temperatures at Gauss points (3, 4, ...)
        grad_q: Normal gradients at Gauss points (3, 4, ...)
        chi: Normal-stage blend factor (3, ...)
        chi_tangential: Tangential-stage blend factor of the values (3, ...)
    """
    axis: int
    value_avg: np.ndarray
    grad_avg: np.ndarray
    value_q: np.ndarray
    grad_q: np.ndarray
    chi: np.ndarray
    chi_tangential: np.ndarray

    @property
    def n_faces(self) -> int:
        return int(np.prod(self.value_avg.shape[1:]))


def _normal_stage(moved: np.ndarray, n: int, g: int, h: float, scheme: str):
    """1D stage on faces 0..n of a (3, n + 2g, Pa, Pb) array."""
    qm1 = moved[:, g - 2: g - 1 + n]
    q0 = moved[:, g - 1: g + n]
    qp1 = moved[:, g: g + n + 1]
    qp2 = moved[:, g + 1: g + n + 2]
    return reconstruct_face_1d(qm1, q0, qp1, qp2, h, scheme)


def _tangential_stencil(plane_field: np.ndarray, g: int, na: int, nb: int) -> np.ndarray:
    """(13, 3, nf, na, nb) stencil of face averages for the interior tangential rows."""
    return np.stack([
        plane_field[:, :, g + da: g + da + na, g + db: g + db + nb]
        for da, db in STENCIL_OFFSETS
    ])


def _tangential_stage(field: np.ndarray, g: int, na: int, nb: int, scheme: str):
    stencil = _tangential_stencil(field, g, na, nb)
    values, chi = reconstruct_face_2d(stencil, scheme=scheme)
    # (4, 3, nf, na, nb) -> (3, 4, nf, na, nb)
    return np.moveaxis(values, 0, 1), chi


def reconstruct_axis(
    padded: np.ndarray,
    grid: StructuredGrid,
    boundary: BoundarySpec,
    axis: int,
    scheme: str = GENO
) -> FaceReconstruction:
    """
    Reconstruct every face normal to `axis`.

    Args:
        padded: Padded temperatures with ghosts filled (3, ...)
        grid: Structured grid
        boundary: Boundary conditions (selects boundary-face formulas)
        axis: Normal axis
        scheme: Reconstruction scheme

    Returns:
        FaceReconstruction for this axis
    """
    g = grid.n_ghost
    n = grid.n_cells[axis]
    h = float(grid.spacing[axis])
    tangential_axes = [m for m in range(3) if m != axis]
    na, nb = (grid.n_cells[m] for m in tangential_axes)

    moved = np.moveaxis(padded, 1 + axis, 1)
    value_full, grad_full, chi_full = _normal_stage(moved, n, g, h, scheme)

    value_q, chi_tangential = _tangential_stage(value_full, g, na, nb, scheme)
    grad_q, _ = _tangential_stage(grad_full, g, na, nb, scheme)

    interior_rows = (slice(None), slice(None), slice(g, g + na), slice(g, g + nb))
    value_avg = value_full[interior_rows].copy()
    grad_avg = grad_full[interior_rows].copy()
    chi = chi_full[interior_rows].copy()

    for side in (0, 1):
        face = 0 if side == 0 else n
        if side == 0:
            q1, q2 = moved[:, g], moved[:, g + 1]
        else:
            q1, q2 = moved[:, g + n - 1], moved[:, g + n - 2]
        q1 = q1[:, g: g + na, g: g + nb]
        q2 = q2[:, g: g + na, g: g + nb]

        for species in range(3):
            cond = boundary.condition(axis, side, species)
            if isinstance(cond, Analytic):
                continue
            if isinstance(cond, Dirichlet):
                value, gradient = reconstruct_boundary_dirichlet(
                    np.full((na, nb), cond.value), q1[species], q2[species], h, side
                )
            elif isinstance(cond, Neumann):
                axis_gradient = -cond.gradient if side == 0 else cond.gradient
                value, gradient = reconstruct_boundary_neumann(
                    np.full((na, nb), axis_gradient), q1[species], q2[species], h, side
                )
            else:
                continue
            value_avg[species, face] = value
            grad_avg[species, face] = gradient
            value_q[species, :, face] = value[None]
            grad_q[species, :, face] = gradient[None]
            chi[species, face] = 1.0
            chi_tangential[species, face] = 1.0

    return FaceReconstruction(
        axis=axis,
        value_avg=np.moveaxis(value_avg, 1, 1 + axis),
        grad_avg=np.moveaxis(grad_avg, 1, 1 + axis),
        value_q=np.moveaxis(value_q, 2, 2 + axis),
        grad_q=np.moveaxis(grad_q, 2, 2 + axis),
        chi=np.moveaxis(chi, 1, 1 + axis),
        chi_tangential=np.moveaxis(chi_tangential, 1, 1 + axis),
    )


def reconstruct_all_faces(
    padded: np.ndarray,
    grid: StructuredGrid,
    boundary: BoundarySpec,
    scheme: str = GENO
) -> List[FaceReconstruction]:
    """
    Reconstruct the faces of all three axes.

    Args:
        padded: Padded temperatures with ghosts already filled
        grid: Structured grid
        boundary: Boundary conditions
        scheme: 'geno', 'linear4' or 'central2'

    Returns:
        [faces normal to x, faces normal to y, faces normal to z]
    """
    check_scheme(scheme)
    return [reconstruct_axis(padded, grid, boundary, axis, scheme) for axis in range(3)]


__all__ = ["FaceReconstruction", "N_QUAD", "reconstruct_axis", "reconstruct_all_faces"]
