"""
Manufactured solution for the linear accuracy test.

    T_e = e^t (x^2 + 1)(y^2 + 1)
    T_i = e^t (2x^2 + 1)(y^2 + 1)
    T_r = e^t (2x^2 + 1)(2y^2 + 1)

with c = k = omega = 1. The extra sources make these exact solutions.
"""

from functools import lru_cache
from itertools import product

import numpy as np

from src.grid.boundary import Analytic, BoundarySpec
from src.grid.structured_grid import StructuredGrid

GAUSS_1D = (-0.5 / np.sqrt(3.0), 0.5 / np.sqrt(3.0))


def mms_exact(x, y, t) -> np.ndarray:
    """Exact temperatures, shape (3, ...)."""
    x2 = np.square(x)
    y2 = np.square(y)
    scale = np.exp(t)
    return np.stack(np.broadcast_arrays(
        scale * (x2 + 1.0) * (y2 + 1.0),
        scale * (2.0 * x2 + 1.0) * (y2 + 1.0),
        scale * (2.0 * x2 + 1.0) * (2.0 * y2 + 1.0),
    ))


def mms_source(x, y, t) -> np.ndarray:
    """Manufactured sources S*, shape (3, ...)."""
    x2 = np.square(x)
    y2 = np.square(y)
    xy = x2 * y2
    scale = np.exp(t)
    return np.stack(np.broadcast_arrays(
        -scale * (3.0 * xy + 3.0 * x2 + 2.0 * y2 + 3.0),
        scale * (3.0 * xy - x2 - 3.0 * y2 - 5.0),
        scale * (7.0 * xy - 5.0 * x2 - 5.0 * y2 - 7.0),
    ))


def gauss_cell_average(function, grid: StructuredGrid, t: float) -> np.ndarray:
    """
    2x2x2 Gauss cell averages of function(x, y, t) -> (3, ...) over interior cells.
    """
    X, Y, _ = grid.mesh(padded=False)
    hx, hy = grid.spacing[0], grid.spacing[1]
    total = np.zeros((3,) + X.shape)
    for gx, gy, _ in product(GAUSS_1D, GAUSS_1D, GAUSS_1D):
        total += function(X + gx * hx, Y + gy * hy, t)
    return total / 8.0


def exact_cell_average(grid: StructuredGrid, t: float) -> np.ndarray:
    return gauss_cell_average(mms_exact, grid, t)


class ManufacturedSource:
    """Cell-averaged S* as an extra operator source; S* is e^t times a spatial factor."""

    def __init__(self, grid: StructuredGrid):
        self._spatial = gauss_cell_average(mms_source, grid, 0.0)

    def __call__(self, grid: StructuredGrid, t: float) -> np.ndarray:
        return np.exp(t) * self._spatial


@lru_cache(maxsize=None)
def _species_function(species: int):
    def evaluate(x, y, z, t):
        return mms_exact(x, y, t)[species]
    return evaluate


def mms_boundary() -> BoundarySpec:
    """Ghost cells from the exact solution on every face."""
    conditions = tuple(
        Analytic(_species_function(s), name=f"analytic:mms{s}") for s in range(3)
    )
    return BoundarySpec.uniform(conditions)
