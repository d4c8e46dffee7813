"""
Block system storage and the LU-SGS solve.

The implicit matrix is block hepta-diagonal with 3x3 blocks. Neighbour blocks
are stored per direction in the order -x, +x, -y, +y, -z, +z; blocks pointing
out of the domain are zero.

LU-SGS solves the factored matrix M = (L + D) D^-1 (D + U) with one forward
and one backward sweep. The sweeps are order dependent and run as numba
kernels in lexicographic order (x fastest).
"""

from dataclasses import dataclass

import numba as nb
import numpy as np

from src.utils.errors import SolverError

_numba_setting = {'nogil': True, 'cache': True}

DIRECTIONS = ((0, -1), (0, 1), (1, -1), (1, 1), (2, -1), (2, 1))
LOWER = (0, 2, 4)
UPPER = (1, 3, 5)


@dataclass
class BlockSystem:
    """
    Block linear system A x = rhs on the interior cells.

    Attributes:
        diag: Diagonal blocks (nx, ny, nz, 3, 3)
        neighbors: Neighbour blocks (6, nx, ny, nz, 3, 3)
        rhs: Right-hand side (nx, ny, nz, 3)
    """
    diag: np.ndarray
    neighbors: np.ndarray
    rhs: np.ndarray

    @property
    def shape(self):
        return self.diag.shape[:3]

    @classmethod
    def zeros(cls, shape) -> "BlockSystem":
        shape = tuple(shape)
        return cls(
            diag=np.zeros(shape + (3, 3)),
            neighbors=np.zeros((6,) + shape + (3, 3)),
            rhs=np.zeros(shape + (3,)),
        )


def shift(x: np.ndarray, direction: int) -> np.ndarray:
    """x at the neighbour in `direction`, zero outside the domain. x is (nx, ny, nz, ...)."""
    axis, step = DIRECTIONS[direction]
    out = np.zeros_like(x)
    n = x.shape[axis]
    src = [slice(None)] * x.ndim
    dst = [slice(None)] * x.ndim
    if step < 0:
        dst[axis] = slice(1, n)
        src[axis] = slice(0, n - 1)
    else:
        dst[axis] = slice(0, n - 1)
        src[axis] = slice(1, n)
    out[tuple(dst)] = x[tuple(src)]
    return out


def block_matvec(diag: np.ndarray, neighbors: np.ndarray, x: np.ndarray,
                 directions=range(6)) -> np.ndarray:
    """(D + sum of selected neighbour blocks) x, with x shaped (nx, ny, nz, 3)."""
    y = np.einsum('...ab,...b->...a', diag, x)
    for d in directions:
        y += np.einsum('...ab,...b->...a', neighbors[d], shift(x, d))
    return y


def factored_matvec(system: BlockSystem, x: np.ndarray) -> np.ndarray:
    """M x with M = (L + D) D^-1 (D + U)."""
    z = block_matvec(system.diag, system.neighbors, x, UPPER)
    w = np.linalg.solve(system.diag, z[..., None])[..., 0]
    return block_matvec(system.diag, system.neighbors, w, LOWER)


def invert_diagonal(diag: np.ndarray, rtol: float = 1e-14) -> np.ndarray:
    """Inverses of the diagonal blocks; raises SolverError naming the first singular cell."""
    row_scale = np.max(np.abs(diag), axis=-1)
    safe_scale = np.where(row_scale > 0.0, row_scale, 1.0)
    scaled_det = np.linalg.det(diag / safe_scale[..., None])
    singular = (
        np.any(row_scale == 0.0, axis=-1)
        | ~np.isfinite(scaled_det)
        | (np.abs(scaled_det) <= rtol)
    )
    if np.any(singular):
        cell = tuple(int(i) for i in np.argwhere(singular)[0])
        raise SolverError(f"Singular diagonal block at cell {cell}")
    return np.linalg.inv(diag)


@nb.njit(**_numba_setting)
def _forward_sweep(dinv, neighbors, rhs):
    nx, ny, nz = rhs.shape[0], rhs.shape[1], rhs.shape[2]
    y = np.zeros_like(rhs)
    r = np.zeros(3)
    for k in range(nz):
        for j in range(ny):
            for i in range(nx):
                for a in range(3):
                    r[a] = rhs[i, j, k, a]
                if i > 0:
                    for a in range(3):
                        for b in range(3):
                            r[a] -= neighbors[0, i, j, k, a, b] * y[i - 1, j, k, b]
                if j > 0:
                    for a in range(3):
                        for b in range(3):
                            r[a] -= neighbors[2, i, j, k, a, b] * y[i, j - 1, k, b]
                if k > 0:
                    for a in range(3):
                        for b in range(3):
                            r[a] -= neighbors[4, i, j, k, a, b] * y[i, j, k - 1, b]
                for a in range(3):
                    acc = 0.0
                    for b in range(3):
                        acc += dinv[i, j, k, a, b] * r[b]
                    y[i, j, k, a] = acc
    return y


@nb.njit(**_numba_setting)
def _backward_sweep(dinv, neighbors, y):
    nx, ny, nz = y.shape[0], y.shape[1], y.shape[2]
    dw = np.zeros_like(y)
    s = np.zeros(3)
    for k in range(nz - 1, -1, -1):
        for j in range(ny - 1, -1, -1):
            for i in range(nx - 1, -1, -1):
                for a in range(3):
                    s[a] = 0.0
                if i < nx - 1:
                    for a in range(3):
                        for b in range(3):
                            s[a] += neighbors[1, i, j, k, a, b] * dw[i + 1, j, k, b]
                if j < ny - 1:
                    for a in range(3):
                        for b in range(3):
                            s[a] += neighbors[3, i, j, k, a, b] * dw[i, j + 1, k, b]
                if k < nz - 1:
                    for a in range(3):
                        for b in range(3):
                            s[a] += neighbors[5, i, j, k, a, b] * dw[i, j, k + 1, b]
                for a in range(3):
                    acc = 0.0
                    for b in range(3):
                        acc += dinv[i, j, k, a, b] * s[b]
                    dw[i, j, k, a] = y[i, j, k, a] - acc
    return dw


def lusgs_solve(system: BlockSystem) -> np.ndarray:
    """
    One forward-backward LU-SGS sweep pair.

    Args:
        system: Block system

    Returns:
        Solution of M x = rhs, shape (nx, ny, nz, 3)
    """
    dinv = np.ascontiguousarray(invert_diagonal(system.diag))
    neighbors = np.ascontiguousarray(system.neighbors, dtype=np.float64)
    rhs = np.ascontiguousarray(system.rhs, dtype=np.float64)
    y = _forward_sweep(dinv, neighbors, rhs)
    return _backward_sweep(dinv, neighbors, y)
