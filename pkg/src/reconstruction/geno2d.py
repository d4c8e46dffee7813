"""
Tangential GENO stage: face averages to values at the 2x2 Gauss points.

The stencil lives on the tangential plane of a face, in unit-cell
coordinates (xi, eta):

    index  offset        index  offset
    0      ( 0,  0)      7      (-1, -1)
    1      ( 1,  0)      8      ( 1, -1)
    2      ( 0,  1)      9      ( 2,  0)
    3      (-1,  0)      10     ( 0,  2)
    4      ( 0, -1)      11     (-2,  0)
    5      ( 1,  1)      12     ( 0, -2)
    6      (-1,  1)

A cubic in the Taylor basis is fitted by least squares to the 13 means with
the target mean (index 0) enforced exactly through a Lagrange multiplier. It is
blended with a second-order ENO plane chosen among four three-member
sub-stencils.
"""

from functools import lru_cache
from itertools import product
from typing import Optional, Tuple

import numpy as np

from src.reconstruction.geno1d import CENTRAL2, GENO, LINEAR4, POWER_2D, path_chi
from src.utils.errors import ReconstructionError

STENCIL_OFFSETS = (
    (0, 0), (1, 0), (0, 1), (-1, 0), (0, -1),
    (1, 1), (-1, 1), (-1, -1), (1, -1),
    (2, 0), (0, 2), (-2, 0), (0, -2),
)
N_STENCIL = len(STENCIL_OFFSETS)
N_BASIS = 10

# (power of xi, power of eta) per basis function; quadratics shifted by 1/12
BASIS_POWERS = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3))
BASIS_SHIFT = np.array([0, 0, 0, 1, 0, 1, 0, 0, 0, 0]) / 12.0

GAUSS_POINT = 0.5 / np.sqrt(3.0)
GAUSS_POINTS = tuple(product((-GAUSS_POINT, GAUSS_POINT), repeat=2))
N_QUAD = len(GAUSS_POINTS)

# ENO sub-stencils {0, a, b}: (xi neighbour, eta neighbour)
ENO_STENCILS = ((1, 2), (3, 2), (3, 4), (1, 4))


def _moment(power: int, center: float) -> float:
    """Mean of s^power over the unit cell centred at `center`."""
    c = float(center)
    if power == 0:
        return 1.0
    if power == 1:
        return c
    if power == 2:
        return c * c + 1.0 / 12.0
    return c ** 3 + c / 4.0


def mean_matrix() -> np.ndarray:
    """(13, 10) cell means of the basis functions over the stencil members."""
    A = np.zeros((N_STENCIL, N_BASIS))
    for i, (cx, cy) in enumerate(STENCIL_OFFSETS):
        for k, (px, py) in enumerate(BASIS_POWERS):
            A[i, k] = _moment(px, cx) * _moment(py, cy) - BASIS_SHIFT[k]
    return A


def basis_at(points) -> np.ndarray:
    """(n_points, 10) basis values at (xi, eta) points."""
    pts = np.asarray(points, dtype=float)
    out = np.empty((len(pts), N_BASIS))
    for k, (px, py) in enumerate(BASIS_POWERS):
        out[:, k] = pts[:, 0] ** px * pts[:, 1] ** py - BASIS_SHIFT[k]
    return out


def constrained_least_squares(
    A: np.ndarray,
    b: np.ndarray,
    mask: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    Least-squares fit with row 0 satisfied exactly.

    Solves the bordered system
        [2 A_r^T A_r  A_0^T] [a]   [2 A_r^T b_r]
        [A_0          0    ] [c] = [b_0        ]
    where A_r, b_r are rows 1.. (optionally masked).

    Args:
        A: (m, n) mean matrix
        b: (m,) or (m, k) right-hand sides
        mask: Optional boolean (m,) selecting usable rows; row 0 is always kept

    Returns:
        Coefficients (n,) or (n, k)
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    rows = np.ones(A.shape[0], dtype=bool) if mask is None else np.asarray(mask, dtype=bool).copy()
    rows[0] = False
    A_r = A[rows]
    n = A.shape[1]

    K = np.zeros((n + 1, n + 1))
    K[:n, :n] = 2.0 * A_r.T @ A_r
    K[:n, n] = A[0]
    K[n, :n] = A[0]

    rhs = np.zeros((n + 1,) + b.shape[1:])
    rhs[:n] = 2.0 * A_r.T @ b[rows]
    rhs[n] = b[0]

    try:
        solution = np.linalg.solve(K, rhs)
    except np.linalg.LinAlgError as exc:
        raise ReconstructionError(f"Singular constrained least-squares system: {exc}") from exc
    return solution[:n]


@lru_cache(maxsize=1)
def _fit_operator() -> np.ndarray:
    """(10, 13) linear map from stencil means to cubic coefficients."""
    operator = constrained_least_squares(mean_matrix(), np.eye(N_STENCIL))
    operator.setflags(write=False)
    return operator


@lru_cache(maxsize=1)
def _gauss_basis() -> np.ndarray:
    values = basis_at(GAUSS_POINTS)
    values.setflags(write=False)
    return values


def fit_cubic(stencil: np.ndarray) -> np.ndarray:
    """Cubic Taylor coefficients (10, ...) from stencil means (13, ...)."""
    return np.tensordot(_fit_operator(), np.asarray(stencil, dtype=float), axes=(1, 0))


def eno_slopes(stencil: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Second-order ENO plane through the least oscillatory sub-stencil.

    Returns:
        (a_xi, a_eta, indicators) where indicators is (4, ...) a_xi^2 + a_eta^2
        per sub-stencil
    """
    q = np.asarray(stencil, dtype=float)
    q0 = q[0]
    slopes_xi = np.stack([q[1] - q0, q0 - q[3], q0 - q[3], q[1] - q0])
    slopes_eta = np.stack([q[2] - q0, q[2] - q0, q0 - q[4], q0 - q[4]])
    with np.errstate(over="ignore"):
        indicators = slopes_xi ** 2 + slopes_eta ** 2
    choice = np.argmin(indicators, axis=0)[None]
    a_xi = np.take_along_axis(slopes_xi, choice, axis=0)[0]
    a_eta = np.take_along_axis(slopes_eta, choice, axis=0)[0]
    return a_xi, a_eta, indicators


def eno2(stencil: np.ndarray) -> np.ndarray:
    """ENO plane evaluated at the four Gauss points, shape (4, ...)."""
    q0 = np.asarray(stencil, dtype=float)[0]
    a_xi, a_eta, _ = eno_slopes(stencil)
    return np.stack([q0 + a_xi * xi + a_eta * eta for xi, eta in GAUSS_POINTS])


def smoothness_2d(coefficients: np.ndarray, eno_indicators: np.ndarray):
    """(IS_L, IS_H, IS_tau) of the tangential stage."""
    is1, is2, is3, is4 = eno_indicators
    with np.errstate(over="ignore", invalid="ignore"):
        is_low = (is1 + is2 + is3 + is4 - np.maximum(is1, is3) - np.maximum(is2, is4)) / 2.0
        squares = coefficients[1:] ** 2
        is_high = squares.sum(axis=0)
        is_tau = squares[5:].sum(axis=0)
    return is_low, is_high, is_tau


def reconstruct_face_2d(
    stencil: np.ndarray,
    face_average=None,
    scheme: str = GENO
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Values at the four Gauss points of a face.

    Args:
        stencil: (13, ...) face averages in the layout of STENCIL_OFFSETS
        face_average: Optional replacement for member 0
        scheme: 'geno', 'linear4' (chi = 1) or 'central2' (no tangential stage)

    Returns:
        (values (4, ...), chi (...))
    """
    q = np.array(stencil, dtype=float, copy=True)
    if face_average is not None:
        q[0] = face_average

    if scheme == CENTRAL2:
        return np.broadcast_to(q[0], (N_QUAD,) + q.shape[1:]).copy(), np.zeros(q.shape[1:])

    coefficients = fit_cubic(q)
    cubic = np.tensordot(_gauss_basis(), coefficients, axes=(1, 0))
    if scheme == LINEAR4:
        return cubic, np.ones(q.shape[1:])

    a_xi, a_eta, indicators = eno_slopes(q)
    plane = np.stack([q[0] + a_xi * xi + a_eta * eta for xi, eta in GAUSS_POINTS])
    chi = path_chi(*smoothness_2d(coefficients, indicators), r=POWER_2D)
    with np.errstate(invalid="ignore"):
        values = chi * cubic + (1.0 - chi) * plane
    return values, chi
