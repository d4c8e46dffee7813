"""
Central GENO reconstruction along the face normal.

For the face between cells j and j+1 the four-cell stencil (j-1, j, j+1, j+2)
gives a fourth-order linear reconstruction; the two central cells give a
second-order one. A path function chi in [0, 1] built from smoothness
indicators blends them: R = chi * p3 + (1 - chi) * p1.

All functions are vectorized over arrays of stencils.
"""

from typing import Tuple

import numpy as np

from src.utils.errors import ConfigurationError

PATH_C = 20.0
EPSILON = 1e-15
POWER_1D = 2
POWER_2D = 3

GENO = "geno"
LINEAR4 = "linear4"
CENTRAL2 = "central2"
SCHEMES = (GENO, LINEAR4, CENTRAL2)


def check_scheme(scheme: str) -> str:
    if scheme not in SCHEMES:
        raise ConfigurationError(f"Unknown reconstruction scheme '{scheme}'. Available: {list(SCHEMES)}")
    return scheme


def _curvature_indicator(a, b, c):
    """13/12 (a - 2b + c)^2 + 1/4 (a - c)^2."""
    return 13.0 / 12.0 * (a - 2.0 * b + c) ** 2 + 0.25 * (a - c) ** 2


def smoothness_1d(qm1, q0, qp1, qp2) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Smoothness indicators of the 1D stencil.

    Args:
        qm1, q0, qp1, qp2: Cell averages Q_{j-1}, Q_j, Q_{j+1}, Q_{j+2}

    Returns:
        (IS_L, IS_H, IS_tau): min and max over the four sub-stencil indicators
        and the difference of the two three-cell ones
    """
    with np.errstate(over="ignore", invalid="ignore"):
        is1 = (q0 - qm1) ** 2
        is2 = (qp2 - qp1) ** 2
        is3 = _curvature_indicator(qm1, q0, qp1)
        is4 = _curvature_indicator(qp2, qp1, q0)

        is_low = np.minimum(np.minimum(is1, is2), np.minimum(is3, is4))
        is_high = np.maximum(np.maximum(is1, is2), np.maximum(is3, is4))
        is_tau = np.abs(is3 - is4)
    return is_low, is_high, is_tau


def smoothness_alpha(is_low, is_high, is_tau, r: int = POWER_1D, eps: float = EPSILON):
    """
    Smoothness ratio alpha in [0, 1]; 1 for smooth data, near 0 across jumps.

    alpha = 2 alpha_H / (alpha_H + alpha_L), alpha_X = 1 + (IS_tau / (IS_X + eps))^r
    """
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        alpha_high = 1.0 + (is_tau / (is_high + eps)) ** r
        alpha_low = 1.0 + (is_tau / (is_low + eps)) ** r
        alpha = 2.0 * alpha_high / (alpha_high + alpha_low)
    return np.clip(alpha, 0.0, 1.0)


def path_chi(is_low, is_high, is_tau, r: int = POWER_1D, c: float = PATH_C, eps: float = EPSILON):
    """Path function chi = tanh(C alpha) / tanh(C)."""
    alpha = smoothness_alpha(is_low, is_high, is_tau, r, eps)
    return np.tanh(c * alpha) / np.tanh(c)


def linear_face_1d(qm1, q0, qp1, qp2, h) -> Tuple[np.ndarray, np.ndarray]:
    """Fourth-order (value, gradient) at the face from the four-cell stencil."""
    value = (7.0 * (q0 + qp1) - (qm1 + qp2)) / 12.0
    gradient = (15.0 * (qp1 - q0) - (qp2 - qm1)) / (12.0 * h)
    return value, gradient


def central_face_1d(q0, qp1, h) -> Tuple[np.ndarray, np.ndarray]:
    """Second-order (value, gradient) at the face from the two central cells."""
    return 0.5 * (q0 + qp1), (qp1 - q0) / h


def blend_chi(qm1, q0, qp1, qp2, scheme: str = GENO):
    """chi for a stencil under the given scheme."""
    if scheme == LINEAR4:
        return np.ones_like(np.asarray(q0, dtype=float))
    if scheme == CENTRAL2:
        return np.zeros_like(np.asarray(q0, dtype=float))
    return path_chi(*smoothness_1d(qm1, q0, qp1, qp2), r=POWER_1D)


def reconstruct_face_1d(qm1, q0, qp1, qp2, h, scheme: str = GENO):
    """
    GENO face value and normal gradient.

    Args:
        qm1, q0, qp1, qp2: Cell averages around the face between q0 and qp1
        h: Cell width along the normal
        scheme: 'geno', 'linear4' (chi = 1) or 'central2' (chi = 0)

    Returns:
        (value, gradient, chi)
    """
    qm1, q0, qp1, qp2 = (np.asarray(q, dtype=float) for q in (qm1, q0, qp1, qp2))
    chi = blend_chi(qm1, q0, qp1, qp2, scheme)
    v1, g1 = central_face_1d(q0, qp1, h)
    if scheme == CENTRAL2:
        return v1, g1, chi
    v3, g3 = linear_face_1d(qm1, q0, qp1, qp2, h)
    value = chi * v3 + (1.0 - chi) * v1
    gradient = chi * g3 + (1.0 - chi) * g1
    return value, gradient, chi
