"""
Exchange source terms with second-order cell integration.

Each exchange term omega(T_e) * D, with D a temperature difference, is
integrated over the cell as

    omega * D + sum_m (dx_m^2 / 12) * omega'(T_e) * dT_e/dx_m * dD/dx_m

using minmod-limited cell gradients. The electron source collects both terms
and the ion and radiation sources take their negatives, so the three sources
sum to zero.
"""

from typing import Sequence

import numpy as np

from src.materials.models import MaterialModel
from src.reconstruction.faces import FaceReconstruction


def minmod(a, b):
    """Smaller-magnitude argument when signs agree, else 0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    same_sign = np.sign(a) == np.sign(b)
    return np.where(same_sign, np.sign(a) * np.minimum(np.abs(a), np.abs(b)), 0.0)


def cell_gradient(grad_minus, grad_plus):
    """Limited cell gradient from the two opposing face-average gradients."""
    return minmod(grad_minus, grad_plus)


def cell_gradients(faces: Sequence[FaceReconstruction]) -> np.ndarray:
    """Limited gradients of all species, shape (3 axes, 3 species, nx, ny, nz)."""
    gradients = []
    for face in faces:
        axis = face.axis
        n_faces = face.grad_avg.shape[1 + axis]
        minus = np.take(face.grad_avg, np.arange(0, n_faces - 1), axis=1 + axis)
        plus = np.take(face.grad_avg, np.arange(1, n_faces), axis=1 + axis)
        gradients.append(cell_gradient(minus, plus))
    return np.stack(gradients)


def _exchange_term(omega, d_omega, t_electron_grad, difference, difference_grad, spacing):
    correction = 0.0
    for m in range(3):
        correction = correction + (spacing[m] ** 2 / 12.0) * t_electron_grad[m] * difference_grad[m]
    return omega * difference + d_omega * correction


def cell_source(
    temperature: np.ndarray,
    gradients: np.ndarray,
    region,
    model: MaterialModel,
    spacing: Sequence[float]
) -> np.ndarray:
    """
    Exchange source S for every cell.

    Args:
        temperature: Cell temperatures (3, ...)
        gradients: Limited gradients (3 axes, 3 species, ...)
        region: Region ids (...)
        model: Material model
        spacing: Cell widths per axis

    Returns:
        Source (3, ...) with S_e + S_i + S_r = 0
    """
    T = np.asarray(temperature, dtype=float)
    grads = np.asarray(gradients, dtype=float)
    t_e = T[0]
    grad_e = grads[:, 0]

    terms = []
    for pair, partner in ((0, 1), (1, 2)):
        omega = model.exchange_coeff(region, pair, t_e)
        d_omega = model.exchange_derivative(region, pair, t_e)
        terms.append(_exchange_term(
            omega, d_omega, grad_e, T[partner] - t_e, grads[:, partner] - grad_e, spacing
        ))
    term_i, term_r = terms
    return np.stack([term_i + term_r, -term_i, -term_r])
