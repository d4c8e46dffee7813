"""
Boundary-face reconstruction from the boundary datum and the two nearest interior cells.

Q_1 is the cell adjacent to the boundary face and Q_2 the next one inward.
Gradients are along the positive axis direction. `side` is 0 for the low
face of the domain and 1 for the high face.
"""

from typing import Tuple

import numpy as np


def reconstruct_boundary_dirichlet(q_b, q1, q2, dx, side: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Face value and gradient for a prescribed boundary temperature.

    Exact for quadratic profiles.

    Returns:
        (q_b, gradient)
    """
    q_b = np.asarray(q_b, dtype=float)
    gradient = -(6.0 * q_b - 7.0 * np.asarray(q1, dtype=float) + q2) / (2.0 * dx)
    if side == 1:
        gradient = -gradient
    return q_b, gradient


def reconstruct_boundary_neumann(q_bx, q1, q2, dx, side: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Face value and gradient for a prescribed axis gradient q_bx.

    Returns:
        (value, q_bx)
    """
    q_bx = np.asarray(q_bx, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    if side == 0:
        value = (7.0 * q1 - q2 - 2.0 * dx * q_bx) / 6.0
    else:
        value = (7.0 * q1 - q2 + 2.0 * dx * q_bx) / 6.0
    return value, np.broadcast_to(q_bx, np.shape(value)).astype(float)
