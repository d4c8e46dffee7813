"""
Error norms and observed convergence orders.
"""

from typing import Optional, Tuple

import numpy as np
import pandas as pd

from src.grid.fields import SPECIES_LABELS
from src.utils.errors import ConfigurationError


def error_norms(
    numerical: np.ndarray,
    exact: np.ndarray,
    volumes: Optional[np.ndarray] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-species L1 and L-infinity errors over cells.

    Args:
        numerical: Cell values (3, ...)
        exact: Reference cell values (3, ...)
        volumes: Optional cell volumes (...); L1 is then volume weighted,
            otherwise the plain mean of |error|

    Returns:
        (L1 (3,), Linf (3,))
    """
    numerical = np.asarray(numerical, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if numerical.shape != exact.shape:
        raise ConfigurationError(
            f"Cannot compare fields of shapes {numerical.shape} and {exact.shape}"
        )
    error = np.abs(numerical - exact).reshape(numerical.shape[0], -1)
    if volumes is None:
        l1 = error.mean(axis=1)
    else:
        weights = np.broadcast_to(np.asarray(volumes, dtype=float), numerical.shape[1:]).ravel()
        l1 = (error * weights).sum(axis=1) / weights.sum()
    return l1, error.max(axis=1)


def convergence_order(coarse_error: float, fine_error: float, ratio: float = 2.0) -> float:
    """log_ratio(e_coarse / e_fine)."""
    if coarse_error <= 0.0 or fine_error <= 0.0:
        return float("nan")
    return float(np.log(coarse_error / fine_error) / np.log(ratio))


def order_table(errors: pd.DataFrame, norm: str) -> pd.DataFrame:
    """
    Orders between consecutive mesh levels.

    Args:
        errors: Rows per mesh with columns 'h' and '<norm>_<species label>'
        norm: 'L1' or 'Linf'

    Returns:
        DataFrame with 'h' and one order column per species (NaN on the coarsest level)
    """
    table = errors.sort_values("h", ascending=False).reset_index(drop=True)
    out = pd.DataFrame({"h": table["h"]})
    for label in SPECIES_LABELS:
        column = table[f"{norm}_{label}"].to_numpy()
        ratios = table["h"].to_numpy()
        orders = [float("nan")]
        for level in range(1, len(column)):
            orders.append(convergence_order(
                column[level - 1], column[level], ratios[level - 1] / ratios[level]
            ))
        out[f"order_{norm}_{label}"] = orders
    return out
