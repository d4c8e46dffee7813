"""
Boundary conditions and ghost-layer filling.

Each of the six domain faces carries one condition per species. Neumann values
are outward-normal gradients.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Sequence, Tuple, Union

import numpy as np

from src.grid.structured_grid import StructuredGrid
from src.utils.errors import ConfigurationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

FACES = ("xlo", "xhi", "ylo", "yhi", "zlo", "zhi")
N_SPECIES = 3

AnalyticFunction = Callable[[np.ndarray, np.ndarray, np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class Dirichlet:
    """Prescribed boundary temperature."""
    value: float

    def describe(self) -> str:
        return f"dirichlet:{self.value!r}"


@dataclass(frozen=True)
class Neumann:
    """Prescribed outward-normal temperature gradient."""
    gradient: float = 0.0

    def describe(self) -> str:
        return f"neumann:{self.gradient!r}"


@dataclass(frozen=True)
class Analytic:
    """Ghost cells sampled from a function of (x, y, z, t) at their centres."""
    function: AnalyticFunction
    name: str = "analytic"

    def describe(self) -> str:
        return self.name


Condition = Union[Dirichlet, Neumann, Analytic]


def face_name(axis: int, side: int) -> str:
    """Face key for an axis (0..2) and side (0 = low, 1 = high)."""
    return FACES[2 * axis + side]


@dataclass
class BoundarySpec:
    """
    Per-face, per-species boundary conditions.

    Attributes:
        faces: Mapping face name -> tuple of three conditions (e, i, r)
    """
    faces: Dict[str, Tuple[Condition, Condition, Condition]] = field(default_factory=dict)

    def __post_init__(self):
        missing = [name for name in FACES if name not in self.faces]
        if missing:
            raise ConfigurationError(f"Boundary conditions missing for faces: {missing}")
        unknown = [name for name in self.faces if name not in FACES]
        if unknown:
            raise ConfigurationError(f"Unknown boundary faces: {unknown}")
        for name, conditions in self.faces.items():
            if len(conditions) != N_SPECIES:
                raise ConfigurationError(
                    f"Face {name} needs exactly {N_SPECIES} conditions, got {len(conditions)}"
                )
            self.faces[name] = tuple(conditions)

    def condition(self, axis: int, side: int, species: int) -> Condition:
        return self.faces[face_name(axis, side)][species]

    @classmethod
    def uniform(cls, conditions: Sequence[Condition]) -> "BoundarySpec":
        """Same species conditions on every face."""
        return cls(faces={name: tuple(conditions) for name in FACES})

    @classmethod
    def closed(cls) -> "BoundarySpec":
        """Zero-flux box."""
        return cls.uniform((Neumann(0.0), Neumann(0.0), Neumann(0.0)))

    @property
    def is_closed(self) -> bool:
        return all(
            isinstance(c, Neumann) and c.gradient == 0.0
            for conditions in self.faces.values() for c in conditions
        )

    def describe(self) -> Dict[str, str]:
        return {
            name: ",".join(c.describe() for c in conditions)
            for name, conditions in self.faces.items()
        }


def parse_condition(text: str) -> Condition:
    """
    Parse 'dirichlet:<T>' or 'neumann:<outward gradient>'.

    Raises:
        ConfigurationError: Unknown kind, missing value, or 'analytic' (which
            needs a function and is only built by the accuracy benchmark)
    """
    kind, _, value = text.strip().partition(":")
    kind = kind.strip().lower()
    if kind == "analytic":
        raise ConfigurationError("'analytic' boundaries are only available for the accuracy problem")
    if kind not in ("dirichlet", "neumann"):
        raise ConfigurationError(f"Unknown boundary condition '{text}'")
    try:
        number = float(value)
    except ValueError as e:
        raise ConfigurationError(f"Boundary condition '{text}' needs a numeric value") from e
    return Dirichlet(number) if kind == "dirichlet" else Neumann(number)


def boundary_from_strings(faces: Dict[str, Sequence[str]]) -> BoundarySpec:
    """BoundarySpec from face -> three condition strings."""
    return BoundarySpec(faces={
        name: tuple(parse_condition(item) for item in conditions)
        for name, conditions in faces.items()
    })


def _layer(axis: int, index: int, tangential: Sequence[slice]) -> tuple:
    """Index tuple selecting one layer along `axis` with given tangential ranges."""
    spatial = list(tangential)
    spatial[axis] = index
    return tuple(spatial)


def fill_ghosts(
    temperature: np.ndarray,
    grid: StructuredGrid,
    boundary: BoundarySpec,
    t: float
) -> np.ndarray:
    """
    Fill the ghost layers of a padded temperature array.

    Axes are processed in order x, y, z. Along each axis the ghost slabs span
    the full padded extent of the axes already processed and the interior of
    the others, so edge and corner ghosts are populated by the cascade.

    Args:
        temperature: Padded array (3, nx+4, ny+4, nz+4), interior populated
        grid: Structured grid
        boundary: Boundary conditions
        t: Time at which Analytic conditions are evaluated

    Returns:
        New padded array with ghosts filled
    """
    out = np.array(temperature, dtype=float, copy=True)
    g = grid.n_ghost
    padded_centers = [grid.centers(m, padded=True) for m in range(3)]

    for axis in range(3):
        tangential = []
        for m in range(3):
            if m < axis:
                tangential.append(slice(None))
            else:
                tangential.append(slice(g, g + grid.n_cells[m]))

        n = grid.n_cells[axis]
        h = grid.spacing[axis]
        for side in (0, 1):
            for layer in range(1, g + 1):
                if side == 0:
                    ghost_index = g - layer
                    mirror_index = g + layer - 1
                else:
                    ghost_index = g + n - 1 + layer
                    mirror_index = g + n - layer
                distance = (2 * layer - 1) * h

                for species in range(N_SPECIES):
                    cond = boundary.condition(axis, side, species)
                    ghost_sel = (species,) + _layer(axis, ghost_index, tangential)
                    mirror_sel = (species,) + _layer(axis, mirror_index, tangential)

                    if isinstance(cond, Dirichlet):
                        out[ghost_sel] = 2.0 * cond.value - out[mirror_sel]
                    elif isinstance(cond, Neumann):
                        out[ghost_sel] = out[mirror_sel] + cond.gradient * distance
                    elif isinstance(cond, Analytic):
                        coords = []
                        for m in range(3):
                            if m == axis:
                                coords.append(np.array([padded_centers[m][ghost_index]]))
                            else:
                                coords.append(padded_centers[m][tangential[m]])
                        X, Y, Z = np.meshgrid(*coords, indexing="ij")
                        values = np.asarray(cond.function(X, Y, Z, t), dtype=float)
                        values = np.broadcast_to(values, X.shape)
                        out[ghost_sel] = np.take(values, 0, axis=axis)
                    else:
                        raise ConfigurationError(f"Unsupported boundary condition {cond!r}")

    return out
