"""
Pydantic run-configuration models for trdiff.

Defines schemas for:
- RunSpec: one fully resolved run (problem, grid, material, boundary, time, outputs)
- Section models: GridSpec, MaterialSpec, BoundaryConfig, TimeSpec, ...
- PRESETS: benchmark defaults per problem, applied before user keys
"""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.benchmarks.probes import HistoryPoint, ProbeLine
from src.grid.boundary import FACES
from src.materials.models import ICFRegionConstants
from src.reconstruction.geno1d import GENO

PROBLEMS = ("accuracy", "model2d", "icf", "custom")
MODEL2D_COMPARISONS = ("linear4", "central2", "implicit")

_STRICT = ConfigDict(extra="forbid", frozen=True)


def _split_list(value, separator: str = ","):
    """Split 'a, b, c' text into stripped items; empty text gives []."""
    if isinstance(value, str):
        return [item.strip() for item in value.split(separator) if item.strip()]
    return value


def _parse_points(value, with_axis: bool):
    """'name [axis] x y z [snap]; ...' text to a list of dicts."""
    if not isinstance(value, str):
        return value
    items = []
    for chunk in _split_list(value, ";"):
        tokens = chunk.split()
        name, rest = tokens[0], tokens[1:]
        entry = {"name": name}
        if with_axis:
            if not rest:
                raise ValueError(f"probe '{name}' needs an axis and a point")
            entry["axis"], rest = rest[0], rest[1:]
            if rest and rest[-1] == "snap":
                entry["snap"], rest = True, rest[:-1]
        if len(rest) != 3:
            raise ValueError(f"'{chunk}' needs exactly three coordinates")
        entry["point"] = tuple(rest)
        items.append(entry)
    return items


class GridSpec(BaseModel):
    """Domain corners and cell counts."""
    model_config = _STRICT

    lo: Tuple[float, float, float] = Field((0.0, 0.0, 0.0), description="Lower domain corner")
    hi: Tuple[float, float, float] = Field((1.0, 1.0, 1.0), description="Upper domain corner")
    cells: Tuple[int, int, int] = Field((10, 10, 3), description="Cells per axis")

    @field_validator("lo", "hi", "cells", mode="before")
    @classmethod
    def split_triplet(cls, v):
        return _split_list(v)


class MaterialSpec(BaseModel):
    """Material model selection; constants are used by the 'custom' model only."""
    model_config = _STRICT

    name: Literal["linear-mms", "model2d", "icf", "custom"] = "linear-mms"

    # Custom model constants (ICF law shapes, one region)
    rho: Optional[float] = Field(None, gt=0)
    gamma_e: Optional[float] = Field(None, gt=0)
    gamma_i: Optional[float] = Field(None, gt=0)
    gamma_r: Optional[float] = Field(None, gt=0)
    a_e: Optional[float] = Field(None, gt=0)
    a_i: Optional[float] = Field(None, gt=0)
    a_r: Optional[float] = Field(None, gt=0)
    beta: Optional[float] = Field(None, ge=0)
    a_ei: Optional[float] = Field(None, gt=0)
    a_er: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def custom_constants_present(self):
        if self.name == "custom":
            required = ("rho", "gamma_e", "gamma_i", "gamma_r", "a_e", "a_i", "a_r",
                        "beta", "a_ei", "a_er")
            missing = [f"material.{key}" for key in required if getattr(self, key) is None]
            if missing:
                raise ValueError(f"material.name = custom requires {', '.join(missing)}")
        return self

    def constants(self) -> Optional[ICFRegionConstants]:
        if self.name != "custom":
            return None
        return ICFRegionConstants(
            rho=self.rho, gamma_e=self.gamma_e, gamma_i=self.gamma_i, gamma_r=self.gamma_r,
            a_e=self.a_e, a_i=self.a_i, a_r=self.a_r, beta=self.beta,
            a_ei=self.a_ei, a_er=self.a_er
        )


class BoundaryConfig(BaseModel):
    """
    Per-face species conditions 'cond_e, cond_i, cond_r'.

    Each condition is 'dirichlet:<T>', 'neumann:<outward gradient>' or 'analytic'.
    """
    model_config = _STRICT

    xlo: str = "neumann:0, neumann:0, neumann:0"
    xhi: str = "neumann:0, neumann:0, neumann:0"
    ylo: str = "neumann:0, neumann:0, neumann:0"
    yhi: str = "neumann:0, neumann:0, neumann:0"
    zlo: str = "neumann:0, neumann:0, neumann:0"
    zhi: str = "neumann:0, neumann:0, neumann:0"

    @field_validator(*FACES)
    @classmethod
    def three_conditions(cls, v: str) -> str:
        items = _split_list(v)
        if len(items) != 3:
            raise ValueError(f"needs three comma-separated conditions, got '{v}'")
        for item in items:
            kind, _, value = item.partition(":")
            kind = kind.strip().lower()
            if kind == "analytic" and not value:
                continue
            if kind not in ("dirichlet", "neumann"):
                raise ValueError(f"unknown boundary condition '{item}'")
            float(value)
        return ", ".join(items)

    def conditions(self) -> Dict[str, List[str]]:
        return {face: _split_list(getattr(self, face)) for face in FACES}

    def dirichlet_values(self) -> List[float]:
        """All prescribed Dirichlet temperatures."""
        values = []
        for conditions in self.conditions().values():
            for item in conditions:
                kind, _, value = item.partition(":")
                if kind.strip().lower() == "dirichlet":
                    values.append(float(value))
        return values


class InitialSpec(BaseModel):
    """Uniform initial temperatures (e, i, r)."""
    model_config = _STRICT

    temperature: Tuple[float, float, float] = Field((3e-4, 3e-4, 3e-4))

    @field_validator("temperature", mode="before")
    @classmethod
    def split_triplet(cls, v):
        items = _split_list(v)
        if isinstance(items, list) and len(items) == 1:
            return items * 3
        return items


class ReconstructionSpec(BaseModel):
    model_config = _STRICT

    scheme: Literal["geno", "linear4", "central2"] = GENO


class TimeSpec(BaseModel):
    """Physical and pseudo time stepping."""
    model_config = _STRICT

    scheme: Literal["rk2", "implicit"] = "rk2"
    dt: Optional[float] = Field(None, gt=0, description="Physical time step")
    dt_factor: Optional[float] = Field(None, gt=0, description="dt = dt_factor * h^2 (accuracy test)")
    t_end: float = Field(1.0, gt=0)
    checkpoints: List[float] = Field(default_factory=list, description="Extra output times")

    # Dual time stepping
    dtau: Optional[float] = Field(None, gt=0, description="Pseudo time step")
    drop_orders: float = Field(3.0, gt=0)
    max_inner_iters: int = Field(200, ge=1)
    residual: Literal["unsteady", "delta"] = "unsteady"
    jacobian_lag: int = Field(1, ge=1)

    @field_validator("checkpoints", mode="before")
    @classmethod
    def split_times(cls, v):
        return _split_list(v)

    @model_validator(mode="after")
    def implicit_needs_dtau(self):
        if self.scheme == "implicit" and self.dtau is None:
            raise ValueError("time.dtau is required when time.scheme = implicit")
        if any(c <= 0 or c > self.t_end for c in self.checkpoints):
            raise ValueError("time.checkpoints must lie in (0, time.t_end]")
        return self


class OutputSpec(BaseModel):
    """Requested artifacts."""
    model_config = _STRICT

    probes: List[ProbeLine] = Field(default_factory=list)
    histories: List[HistoryPoint] = Field(default_factory=list)
    volumes: bool = Field(False, description="Write a VTK volume at every checkpoint")
    report: bool = True

    @field_validator("probes", mode="before")
    @classmethod
    def parse_probes(cls, v):
        return _parse_points(v, with_axis=True)

    @field_validator("histories", mode="before")
    @classmethod
    def parse_histories(cls, v):
        return _parse_points(v, with_axis=False)


class AccuracySpec(BaseModel):
    model_config = _STRICT

    meshes: List[int] = Field([5, 10, 20, 40], description="Inverse mesh sizes 1/h")
    order_tolerance: float = Field(0.2, gt=0)

    @field_validator("meshes", mode="before")
    @classmethod
    def split_meshes(cls, v):
        return _split_list(v)

    @field_validator("meshes")
    @classmethod
    def enough_cells(cls, v: List[int]) -> List[int]:
        if not v or any(n < 3 for n in v):
            raise ValueError("accuracy.meshes needs inverse mesh sizes of at least 3")
        return sorted(v)


class Model2dSpec(BaseModel):
    model_config = _STRICT

    comparisons: List[Literal["linear4", "central2", "implicit"]] = Field(
        default_factory=lambda: list(MODEL2D_COMPARISONS)
    )
    bounds_time: float = Field(0.5, gt=0)
    implicit_multipliers: List[float] = Field([10.0, 100.0, 1000.0])
    gated_multipliers: List[float] = Field([10.0, 100.0])
    implicit_dtau_factor: float = Field(1000.0, gt=0, description="dtau as a multiple of time.dt")
    implicit_drop_orders: float = Field(4.0, gt=0)
    probe_gate: float = Field(0.02, gt=0, description="Max L1-relative probe difference")
    reference_tr_max: float = Field(95.1827, gt=0)
    tr_max_tolerance: float = Field(0.02, gt=0)

    @field_validator("comparisons", "implicit_multipliers", "gated_multipliers", mode="before")
    @classmethod
    def split_items(cls, v):
        return _split_list(v)


class IcfSpec(BaseModel):
    model_config = _STRICT

    compare_central2: bool = False
    front_threshold: float = Field(0.01, gt=0)
    floor: float = Field(3e-4, gt=0, description="Initial temperature floor")
    ceiling: float = Field(2.0, gt=0, description="Isothermal wall temperature")


class RunSpec(BaseModel):
    """One fully resolved run."""

    problem: Literal["accuracy", "model2d", "icf", "custom"]
    seed: int = Field(0, description="Recorded only")
    grid: GridSpec = Field(default_factory=GridSpec)
    material: MaterialSpec = Field(default_factory=MaterialSpec)
    boundary: BoundaryConfig = Field(default_factory=BoundaryConfig)
    initial: InitialSpec = Field(default_factory=InitialSpec)
    reconstruction: ReconstructionSpec = Field(default_factory=ReconstructionSpec)
    time: TimeSpec = Field(default_factory=TimeSpec)
    output: OutputSpec = Field(default_factory=OutputSpec)
    accuracy: AccuracySpec = Field(default_factory=AccuracySpec)
    model2d: Model2dSpec = Field(default_factory=Model2dSpec)
    icf: IcfSpec = Field(default_factory=IcfSpec)

    @model_validator(mode="after")
    def step_size_given(self):
        if self.problem == "accuracy":
            if self.time.dt is None and self.time.dt_factor is None:
                raise ValueError("accuracy needs time.dt_factor or time.dt")
        elif self.time.dt is None:
            raise ValueError(f"problem {self.problem} needs time.dt")
        uses_analytic = any(
            item == "analytic"
            for conditions in self.boundary.conditions().values()
            for item in conditions
        )
        if uses_analytic and self.problem != "accuracy":
            raise ValueError("boundary condition 'analytic' is only available for problem = accuracy")
        return self

    model_config = {
        **_STRICT,
        "json_schema_extra": {
            "example": {
                "problem": "model2d",
                "time": {"scheme": "implicit", "dt": 3e-3, "dtau": 0.3, "drop_orders": 4},
            }
        }
    }


_ALL_NEUMANN = "neumann:0, neumann:0, neumann:0"

PRESETS: Dict[str, dict] = {
    "accuracy": {
        "grid": {"lo": (0.0, 0.0, 0.0), "hi": (1.0, 1.0, 0.6), "cells": (5, 5, 3)},
        "material": {"name": "linear-mms"},
        "boundary": {face: "analytic, analytic, analytic" for face in FACES},
        "initial": {"temperature": (1.0, 1.0, 1.0)},
        "time": {"scheme": "rk2", "dt_factor": 0.1, "t_end": 1.0},
        "accuracy": {"meshes": [5, 10, 20, 40]},
    },
    "model2d": {
        "grid": {"lo": (0.0, 0.0, 0.0), "hi": (300.0, 300.0, 9.0), "cells": (100, 100, 3)},
        "material": {"name": "model2d"},
        "boundary": {
            "xlo": "neumann:0, neumann:0, dirichlet:100",
            **{face: _ALL_NEUMANN for face in FACES if face != "xlo"},
        },
        "initial": {"temperature": (3e-4, 3e-4, 3e-4)},
        "time": {"scheme": "rk2", "dt": 3e-4, "t_end": 5.0, "checkpoints": [0.5]},
        "output": {"probes": [
            {"name": "col_x1.5", "axis": "y", "point": (1.5, 0.0, 4.5)},
            {"name": "row_y250", "axis": "x", "point": (0.0, 250.0, 4.5), "snap": True},
        ]},
    },
    "icf": {
        "grid": {"lo": (-115.0, 0.0, 0.0), "hi": (115.0, 115.0, 115.0), "cells": (20, 10, 10)},
        "material": {"name": "icf"},
        "boundary": {
            "xlo": "neumann:0, neumann:0, dirichlet:2",
            "xhi": "neumann:0, neumann:0, dirichlet:2",
            "ylo": _ALL_NEUMANN,
            "yhi": "neumann:0, neumann:0, dirichlet:2",
            "zlo": _ALL_NEUMANN,
            "zhi": "neumann:0, neumann:0, dirichlet:2",
        },
        "initial": {"temperature": (3e-4, 3e-4, 3e-4)},
        "time": {"scheme": "implicit", "dt": 1e-3, "dtau": 1e-2, "drop_orders": 3.0,
                 "t_end": 0.3, "checkpoints": [0.1, 0.2], "max_inner_iters": 200},
        "output": {
            "probes": [{"name": "front", "axis": "y", "point": (0.0, 0.0, 57.5), "snap": True}],
            "histories": [
                {"name": "loc1", "point": (0.0, 112.5, 112.5)},
                {"name": "loc2", "point": (0.0, 87.5, 87.5)},
            ],
        },
    },
    "custom": {
        "grid": {"lo": (0.0, 0.0, 0.0), "hi": (1.0, 1.0, 1.0), "cells": (10, 10, 3)},
        "material": {"name": "linear-mms"},
        "initial": {"temperature": (1.0, 1.0, 1.0)},
        "time": {"scheme": "rk2", "dt": 1e-3, "t_end": 0.01},
    },
}

# Full-scale settings applied on top of a preset with --long-running
LONG_RUNNING: Dict[str, dict] = {
    "icf": {
        "grid": {"cells": (46, 23, 23)},
        "time": {"dt": 6e-6, "dtau": 6e-5, "t_end": 10.0, "checkpoints": [0.3, 5.0]},
    },
}
