"""
Benchmark report container.

Tables are pandas DataFrames; scalar results, comparisons and acceptance
checks flatten into ordered key/value pairs for the report file.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from src.grid.fields import SPECIES_LABELS
from src.utils.file_utils import format_float

BOUNDS_COLUMNS = [f"{label}_{kind}" for label in SPECIES_LABELS for kind in ("min", "max")]


def bounds_row(label: str, t: float, temperature: np.ndarray) -> Dict[str, float]:
    """One bounds-table row: min/max per species over interior cells."""
    flat = np.asarray(temperature, dtype=float).reshape(3, -1)
    row = {"run": label, "t": float(t)}
    for species, name in enumerate(SPECIES_LABELS):
        row[f"{name}_min"] = float(flat[species].min())
        row[f"{name}_max"] = float(flat[species].max())
    return row


@dataclass
class BenchmarkReport:
    """
    Results of one benchmark or custom run.

    Attributes:
        problem: Problem name
        errors: Per-mesh error table (accuracy)
        orders: Observed orders between consecutive meshes (accuracy)
        bounds: Temperature bounds per run and time
        probes: Probe series keyed by '<run>/<probe>@<t>'
        histories: Time series keyed by '<run>/<point>'
        values: Scalar results (comparisons, front extents, references)
        checks: Acceptance checks
        stats: Iteration and conservation statistics per run
    """
    problem: str
    errors: pd.DataFrame = field(default_factory=pd.DataFrame)
    orders: pd.DataFrame = field(default_factory=pd.DataFrame)
    bounds: pd.DataFrame = field(default_factory=pd.DataFrame)
    probes: Dict[str, pd.DataFrame] = field(default_factory=dict)
    histories: Dict[str, pd.DataFrame] = field(default_factory=dict)
    values: Dict[str, float] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    stats: Dict[str, Dict[str, float]] = field(default_factory=dict)

    def add_bounds(self, rows: List[Dict[str, float]]) -> None:
        frame = pd.DataFrame(rows)
        self.bounds = frame if self.bounds.empty else pd.concat([self.bounds, frame], ignore_index=True)

    def add_case(self, result) -> None:
        """Collect bounds, probes, histories and statistics of a finished CaseResult."""
        self.add_bounds(result.bounds)
        for key, frame in result.probes.items():
            self.probes[f"{result.label}/{key}"] = frame
        for name, frame in result.histories.items():
            self.histories[f"{result.label}/{name}"] = frame
        self.stats[result.label] = result.stats()

    def bounds_for(self, run: str, t: Optional[float] = None) -> pd.DataFrame:
        frame = self.bounds[self.bounds["run"] == run]
        if t is not None:
            frame = frame[np.isclose(frame["t"], t, rtol=0.0, atol=1e-12)]
        return frame

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_key_values(self) -> Dict[str, str]:
        """Flatten everything scalar into ordered key -> text pairs."""
        out: Dict[str, str] = {"problem": self.problem}

        if not self.errors.empty:
            for _, row in self.errors.iterrows():
                level = f"errors.h={format_float(row['h'])}"
                for column in self.errors.columns:
                    if column != "h":
                        out[f"{level}.{column}"] = format_float(row[column])
        if not self.orders.empty:
            for _, row in self.orders.iterrows():
                level = f"orders.h={format_float(row['h'])}"
                for column in self.orders.columns:
                    if column != "h" and not np.isnan(row[column]):
                        out[f"{level}.{column}"] = format_float(row[column])
        if not self.bounds.empty:
            for _, row in self.bounds.iterrows():
                level = f"bounds.{row['run']}.t={format_float(row['t'])}"
                for column in BOUNDS_COLUMNS:
                    out[f"{level}.{column}"] = format_float(row[column])

        for key, value in self.values.items():
            out[f"value.{key}"] = format_float(value)
        for run, run_stats in self.stats.items():
            for key, value in run_stats.items():
                out[f"stats.{run}.{key}"] = format_float(value)
        for key, ok in self.checks.items():
            out[f"check.{key}"] = "pass" if ok else "fail"
        out["passed"] = "true" if self.passed else "false"
        return out
