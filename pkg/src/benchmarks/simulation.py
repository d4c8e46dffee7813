"""
Single-case runner shared by the benchmarks.

A case is one grid + material + boundary + scheme + time setting. Running it
steps the time loop, writes one run.log line per physical step, and records
bounds, probe series and histories at the requested output times.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.benchmarks.probes import HistoryPoint, ProbeLine, history_cells, probe_frame
from src.benchmarks.report import bounds_row
from src.data.exporters import RunArtifacts
from src.data.schemas import RunSpec
from src.grid.boundary import BoundarySpec, boundary_from_strings
from src.grid.fields import SPECIES_LABELS, EnergyState, TemperatureState, total_energy
from src.grid.structured_grid import StructuredGrid, build_grid
from src.materials.models import MaterialModel, get_material_model
from src.operators.spatial import ExtraSource, SemiDiscreteProblem
from src.time_integration.driver import TimeLoopResult, run_time_loop
from src.time_integration.dual_time import DualTimeConfig, DualTimeIntegrator, StepStats
from src.time_integration.explicit import ExplicitIntegrator
from src.utils.errors import ConfigurationError
from src.utils.file_utils import format_float
from src.utils.logger import get_logger

logger = get_logger(__name__)
run_log = get_logger("runlog")


@dataclass
class Case:
    """
    One solver run.

    Attributes:
        label: Run name used in logs, report keys and file names
        problem: Semi-discrete problem (grid, model, boundary, scheme, source)
        initial_temperature: Interior temperatures at t = 0
        time_scheme: 'rk2' or 'implicit'
        dt: Physical step
        t_end: Final time
        dual: Inner-iteration settings (implicit only)
        checkpoints: Output times besides t_end
        probes: Probe lines recorded at every output time
        histories: Cells recorded after every step
    """
    label: str
    problem: SemiDiscreteProblem
    initial_temperature: np.ndarray
    time_scheme: str
    dt: float
    t_end: float
    dual: Optional[DualTimeConfig] = None
    checkpoints: Sequence[float] = ()
    probes: Sequence[ProbeLine] = ()
    histories: Sequence[HistoryPoint] = ()

    @property
    def grid(self) -> StructuredGrid:
        return self.problem.grid


@dataclass
class CaseResult:
    """Everything recorded while running a case."""
    label: str
    temperature: np.ndarray
    t: float
    steps: List[StepStats]
    fields: Dict[float, np.ndarray] = field(default_factory=dict)
    bounds: List[Dict[str, float]] = field(default_factory=list)
    probes: Dict[str, pd.DataFrame] = field(default_factory=dict)
    histories: Dict[str, pd.DataFrame] = field(default_factory=dict)
    initial_energy: float = 0.0
    final_energy: float = 0.0
    wall: float = 0.0

    @property
    def all_converged(self) -> bool:
        return all(s.converged for s in self.steps)

    @property
    def energy_drift(self) -> float:
        """Relative change of the total energy over the run."""
        if self.initial_energy == 0.0:
            return abs(self.final_energy)
        return abs(self.final_energy - self.initial_energy) / abs(self.initial_energy)

    def probe(self, name: str, t: float) -> pd.DataFrame:
        return self.probes[probe_key(name, t)]

    def stats(self) -> Dict[str, float]:
        inner = [s.inner_iters for s in self.steps]
        residual = max((float(np.max(s.final_residual)) for s in self.steps), default=0.0)
        return {
            "steps": float(len(self.steps)),
            "inner_iters_total": float(sum(inner)),
            "inner_iters_max": float(max(inner, default=0)),
            "max_final_residual": residual,
            "unconverged_steps": float(sum(not s.converged for s in self.steps)),
            "energy_drift": self.energy_drift,
        }


def probe_key(name: str, t: float) -> str:
    return f"{name}@t={format_float(t)}"


def step_line(label: str, stats: StepStats) -> str:
    """One run.log record."""
    res = np.asarray(stats.final_residual, dtype=float)
    return (
        f"{label} step={stats.step} t={format_float(stats.t)} inner={stats.inner_iters} "
        f"res_e={res[0]:.6e} res_i={res[1]:.6e} res_r={res[2]:.6e} "
        f"converged={'yes' if stats.converged else 'no'} wall={stats.wall:.6f}"
    )


class _RecordingIntegrator:
    """Calls `on_state(t, W)` after every step of the wrapped integrator."""

    def __init__(self, inner, on_state: Callable[[float, np.ndarray], None]):
        self.inner = inner
        self.on_state = on_state

    def step(self, energy: np.ndarray, t: float, dt: Optional[float] = None,
             step_index: int = 0) -> tuple:
        w, stats = self.inner.step(energy, t, dt, step_index)
        self.on_state(stats.t, w)
        return w, stats


def make_integrator(case: Case):
    if case.time_scheme == "implicit":
        if case.dual is None:
            raise ConfigurationError(f"Case {case.label} is implicit but has no dual-time settings")
        return DualTimeIntegrator(case.problem, case.dual)
    return ExplicitIntegrator(case.problem, case.dt)


def run_case(
    case: Case,
    artifacts: Optional[RunArtifacts] = None,
    strict: bool = False,
    show_progress: bool = True
) -> CaseResult:
    """
    Run one case from t = 0 to case.t_end.

    Args:
        case: Case definition
        artifacts: Destination for probe CSVs, volumes and histories (optional)
        strict: Raise on the first unconverged implicit step
        show_progress: Show a progress bar

    Returns:
        CaseResult
    """
    problem = case.problem
    grid = case.grid
    logger.info(
        f"[{case.label}] {case.time_scheme} dt={case.dt:.6g} t_end={case.t_end:.6g} "
        f"scheme={problem.scheme} cells={grid.n_cells}"
    )

    temperature0 = np.asarray(case.initial_temperature, dtype=float)
    energy0 = problem.energy(temperature0)
    result = CaseResult(label=case.label, temperature=temperature0, t=0.0, steps=[])
    result.initial_energy = total_energy(EnergyState(energy0), grid)[1]

    cells = history_cells(grid, list(case.histories))
    series: Dict[str, List[Dict[str, float]]] = {p.name: [] for p in case.histories}

    def record_histories(t: float, temperature: np.ndarray) -> None:
        for point, (i, j, k) in zip(case.histories, cells):
            row = {"t": t}
            for species, label in enumerate(SPECIES_LABELS):
                row[label] = float(temperature[species, i, j, k])
            series[point.name].append(row)

    def record_output(t: float, temperature: np.ndarray, write: bool = True) -> None:
        result.fields[t] = temperature.copy()
        result.bounds.append(bounds_row(case.label, t, temperature))
        write = write and artifacts is not None
        for line in case.probes:
            result.probes[probe_key(line.name, t)] = probe_frame(temperature, grid, line)
            if write:
                artifacts.probe(case.label, line, t, temperature, grid)
        if write:
            artifacts.volume(case.label, t, temperature, grid)

    def on_step(stats: StepStats) -> None:
        run_log.info(step_line(case.label, stats))

    def on_checkpoint(t: float, energy: np.ndarray) -> None:
        record_output(t, problem.temperature(energy))

    record_histories(0.0, temperature0)
    record_output(0.0, temperature0, write=False)

    integrator = make_integrator(case)
    if case.histories:
        integrator = _RecordingIntegrator(
            integrator, lambda t, w: record_histories(t, problem.temperature(w))
        )

    started = time.perf_counter()
    loop: TimeLoopResult = run_time_loop(
        integrator, energy0, 0.0, case.t_end, case.dt,
        checkpoints=case.checkpoints,
        on_step=on_step,
        on_checkpoint=on_checkpoint,
        strict=strict,
        show_progress=show_progress,
        description=case.label,
    )
    result.wall = time.perf_counter() - started

    result.steps = loop.steps
    result.t = loop.t
    result.temperature = problem.temperature(loop.energy)
    result.final_energy = total_energy(EnergyState(loop.energy), grid)[1]
    result.histories = {name: pd.DataFrame(rows) for name, rows in series.items()}
    if artifacts is not None:
        for name, df in result.histories.items():
            artifacts.history(case.label, name, df)

    if not result.all_converged:
        logger.warning(f"[{case.label}] {sum(not s.converged for s in loop.steps)} steps did not converge")
    logger.info(
        f"[{case.label}] finished {len(loop.steps)} steps in {result.wall:.2f}s "
        f"(energy drift {result.energy_drift:.3e})"
    )
    return result


def grid_from_spec(spec: RunSpec, model: MaterialModel) -> StructuredGrid:
    return build_grid(spec.grid.lo, spec.grid.hi, spec.grid.cells, model.classifier)


def model_from_spec(spec: RunSpec) -> MaterialModel:
    return get_material_model(spec.material.name, spec.material.constants())


def boundary_from_spec(spec: RunSpec) -> BoundarySpec:
    return boundary_from_strings(spec.boundary.conditions())


def dual_config(spec: RunSpec, dt: float, dtau: Optional[float] = None,
                drop_orders: Optional[float] = None) -> DualTimeConfig:
    """Inner-iteration settings from the time section, with optional overrides."""
    time_spec = spec.time
    return DualTimeConfig(
        dt=dt,
        dtau=time_spec.dtau if dtau is None else dtau,
        drop_orders=time_spec.drop_orders if drop_orders is None else drop_orders,
        max_inner_iters=time_spec.max_inner_iters,
        residual=time_spec.residual,
        jacobian_lag=time_spec.jacobian_lag,
    )


def case_from_spec(
    spec: RunSpec,
    label: str,
    scheme: Optional[str] = None,
    time_scheme: Optional[str] = None,
    dt: Optional[float] = None,
    t_end: Optional[float] = None,
    dtau: Optional[float] = None,
    drop_orders: Optional[float] = None,
    checkpoints: Optional[Sequence[float]] = None,
    extra_source: Optional[ExtraSource] = None
) -> Case:
    """
    Build a case from a RunSpec; keyword arguments override the spec.
    """
    model = model_from_spec(spec)
    grid = grid_from_spec(spec, model)
    boundary = boundary_from_spec(spec)
    problem = SemiDiscreteProblem(
        grid=grid, model=model, boundary=boundary,
        scheme=spec.reconstruction.scheme if scheme is None else scheme,
        extra_source=extra_source,
    )
    time_scheme = spec.time.scheme if time_scheme is None else time_scheme
    dt = spec.time.dt if dt is None else dt
    t_end = spec.time.t_end if t_end is None else t_end
    marks = spec.time.checkpoints if checkpoints is None else checkpoints

    dual = None
    if time_scheme == "implicit":
        dual = dual_config(spec, dt, dtau, drop_orders)

    initial = TemperatureState.uniform(grid, spec.initial.temperature).values
    return Case(
        label=label,
        problem=problem,
        initial_temperature=initial,
        time_scheme=time_scheme,
        dt=dt,
        t_end=t_end,
        dual=dual,
        checkpoints=tuple(c for c in marks if c < t_end),
        probes=tuple(spec.output.probes),
        histories=tuple(spec.output.histories),
    )


def relative_drop(history: Sequence[np.ndarray]) -> float:
    """Orders of magnitude the residual dropped over one implicit step."""
    if len(history) < 2:
        return math.inf
    first = float(np.max(history[0]))
    last = float(np.max(history[-1]))
    if first == 0.0 or last == 0.0:
        return math.inf
    return math.log10(first / last)
