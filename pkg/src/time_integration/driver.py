"""
Physical time loop.

Steps an integrator from t0 to t_end, shortening the step that would pass a
requested output time so every checkpoint is hit exactly.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from src.time_integration.dual_time import StepStats
from src.utils.errors import ConfigurationError, NonConvergenceError
from src.utils.logger import get_logger

logger = get_logger(__name__)

SNAP_FRACTION = 1e-9

StepCallback = Callable[[StepStats], None]
CheckpointCallback = Callable[[float, np.ndarray], None]


@dataclass
class TimeLoopResult:
    """Outcome of a time loop."""
    energy: np.ndarray
    t: float
    steps: List[StepStats] = field(default_factory=list)

    @property
    def all_converged(self) -> bool:
        return all(s.converged for s in self.steps)

    @property
    def total_inner_iters(self) -> int:
        return sum(s.inner_iters for s in self.steps)


def plan_times(t0: float, t_end: float, dt: float, checkpoints: Sequence[float] = ()) -> List[float]:
    """
    End times of every step from t0 to t_end.

    Nominal times are t0 + k*dt; checkpoints are inserted and nominal times
    within a tiny fraction of a step of a checkpoint are merged into it.
    """
    if dt <= 0 or t_end <= t0:
        raise ConfigurationError(f"Invalid time window t0={t0}, t_end={t_end}, dt={dt}")
    snap = SNAP_FRACTION * dt
    n_nominal = int(np.floor((t_end - t0) / dt + 1e-9))
    times = [t0 + k * dt for k in range(1, n_nominal + 1)]
    marks = sorted({float(c) for c in checkpoints if t0 < c < t_end} | {float(t_end)})
    for mark in marks:
        times = [t for t in times if abs(t - mark) > snap]
        times.append(mark)
    return sorted(t for t in set(times) if t0 < t <= t_end + snap)


def run_time_loop(
    integrator,
    energy: np.ndarray,
    t0: float,
    t_end: float,
    dt: float,
    checkpoints: Sequence[float] = (),
    on_step: Optional[StepCallback] = None,
    on_checkpoint: Optional[CheckpointCallback] = None,
    strict: bool = False,
    show_progress: bool = True,
    description: str = "Time steps"
) -> TimeLoopResult:
    """
    Advance `energy` from t0 to t_end.

    Args:
        integrator: Object with step(energy, t, dt, step_index) -> (energy, StepStats)
        energy: Initial W
        t0: Start time
        t_end: End time
        dt: Nominal step
        checkpoints: Output times hit exactly
        on_step: Called with the stats of every step
        on_checkpoint: Called with (t, W) at each checkpoint and at t_end
        strict: Raise NonConvergenceError on the first unconverged implicit step
        show_progress: Show a tqdm progress bar
        description: Progress bar label

    Returns:
        TimeLoopResult
    """
    times = plan_times(t0, t_end, dt, checkpoints)
    marks = {float(c) for c in checkpoints if t0 < c <= t_end} | {float(t_end)}
    result = TimeLoopResult(energy=np.asarray(energy, dtype=float), t=t0)

    t = t0
    w = result.energy
    with tqdm(total=len(times), desc=description, disable=not show_progress, leave=False) as pbar:
        for index, t_next in enumerate(times, start=1):
            w, stats = integrator.step(w, t, t_next - t, index)
            stats.t = t_next
            t = t_next
            result.steps.append(stats)
            if on_step is not None:
                on_step(stats)
            if strict and not stats.converged:
                raise NonConvergenceError(
                    f"Implicit step {index} at t={t:.6g} did not converge in {stats.inner_iters} iterations"
                )
            if on_checkpoint is not None and any(abs(t - mark) <= SNAP_FRACTION * dt for mark in marks):
                on_checkpoint(t, w)
            pbar.update(1)

    result.energy = w
    result.t = t
    logger.debug(f"Time loop finished at t={t:.6g} after {len(times)} steps")
    return result
