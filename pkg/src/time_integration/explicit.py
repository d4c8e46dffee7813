"""
Explicit second-order Runge-Kutta (midpoint) stepping.
"""

import time
from typing import Callable, Optional

import numpy as np

from src.operators.spatial import SemiDiscreteProblem
from src.time_integration.dual_time import StepStats
from src.utils.logger import LoggerMixin

Rhs = Callable[[np.ndarray, float], np.ndarray]


def step_rk2(energy: np.ndarray, t: float, dt: float, rhs: Rhs) -> np.ndarray:
    """
    Midpoint step W^{n+1} = W^n + dt L(W^n + dt/2 L(W^n, t), t + dt/2).

    Args:
        energy: W^n
        t: t^n
        dt: Step size
        rhs: L(W, t); temperatures are re-derived from W inside each call

    Returns:
        W^{n+1}
    """
    w = np.asarray(energy, dtype=float)
    midpoint = w + 0.5 * dt * rhs(w, t)
    return w + dt * rhs(midpoint, t + 0.5 * dt)


class ExplicitIntegrator(LoggerMixin):
    """RK2 integrator with the same step interface as DualTimeIntegrator."""

    def __init__(self, problem: SemiDiscreteProblem, dt: float):
        self.problem = problem
        self.dt = dt

    def step(self, energy: np.ndarray, t: float, dt: Optional[float] = None,
             step_index: int = 0) -> tuple:
        dt = self.dt if dt is None else dt
        started = time.perf_counter()
        w = step_rk2(energy, t, dt, self.problem.rhs)
        stats = StepStats(step=step_index, t=t + dt, dt=dt, wall=time.perf_counter() - started)
        return w, stats
