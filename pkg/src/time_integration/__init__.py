"""
Time integration package for trdiff.

Explicit RK2, the simplified Jacobian, LU-SGS sweeps, dual time stepping and
the physical time loop.
"""

from src.time_integration.driver import TimeLoopResult, plan_times, run_time_loop
from src.time_integration.dual_time import (
    DualTimeConfig, DualTimeIntegrator, StepStats, residual_norms
)
from src.time_integration.explicit import ExplicitIntegrator, step_rk2
from src.time_integration.jacobian import (
    FrozenCoefficients, assemble_jacobian, freeze_coefficients,
    frozen_second_order_operator, jacobian_blocks
)
from src.time_integration.lusgs import (
    BlockSystem, block_matvec, factored_matvec, invert_diagonal, lusgs_solve
)

__all__ = [
    "TimeLoopResult", "plan_times", "run_time_loop",
    "DualTimeConfig", "DualTimeIntegrator", "StepStats", "residual_norms",
    "ExplicitIntegrator", "step_rk2",
    "FrozenCoefficients", "assemble_jacobian", "freeze_coefficients",
    "frozen_second_order_operator", "jacobian_blocks",
    "BlockSystem", "block_matvec", "factored_matvec", "invert_diagonal", "lusgs_solve",
]
