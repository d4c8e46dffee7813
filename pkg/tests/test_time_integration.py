"""LU-SGS sweeps, the simplified Jacobian and the time integrators."""

from __future__ import annotations

import numpy as np
import pytest

from src.grid.boundary import BoundarySpec, Dirichlet, Neumann
from src.grid.fields import EnergyState, total_energy
from src.grid.structured_grid import build_grid
from src.materials.models import get_material_model, icf_model
from src.operators.spatial import SemiDiscreteProblem
from src.reconstruction.geno1d import CENTRAL2, LINEAR4
from src.time_integration.driver import plan_times, run_time_loop
from src.time_integration.dual_time import DualTimeConfig, DualTimeIntegrator, StepStats
from src.time_integration.explicit import ExplicitIntegrator
from src.time_integration.jacobian import (
    freeze_coefficients, frozen_second_order_operator, jacobian_blocks
)
from src.time_integration.lusgs import (
    DIRECTIONS, LOWER, BlockSystem, block_matvec, factored_matvec, invert_diagonal,
    lusgs_solve, shift
)
from src.utils.errors import ConfigurationError, NonConvergenceError, SolverError

# ============================================================
# Helpers
# ============================================================


def _make_system(shape, seed: int, directions=range(6)) -> BlockSystem:
    """Random block system with dominant diagonal blocks."""
    rng = np.random.default_rng(seed)
    system = BlockSystem.zeros(shape)
    system.diag = 10.0 * np.eye(3) + rng.uniform(-1.0, 1.0, size=tuple(shape) + (3, 3))
    for d in directions:
        system.neighbors[d] = rng.uniform(-1.0, 1.0, size=tuple(shape) + (3, 3))
    system.rhs = rng.normal(size=tuple(shape) + (3,))
    return system


def _dense(diag: np.ndarray, neighbors: np.ndarray) -> np.ndarray:
    """Dense matrix with rows/columns ordered (species, i, j, k)."""
    shape = diag.shape[:3]
    n = int(np.prod(shape))
    dense = np.zeros((3 * n, 3 * n))
    for cell in np.ndindex(*shape):
        c = np.ravel_multi_index(cell, shape)
        for a in range(3):
            for b in range(3):
                dense[a * n + c, b * n + c] = diag[cell + (a, b)]
        for d, (axis, step) in enumerate(DIRECTIONS):
            other = list(cell)
            other[axis] += step
            if not 0 <= other[axis] < shape[axis]:
                continue
            p = np.ravel_multi_index(tuple(other), shape)
            for a in range(3):
                for b in range(3):
                    dense[a * n + c, b * n + p] = neighbors[(d,) + cell + (a, b)]
    return dense


def _wall_boundary(value: float = 2.0, species=(2,)) -> BoundarySpec:
    """Closed box with a Dirichlet wall on xlo for the given species."""
    faces = dict(BoundarySpec.closed().faces)
    faces["xlo"] = tuple(Dirichlet(value) if s in species else Neumann(0.0) for s in range(3))
    return BoundarySpec(faces=faces)


class _FixedIntegrator:
    """Records the requested steps; optionally reports non-convergence."""

    def __init__(self, converged: bool = True):
        self.converged = converged
        self.calls = []

    def step(self, energy, t, dt=None, step_index=0):
        self.calls.append((t, dt))
        return energy + dt, StepStats(step=step_index, t=t + dt, dt=dt, converged=self.converged)


# ============================================================
# LU-SGS
# ============================================================


def test_shift_moves_values_towards_cell():
    x = np.arange(4.0).reshape(4, 1, 1)
    np.testing.assert_array_equal(shift(x, 0)[:, 0, 0], [0.0, 0.0, 1.0, 2.0])
    np.testing.assert_array_equal(shift(x, 1)[:, 0, 0], [1.0, 2.0, 3.0, 0.0])


@pytest.mark.parametrize("seed", range(100))
def test_lusgs_solves_factored_system(seed):
    shapes = [(4, 3, 5), (3, 3, 3), (5, 4, 3), (3, 6, 4)]
    system = _make_system(shapes[seed % len(shapes)], seed=seed)
    solution = lusgs_solve(system)
    residual = factored_matvec(system, solution) - system.rhs
    assert np.max(np.abs(residual)) <= 1e-12 * np.max(np.abs(system.rhs))


def test_lusgs_exact_without_upper_blocks():
    system = _make_system((3, 4, 3), seed=2, directions=LOWER)
    solution = lusgs_solve(system)
    np.testing.assert_allclose(
        block_matvec(system.diag, system.neighbors, solution), system.rhs, atol=1e-12
    )


def test_lusgs_two_cell_system():
    system = BlockSystem.zeros((2, 1, 1))
    system.diag[:] = 2.0 * np.eye(3)
    system.neighbors[1, 0, 0, 0] = np.eye(3)
    system.neighbors[0, 1, 0, 0] = np.eye(3)
    system.rhs[0, 0, 0] = [3.0, 3.0, 3.0]
    system.rhs[1, 0, 0] = [3.0, 3.0, 3.0]
    # forward: y0 = 1.5, y1 = (3 - 1.5) / 2 = 0.75; backward: x1 = 0.75, x0 = 1.5 - 0.75 / 2
    solution = lusgs_solve(system)
    np.testing.assert_allclose(solution[1, 0, 0], 0.75)
    np.testing.assert_allclose(solution[0, 0, 0], 1.125)


def test_singular_diagonal_block_named():
    diag = np.tile(np.eye(3), (3, 3, 3, 1, 1))
    diag[1, 2, 0] = 0.0
    with pytest.raises(SolverError, match=r"\(1, 2, 0\)"):
        invert_diagonal(diag)


# ============================================================
# Jacobian
# ============================================================


def test_jacobian_matches_frozen_operator_derivative():
    model = icf_model()
    grid = build_grid((80.0, 0.0, 0.0), (98.0, 9.0, 9.0), (3, 3, 3), model.classifier)
    faces = {name: (Neumann(0.0),) * 3 for name in ("xhi", "ylo", "yhi", "zlo", "zhi")}
    faces["xlo"] = (Neumann(0.0), Neumann(0.0), Dirichlet(2.0))
    boundary = BoundarySpec(faces=faces)
    regions = grid.interior_region_id
    assert len(np.unique(regions)) > 1

    rng = np.random.default_rng(9)
    temperature = rng.uniform(0.5, 1.5, size=(3, 3, 3, 3))
    energy = model.energy_field(regions, temperature)
    frozen = freeze_coefficients(temperature, grid, model)
    diag, neighbors, _ = jacobian_blocks(energy, grid, model, boundary, frozen)
    analytic = _dense(diag, neighbors)

    n = grid.n_interior
    numeric = np.zeros_like(analytic)
    for index in np.ndindex(*energy.shape):
        step = 1e-6 * energy[index]
        plus = energy.copy()
        minus = energy.copy()
        plus[index] += step
        minus[index] -= step
        difference = (
            frozen_second_order_operator(plus, grid, model, boundary, frozen)
            - frozen_second_order_operator(minus, grid, model, boundary, frozen)
        ) / (2.0 * step)
        column = index[0] * n + np.ravel_multi_index(index[1:], grid.n_cells)
        numeric[:, column] = difference.reshape(-1)

    # species rows differ by orders of magnitude; compare each row on its own scale
    row_scale = np.abs(analytic).max(axis=1, keepdims=True)
    assert np.all(np.abs(numeric - analytic) <= 1e-6 * row_scale)


def test_jacobian_dirichlet_boundary_doubles_face_coupling():
    model = get_material_model("linear-mms")
    grid = build_grid((0, 0, 0), (3, 3, 3), (3, 3, 3))
    closed = BoundarySpec.closed()
    faces = dict(closed.faces)
    faces["xlo"] = (Dirichlet(1.0),) * 3
    energy = np.ones((3, 3, 3, 3))
    diag_closed, _, _ = jacobian_blocks(energy, grid, model, closed)
    diag_wall, _, _ = jacobian_blocks(energy, grid, model, BoundarySpec(faces=faces))
    # one extra 2 k / h^2 on the wall cells only
    np.testing.assert_allclose(diag_wall[0] - diag_closed[0], -2.0 * np.eye(3)[None, None])
    np.testing.assert_allclose(diag_wall[1:], diag_closed[1:])


@pytest.mark.parametrize("cells", [(3, 3, 3), (4, 3, 5), (5, 4, 3)])
@pytest.mark.parametrize("name", ["linear-mms", "icf"])
def test_jacobian_directional_derivatives(name, cells):
    model = get_material_model(name)
    if name == "icf":
        grid = build_grid((80.0, 0.0, 0.0), (98.0, 9.0, 9.0), cells, model.classifier)
    else:
        grid = build_grid((0.0, 0.0, 0.0), (1.0, 1.0, 1.0), cells)
    boundary = _wall_boundary()
    rng = np.random.default_rng(sum(cells))

    for _ in range(50):
        temperature = rng.uniform(0.5, 1.5, size=(3,) + cells)
        energy = model.energy_field(grid.interior_region_id, temperature)
        frozen = freeze_coefficients(temperature, grid, model)
        diag, neighbors, _ = jacobian_blocks(energy, grid, model, boundary, frozen)

        direction = energy * rng.uniform(-1.0, 1.0, size=energy.shape)
        step = 1e-6
        numeric = (
            frozen_second_order_operator(energy + step * direction, grid, model, boundary, frozen)
            - frozen_second_order_operator(energy - step * direction, grid, model, boundary, frozen)
        ) / (2.0 * step)
        cellwise = np.moveaxis(direction, 0, -1)
        analytic = np.moveaxis(block_matvec(diag, neighbors, cellwise), -1, 0)
        scale = np.moveaxis(block_matvec(np.abs(diag), np.abs(neighbors), np.abs(cellwise)), -1, 0)
        assert np.all(np.abs(numeric - analytic) <= 1e-6 * scale + 1e-300)


# ============================================================
# Time loop
# ============================================================


def test_plan_times_hits_checkpoints():
    times = plan_times(0.0, 1.0, 0.3, checkpoints=[0.5])
    assert times == pytest.approx([0.3, 0.5, 0.6, 0.9, 1.0])
    times = plan_times(0.0, 1.0, 0.1)
    assert len(times) == 10
    assert times[-1] == 1.0
    with pytest.raises(ConfigurationError):
        plan_times(0.0, 1.0, 0.0)


def test_time_loop_reports_checkpoints():
    seen = []
    integrator = _FixedIntegrator()
    result = run_time_loop(
        integrator, np.zeros((3, 3, 3, 3)), 0.0, 1.0, 0.25, checkpoints=[0.5],
        on_checkpoint=lambda t, w: seen.append(t), show_progress=False
    )
    assert seen == [0.5, 1.0]
    assert result.t == 1.0
    assert len(result.steps) == 4
    assert result.energy[0, 0, 0, 0] == pytest.approx(1.0)


def test_strict_time_loop_raises_on_unconverged_step():
    with pytest.raises(NonConvergenceError, match="step 1"):
        run_time_loop(
            _FixedIntegrator(converged=False), np.zeros((3, 3, 3, 3)), 0.0, 1.0, 0.5,
            strict=True, show_progress=False
        )
    result = run_time_loop(
        _FixedIntegrator(converged=False), np.zeros((3, 3, 3, 3)), 0.0, 1.0, 0.5,
        show_progress=False
    )
    assert not result.all_converged


# ============================================================
# Integrators
# ============================================================


def test_rk2_conserves_energy_in_closed_box():
    grid = build_grid((0, 0, 0), (1, 1, 1), (4, 4, 3))
    problem = SemiDiscreteProblem(grid, get_material_model("linear-mms"), BoundarySpec.closed())
    temperature = np.random.default_rng(17).uniform(1.0, 2.0, size=(3, 4, 4, 3))
    energy = problem.energy(temperature)
    initial = total_energy(EnergyState(energy), grid)[1]
    integrator = ExplicitIntegrator(problem, dt=1e-3)
    t = 0.0
    for index in range(100):
        energy, _ = integrator.step(energy, t, step_index=index)
        t += 1e-3
    final = total_energy(EnergyState(energy), grid)[1]
    assert abs(final - initial) <= 1e-12 * abs(initial)


def test_implicit_step_on_equilibrium_is_immediate():
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    problem = SemiDiscreteProblem(grid, get_material_model("linear-mms"), BoundarySpec.closed())
    energy = np.ones((3, 3, 3, 3))
    integrator = DualTimeIntegrator(problem, DualTimeConfig(dt=0.1, dtau=1.0))
    new_energy, stats = integrator.step(energy, 0.0)
    np.testing.assert_array_equal(new_energy, energy)
    assert stats.converged
    assert stats.inner_iters == 1


def test_implicit_relaxation_matches_backward_euler():
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    problem = SemiDiscreteProblem(grid, get_material_model("linear-mms"), BoundarySpec.closed())
    start = np.array([1.0, 2.0, 3.0])
    energy = np.broadcast_to(start[:, None, None, None], (3, 3, 3, 3)).copy()
    dt = 0.1
    config = DualTimeConfig(dt=dt, dtau=1e6, drop_orders=10.0, max_inner_iters=200)
    new_energy, stats = DualTimeIntegrator(problem, config).step(energy, 0.0)

    exchange = np.array([[-2.0, 1.0, 1.0], [1.0, -1.0, 0.0], [1.0, 0.0, -1.0]])
    expected = np.linalg.solve(np.eye(3) - dt * exchange, start)
    assert stats.converged
    np.testing.assert_allclose(new_energy[:, 1, 1, 1], expected, rtol=1e-8)
    np.testing.assert_allclose(new_energy.sum(axis=(1, 2, 3)) / 27.0, expected, rtol=1e-8)
    assert new_energy.sum() == pytest.approx(energy.sum(), rel=1e-9)


@pytest.mark.parametrize("scheme", [LINEAR4, CENTRAL2])
def test_converged_step_independent_of_pseudo_step(scheme):
    grid = build_grid((0, 0, 0), (1, 1, 1), (5, 4, 3))
    boundary = _wall_boundary(2.0, species=(0, 1, 2))
    problem = SemiDiscreteProblem(grid, get_material_model("linear-mms"), boundary, scheme=scheme)
    energy = np.ones((3, 5, 4, 3))

    results = []
    for dtau in (1e-3, 1e-2):
        config = DualTimeConfig(dt=1e-2, dtau=dtau, drop_orders=8.0, max_inner_iters=2000)
        new_energy, stats = DualTimeIntegrator(problem, config).step(energy, 0.0)
        assert stats.converged
        results.append(new_energy)
    np.testing.assert_allclose(results[0], results[1], rtol=0.0, atol=1e-6)
