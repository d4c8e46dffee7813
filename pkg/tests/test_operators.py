"""Face fluxes, exchange sources and the assembled operator."""

from __future__ import annotations

import numpy as np
import pytest

from src.grid.boundary import BoundarySpec
from src.grid.structured_grid import build_grid
from src.materials.models import get_material_model, icf_model, model2d_classifier, model2d_model
from src.operators.flux import effective_conductivity, face_conductivity, face_regions
from src.operators.source import cell_source, minmod
from src.operators.spatial import SemiDiscreteProblem, spatial_operator
from src.reconstruction.geno1d import CENTRAL2, GENO, LINEAR4
from src.utils.errors import PositivityError

# ============================================================
# Conductivity
# ============================================================


def test_harmonic_mean():
    assert effective_conductivity(2.0, 2.0) == pytest.approx(2.0)
    assert effective_conductivity(1.0, 3.0) == pytest.approx(1.5)
    # no overflow for huge arguments
    assert effective_conductivity(1e200, 1e200) == pytest.approx(1e200)
    with pytest.raises(PositivityError):
        effective_conductivity(0.0, 1.0)


def test_interface_faces_use_harmonic_mean():
    model = model2d_model()
    grid = build_grid((0, 247, 0), (3, 253, 3), (3, 6, 3), model2d_classifier)
    left, right = face_regions(grid, 1)
    assert left.shape == (3, 7, 3)
    assert np.all(left[:, 3] == 0) and np.all(right[:, 3] == 1)

    temperature_q = np.ones((4,) + left.shape)
    k_hat = face_conductivity(temperature_q, 2, left, right, model)
    np.testing.assert_allclose(k_hat[:, :, 3], 2.0 * 100.0 * 10.0 / 110.0)
    np.testing.assert_allclose(k_hat[:, :, 1], 100.0)
    np.testing.assert_allclose(k_hat[:, :, 5], 10.0)


# ============================================================
# Sources
# ============================================================


def test_minmod():
    np.testing.assert_array_equal(
        minmod([1.0, -2.0, 1.0, 0.0], [3.0, -1.0, -1.0, 5.0]), [1.0, -1.0, 0.0, 0.0]
    )


def test_sources_sum_to_zero():
    rng = np.random.default_rng(42)
    shape = (4, 3, 5)
    model = icf_model()
    region = rng.integers(0, 3, size=shape)
    temperature = rng.uniform(0.5, 2.0, size=(3,) + shape)
    gradients = rng.normal(size=(3, 3) + shape)
    source = cell_source(temperature, gradients, region, model, (0.5, 0.5, 0.5))
    scale = np.abs(source).max()
    np.testing.assert_allclose(source.sum(axis=0), 0.0, atol=1e-13 * scale)


def test_flat_cells_reduce_to_pointwise_exchange():
    model = get_material_model("linear-mms")
    temperature = np.array([1.0, 2.0, 4.0]).reshape(3, 1, 1, 1)
    gradients = np.zeros((3, 3, 1, 1, 1))
    source = cell_source(temperature, gradients, np.zeros((1, 1, 1), dtype=int), model, (1, 1, 1))
    np.testing.assert_allclose(source[:, 0, 0, 0], [(2 - 1) + (4 - 1), 1 - 2, 1 - 4])


# ============================================================
# Assembled operator
# ============================================================


@pytest.mark.parametrize("scheme", [GENO, LINEAR4, CENTRAL2])
def test_closed_box_operator_conserves_energy(scheme):
    grid = build_grid((0, 0, 0), (1, 1, 1), (5, 4, 3))
    model = get_material_model("linear-mms")
    temperature = np.random.default_rng(7).uniform(1.0, 2.0, size=(3, 5, 4, 3))
    rhs = spatial_operator(temperature, grid, model, BoundarySpec.closed(), 0.0, scheme)
    assert abs(rhs.sum() * grid.cell_volume) <= 1e-12 * np.abs(rhs).sum() * grid.cell_volume


def test_uniform_equilibrium_is_steady():
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    problem = SemiDiscreteProblem(grid, get_material_model("model2d"), BoundarySpec.closed())
    temperature = np.full((3, 3, 3, 3), 0.7)
    np.testing.assert_allclose(problem.rhs_temperature(temperature, 0.0), 0.0, atol=1e-14)


def test_energy_and_temperature_maps_roundtrip():
    grid = build_grid((-115, 0, 0), (115, 115, 115), (10, 6, 6), icf_model().classifier)
    problem = SemiDiscreteProblem(grid, icf_model(), BoundarySpec.closed())
    temperature = np.random.default_rng(3).uniform(1e-4, 10.0, size=(3, 10, 6, 6))
    np.testing.assert_allclose(problem.temperature(problem.energy(temperature)), temperature, rtol=1e-13)
