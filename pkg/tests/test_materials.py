"""Coefficient laws and built-in material models."""

from __future__ import annotations

import numpy as np
import pytest

from src.materials.laws import EnergyLaw, PowerLaw
from src.materials.models import (
    ICF_REGIONS, ICFRegionConstants, get_material_model, icf_classifier, model2d_classifier
)
from src.utils.errors import ConfigurationError, PositivityError

# ============================================================
# Laws
# ============================================================


def test_power_law_constant_and_power():
    constant = PowerLaw(coefficient=3.0)
    assert constant.is_constant
    np.testing.assert_array_equal(constant(np.array([0.5, 2.0])), [3.0, 3.0])
    np.testing.assert_array_equal(constant.derivative(np.array([0.5, 2.0])), [0.0, 0.0])

    law = PowerLaw(coefficient=2.0, exponent=2.5)
    assert law(4.0) == pytest.approx(64.0)
    assert law.derivative(4.0) == pytest.approx(2.0 * 2.5 * 4.0 ** 1.5)


def test_energy_law_quartic_inverse():
    law = EnergyLaw(coefficient=0.007568, power=4)
    temperature = np.array([3e-4, 0.1, 1.0, 2.0])
    np.testing.assert_allclose(law.temperature(law.energy(temperature)), temperature, rtol=1e-14)
    np.testing.assert_allclose(law.heat_capacity(temperature), 4 * 0.007568 * temperature ** 3)


# ============================================================
# Models
# ============================================================


def test_linear_mms_model_is_identity():
    model = get_material_model("linear-mms")
    regions = np.zeros((3, 3, 3), dtype=int)
    energy = np.random.default_rng(1).uniform(0.5, 2.0, size=(3, 3, 3, 3))
    np.testing.assert_array_equal(model.temperature_field(regions, energy), energy)
    assert model.is_linear
    assert model.has_constant_coefficients


def test_model2d_regions_and_coefficients():
    assert model2d_classifier(0.0, 249.0, 0.0) == 0
    assert model2d_classifier(0.0, 251.0, 0.0) == 1
    model = get_material_model("model2d")
    regions = np.array([0, 1])
    np.testing.assert_allclose(model.conductivity(regions, 2, 1.0), [100.0, 10.0])
    np.testing.assert_allclose(model.energy_from_temperature(regions, 0, 2.0), [0.1, 2.0])
    np.testing.assert_allclose(model.exchange_coeff(regions, 1, 1.0), [100.0, 100.0])


@pytest.mark.parametrize("point, region", [
    ((0.0, 0.0, 0.0), 0),
    ((-90.0, 10.0, 10.0), 1),
    ((90.0, 90.0, 10.0), 1),
    ((100.0, 0.0, 0.0), 2),
    ((0.0, 0.0, 112.5), 2),
])
def test_icf_regions(point, region):
    assert int(icf_classifier(*point)) == region


@pytest.mark.parametrize("name, point, region", [
    ("icf", (0.0, 50.0, 50.0), 0),
    ("icf", (0.0, 90.0, 90.0), 1),
    ("icf", (0.0, 100.0, 50.0), 2),
    ("model2d", (150.0, 251.0, 0.0), 1),
    ("linear-mms", (0.3, 0.4, 0.5), 0),
])
def test_region_of_single_points(name, point, region):
    assert get_material_model(name).region_of(point) == region


def test_icf_laws():
    model = get_material_model("icf")
    gas = ICF_REGIONS[0]
    # omega_ei = rho^2 * A_ei * Te^(-2/3)
    assert model.exchange_coeff(0, 0, 1.0) == pytest.approx(gas.rho ** 2 * gas.a_ei)
    assert model.exchange_coeff(0, 0, 8.0) == pytest.approx(gas.rho ** 2 * gas.a_ei / 4.0)
    # k_r = A_r * T^(beta + 3)
    assert model.conductivity(0, 2, 2.0) == pytest.approx(gas.a_r * 2.0 ** 4)
    # W_r = gamma_r T^4
    assert model.energy_from_temperature(1, 2, 2.0) == pytest.approx(0.007568 * 16.0)
    assert not model.is_linear


def test_power_law_needs_positive_temperature():
    model = get_material_model("icf")
    with pytest.raises(PositivityError, match="Te"):
        model.conductivity(np.array([0, 0]), 0, np.array([1.0, -1.0]))


def test_quartic_energy_needs_positive_energy():
    model = get_material_model("icf")
    with pytest.raises(PositivityError, match="energy"):
        model.temperature_from_energy(np.array([0]), 2, np.array([0.0]))


def test_unknown_and_incomplete_models():
    with pytest.raises(ConfigurationError, match="Unknown material model"):
        get_material_model("plasma")
    with pytest.raises(ConfigurationError, match="constants"):
        get_material_model("custom")


def test_custom_model_uses_constants():
    constants = ICFRegionConstants(rho=1.0, gamma_e=2.0, gamma_i=3.0, a_e=1.0, a_i=1.0,
                                   a_r=1.0, beta=0.0, a_ei=5.0, a_er=7.0)
    model = get_material_model("custom", constants)
    assert model.n_regions == 1
    assert model.energy_from_temperature(0, 0, 1.0) == pytest.approx(3.0)
    assert model.exchange_coeff(0, 1, 1.0) == pytest.approx(7.0)
    assert model.conductivity(0, 2, 2.0) == pytest.approx(8.0)


@pytest.mark.parametrize("name", ["linear-mms", "model2d", "icf"])
def test_energy_maps_are_mutual_inverses(name):
    model = get_material_model(name)
    rng = np.random.default_rng(21)
    temperature = rng.uniform(1e-4, 10.0, size=1000)
    for region in range(model.n_regions):
        for species in range(3):
            energy = model.energy_from_temperature(region, species, temperature)
            back = model.temperature_from_energy(region, species, energy)
            assert np.max(np.abs(back - temperature) / temperature) < 1e-13


@pytest.mark.parametrize("name", ["linear-mms", "model2d", "icf"])
def test_heat_capacity_matches_finite_difference(name):
    model = get_material_model(name)
    temperature = np.random.default_rng(22).uniform(1e-2, 10.0, size=100)
    step = 1e-6 * temperature
    for region in range(model.n_regions):
        for species in range(3):
            numeric = (
                model.energy_from_temperature(region, species, temperature + step)
                - model.energy_from_temperature(region, species, temperature - step)
            ) / (2.0 * step)
            np.testing.assert_allclose(
                model.heat_capacity(region, species, temperature), numeric, rtol=1e-6
            )
