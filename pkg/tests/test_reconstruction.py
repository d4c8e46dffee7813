"""Normal and tangential GENO stages, boundary formulas and whole-grid faces."""

from __future__ import annotations

import numpy as np
import pytest

from src.grid.boundary import BoundarySpec, Neumann, fill_ghosts
from src.grid.structured_grid import build_grid
from src.reconstruction.boundary import reconstruct_boundary_dirichlet, reconstruct_boundary_neumann
from src.reconstruction.faces import reconstruct_all_faces
from src.reconstruction.geno1d import (
    CENTRAL2, GENO, LINEAR4, check_scheme, linear_face_1d, path_chi, reconstruct_face_1d,
    smoothness_1d, smoothness_alpha
)
from src.reconstruction.geno2d import (
    GAUSS_POINTS, STENCIL_OFFSETS, _moment, constrained_least_squares, eno2, mean_matrix,
    reconstruct_face_2d
)
from src.utils.errors import ConfigurationError

# ============================================================
# Helpers
# ============================================================

_CUBIC = np.array([1.0, 2.0, -3.0, 4.0])


def _cubic_antiderivative(x: float) -> float:
    """Antiderivative of 1 + 2x - 3x^2 + 4x^3."""
    return _CUBIC[0] * x + _CUBIC[1] * x ** 2 / 2 + _CUBIC[2] * x ** 3 / 3 + _CUBIC[3] * x ** 4 / 4


def _cell_averages_1d(function_antiderivative, face: float, h: float):
    edges = face + h * np.arange(-2, 3)
    return [
        (function_antiderivative(edges[i + 1]) - function_antiderivative(edges[i])) / h
        for i in range(4)
    ]


def _step_stencils(rng, n: int):
    """Monotone two-level stencils with the jump at a random position."""
    a = rng.uniform(0.0, 1.0, n)
    jump = rng.uniform(1e-3, 1.0, n) * rng.choice([-1.0, 1.0], n)
    b = a + jump
    position = rng.integers(1, 4, n)
    stencil = np.where(np.arange(4)[:, None] < position[None, :], a[None, :], b[None, :])
    return stencil, a, b


def _polynomial_means(coefficients):
    """Stencil means of sum c_k xi^px eta^py for {(px, py): c}."""
    means = np.zeros(len(STENCIL_OFFSETS))
    for i, (cx, cy) in enumerate(STENCIL_OFFSETS):
        means[i] = sum(c * _moment(px, cx) * _moment(py, cy) for (px, py), c in coefficients.items())
    return means


def _polynomial_values(coefficients, points):
    return np.array([
        sum(c * xi ** px * eta ** py for (px, py), c in coefficients.items()) for xi, eta in points
    ])


# ============================================================
# Normal stage
# ============================================================


def test_path_chi_limits():
    assert path_chi(0.0, 1.0, 0.0) == pytest.approx(1.0)
    assert path_chi(0.0, 1.0, 1.0) == pytest.approx(0.0, abs=1e-12)
    # one-sided jump: a flat sub-stencil next to a curved one
    assert path_chi(*smoothness_1d(0.0, 0.0, 0.0, 1.0)) < 1e-6


def test_check_scheme():
    assert check_scheme(GENO) == GENO
    with pytest.raises(ConfigurationError, match="Unknown reconstruction scheme"):
        check_scheme("weno5")


def test_linear_face_exact_for_cubics():
    face, h = 0.3, 0.1
    qm1, q0, qp1, qp2 = _cell_averages_1d(_cubic_antiderivative, face, h)
    value, gradient = linear_face_1d(qm1, q0, qp1, qp2, h)
    assert value == pytest.approx(np.polyval(_CUBIC[::-1], face), rel=1e-12)
    assert gradient == pytest.approx(np.polyval(np.polyder(_CUBIC[::-1]), face), rel=1e-10)


def test_linear_face_unit_cells():
    # x^3 and x averaged over unit cells around a face at 0
    value, gradient = linear_face_1d(-3.75, -0.25, 0.25, 3.75, 1.0)
    assert value == 0.0
    assert gradient == 0.0
    _, gradient = linear_face_1d(-1.5, -0.5, 0.5, 1.5, 1.0)
    assert gradient == pytest.approx(1.0)


def test_schemes_on_linear_data_agree():
    q = (1.0, 2.0, 3.0, 4.0)
    for scheme in (GENO, LINEAR4, CENTRAL2):
        value, gradient, chi = reconstruct_face_1d(*q, h=0.5, scheme=scheme)
        assert value == pytest.approx(2.5)
        assert gradient == pytest.approx(2.0)
    assert reconstruct_face_1d(*q, h=0.5, scheme=GENO)[2] == pytest.approx(1.0)
    assert reconstruct_face_1d(*q, h=0.5, scheme=CENTRAL2)[2] == 0.0


def test_reversed_stencil_is_mirror_image():
    rng = np.random.default_rng(11)
    qm1, q0, qp1, qp2 = rng.uniform(0.0, 5.0, size=(4, 1000))
    value, gradient, chi = reconstruct_face_1d(qm1, q0, qp1, qp2, 0.25)
    value_r, gradient_r, chi_r = reconstruct_face_1d(qp2, qp1, q0, qm1, 0.25)
    np.testing.assert_array_equal(chi_r, chi)
    np.testing.assert_array_equal(value_r, value)
    np.testing.assert_array_equal(gradient_r, -gradient)


def test_steps_stay_within_neighbour_bounds():
    rng = np.random.default_rng(2024)
    stencil, a, b = _step_stencils(rng, 1000)
    value, _, chi = reconstruct_face_1d(*stencil, h=1.0)
    low, high = np.minimum(a, b), np.maximum(a, b)
    tolerance = 1e-12 * np.abs(b - a) + 1e-14 * np.maximum(np.abs(a), np.abs(b))
    assert np.all(value >= low - tolerance)
    assert np.all(value <= high + tolerance)
    assert np.all((chi >= 0.0) & (chi <= 1.0))


def test_linear4_overshoots_where_geno_does_not():
    stencil = (0.0, 0.0, 0.0, 1.0)
    linear_value, _, _ = reconstruct_face_1d(*stencil, h=1.0, scheme=LINEAR4)
    geno_value, _, chi = reconstruct_face_1d(*stencil, h=1.0, scheme=GENO)
    assert linear_value < 0.0
    assert geno_value >= -1e-15
    assert chi < 1e-10


def test_smoothness_deficit_vanishes_under_refinement():
    center = 0.2
    deficits = []
    for h in (0.04, 0.02, 0.01):
        edges = center + h * np.arange(-2, 3)
        means = np.diff(np.exp(edges)) / h
        alpha = smoothness_alpha(*smoothness_1d(*means))
        deficits.append(1.0 - float(alpha))
    assert all(d > 0.0 for d in deficits)
    slopes = np.log2(np.array(deficits[:-1]) / np.array(deficits[1:]))
    assert np.all(slopes >= 1.8)


# ============================================================
# Tangential stage
# ============================================================


def test_eno2_exact_for_planes():
    plane = {(0, 0): 1.5, (1, 0): 2.0, (0, 1): -0.5}
    values = eno2(_polynomial_means(plane))
    assert values.shape == (4,)
    np.testing.assert_allclose(values, _polynomial_values(plane, GAUSS_POINTS), atol=1e-14)


def test_eno2_picks_the_flat_side():
    stencil = np.zeros(len(STENCIL_OFFSETS))
    stencil[1] = 10.0
    np.testing.assert_array_equal(eno2(stencil[:, None]), np.zeros((4, 1)))


def test_constrained_least_squares_recovers_exact_data():
    rng = np.random.default_rng(5)
    A = mean_matrix()
    coefficients = rng.normal(size=A.shape[1])
    b = A @ coefficients
    np.testing.assert_allclose(constrained_least_squares(A, b), coefficients, atol=1e-10)
    mask = np.ones(A.shape[0], dtype=bool)
    mask[9] = False
    np.testing.assert_allclose(constrained_least_squares(A, b, mask), coefficients, atol=1e-10)


def test_target_mean_enforced_exactly():
    rng = np.random.default_rng(6)
    A = mean_matrix()
    b = rng.normal(size=A.shape[0])
    coefficients = constrained_least_squares(A, b)
    assert A[0] @ coefficients == pytest.approx(b[0], abs=1e-12)


def test_linear4_tangential_exact_for_cubics():
    cubic = {(0, 0): 1.5, (1, 0): -0.5, (0, 1): 2.0, (2, 0): 0.3, (1, 1): -1.2,
             (0, 2): 0.7, (3, 0): 0.4, (2, 1): -0.25, (1, 2): 0.6, (0, 3): -0.9}
    stencil = _polynomial_means(cubic)
    values, chi = reconstruct_face_2d(stencil, scheme=LINEAR4)
    np.testing.assert_allclose(values, _polynomial_values(cubic, GAUSS_POINTS), atol=1e-12)
    assert chi == 1.0


@pytest.mark.parametrize("scheme", [GENO, LINEAR4, CENTRAL2])
def test_gauss_values_preserve_face_average(scheme):
    rng = np.random.default_rng(8)
    stencil = rng.uniform(0.0, 1.0, size=(len(STENCIL_OFFSETS), 50))
    values, chi = reconstruct_face_2d(stencil, scheme=scheme)
    np.testing.assert_allclose(values.mean(axis=0), stencil[0], atol=1e-13)
    assert np.all((chi >= 0.0) & (chi <= 1.0))


def test_face_average_override():
    stencil = np.ones(len(STENCIL_OFFSETS))
    values, _ = reconstruct_face_2d(stencil, face_average=3.0, scheme=CENTRAL2)
    np.testing.assert_array_equal(values, [3.0, 3.0, 3.0, 3.0])


# ============================================================
# Boundary faces
# ============================================================


@pytest.mark.parametrize("h", [0.5, 0.1])
def test_dirichlet_boundary_exact_for_quadratics(h):
    # q = 1 + 2x + 3x^2 near x = 0; cells [0, h] and [h, 2h]
    q1 = 1.0 + h + h * h
    q2 = 1.0 + 3.0 * h + 7.0 * h * h
    value, gradient = reconstruct_boundary_dirichlet(1.0, q1, q2, h, side=0)
    assert value == 1.0
    assert gradient == pytest.approx(2.0)
    # mirrored profile seen from a high face
    _, gradient = reconstruct_boundary_dirichlet(1.0, q1, q2, h, side=1)
    assert gradient == pytest.approx(-2.0)


@pytest.mark.parametrize("h", [0.5, 0.1])
def test_neumann_boundary_exact_for_quadratics(h):
    q1 = 1.0 + h + h * h
    q2 = 1.0 + 3.0 * h + 7.0 * h * h
    value, gradient = reconstruct_boundary_neumann(2.0, q1, q2, h, side=0)
    assert value == pytest.approx(1.0)
    assert gradient == 2.0
    value, _ = reconstruct_boundary_neumann(-2.0, q1, q2, h, side=1)
    assert value == pytest.approx(1.0)


def test_hot_wall_face_gradient():
    # T_r = 100 wall against the 3e-4 floor on 3-unit cells
    _, gradient = reconstruct_boundary_dirichlet(100.0, 3e-4, 3e-4, 3.0, side=0)
    assert gradient == pytest.approx(-(600.0 - 6.0 * 3e-4) / 6.0)


# ============================================================
# Whole grid
# ============================================================


def test_linear_profile_reconstructed_on_every_face():
    grid = build_grid((0, 0, 0), (1, 1, 1), (6, 3, 4))
    X, _, _ = grid.mesh(padded=False)
    temperature = np.stack([X, 2.0 * X, 3.0 * X])
    faces = {name: (Neumann(0.0),) * 3 for name in ("ylo", "yhi", "zlo", "zhi")}
    faces["xlo"] = (Neumann(-1.0), Neumann(-2.0), Neumann(-3.0))
    faces["xhi"] = (Neumann(1.0), Neumann(2.0), Neumann(3.0))
    boundary = BoundarySpec(faces=faces)
    padded = fill_ghosts(grid.pad(temperature), grid, boundary, 0.0)

    x_faces, y_faces, z_faces = reconstruct_all_faces(padded, grid, boundary, scheme=GENO)
    face_x = np.linspace(0.0, 1.0, 7)[:, None, None]
    slopes = np.array([1.0, 2.0, 3.0])
    for species in range(3):
        np.testing.assert_allclose(
            x_faces.value_q[species], np.broadcast_to(slopes[species] * face_x, (4, 7, 3, 4)),
            atol=1e-12
        )
        np.testing.assert_allclose(x_faces.grad_q[species], slopes[species], atol=1e-10)
        np.testing.assert_allclose(y_faces.grad_q[species], 0.0, atol=1e-10)
        np.testing.assert_allclose(z_faces.grad_q[species], 0.0, atol=1e-10)
    assert x_faces.value_avg.shape == (3, 7, 3, 4)
    assert y_faces.value_avg.shape == (3, 6, 4, 4)
    assert z_faces.value_avg.shape == (3, 6, 3, 5)


def test_scheme_is_fourth_positional_argument():
    grid = build_grid((0, 0, 0), (1, 1, 1), (4, 3, 3))
    boundary = BoundarySpec.closed()
    temperature = np.random.default_rng(31).uniform(1.0, 2.0, size=(3, 4, 3, 3))
    padded = fill_ghosts(grid.pad(temperature), grid, boundary, 0.0)

    x_faces = reconstruct_all_faces(padded, grid, boundary, CENTRAL2)[0]
    np.testing.assert_array_equal(x_faces.chi[:, 1:-1], 0.0)
    np.testing.assert_array_equal(x_faces.chi[:, [0, -1]], 1.0)
