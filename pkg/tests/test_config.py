"""Run configuration parsing, presets and the effective-config echo."""

from __future__ import annotations

import pytest

from src.data.config_parser import emit_config, load_config, parse_config
from src.data.schemas import PROBLEMS
from src.utils.errors import ConfigurationError


def test_accuracy_preset_defaults():
    spec = parse_config("problem = accuracy\n")
    assert spec.grid.cells == (5, 5, 3)
    assert spec.time.dt_factor == pytest.approx(0.1)
    assert spec.time.dt is None
    assert spec.accuracy.meshes == [5, 10, 20, 40]
    assert spec.boundary.xlo == "analytic, analytic, analytic"


def test_sections_and_dotted_keys_are_equivalent():
    dotted = parse_config("problem = custom\ntime.dt = 0.002\ntime.t_end = 0.01\n")
    sectioned = parse_config("problem = custom\n\n[time]\ndt = 0.002  # step\nt_end = 0.01\n")
    assert dotted == sectioned
    assert dotted.time.dt == pytest.approx(0.002)


def test_user_keys_override_preset():
    spec = parse_config(
        "problem = model2d\n"
        "[time]\n"
        "scheme = implicit\n"
        "dt = 0.003\n"
        "dtau = 0.3\n"
        "drop_orders = 4\n"
    )
    assert spec.time.scheme == "implicit"
    assert spec.time.dtau == pytest.approx(0.3)
    assert spec.grid.cells == (100, 100, 3)
    assert [p.name for p in spec.output.probes] == ["col_x1.5", "row_y250"]
    assert spec.output.probes[1].snap


def test_long_running_icf_settings():
    assert parse_config("problem = icf\n").grid.cells == (20, 10, 10)
    spec = parse_config("problem = icf\n", long_running=True)
    assert spec.grid.cells == (46, 23, 23)
    assert spec.time.checkpoints == [0.3, 5.0]


@pytest.mark.parametrize("problem", PROBLEMS)
def test_effective_config_reproduces_spec(problem):
    spec = parse_config(f"problem = {problem}\n")
    assert parse_config(emit_config(spec)) == spec


def test_effective_config_keeps_custom_constants(tmp_path):
    text = (
        "problem = custom\n"
        "[material]\n"
        "name = custom\n"
        "rho = 1\ngamma_e = 2\ngamma_i = 3\ngamma_r = 0.5\na_e = 1\na_i = 1\n"
        "a_r = 10\nbeta = 1\na_ei = 5\na_er = 7\n"
        "[output]\n"
        "probes = mid x 0.5 0.55 0.5 snap\n"
        "histories = corner 0.05 0.05 0.05\n"
    )
    spec = parse_config(text)
    path = tmp_path / "effective.cfg"
    path.write_text(emit_config(spec), encoding="utf-8")
    assert load_config(path) == spec
    assert "none" not in emit_config(spec).split("[material]")[1].split("[")[0]


def test_missing_and_unknown_problem():
    with pytest.raises(ConfigurationError, match="problem: missing required key"):
        parse_config("[time]\ndt = 0.1\n")
    with pytest.raises(ConfigurationError, match="unknown problem 'nope'"):
        parse_config("problem = nope\n")


def test_duplicate_key_names_both_lines():
    with pytest.raises(ConfigurationError, match=r"line 4: duplicate key 'time.dt' \(first set on line 2\)"):
        parse_config("problem = custom\ntime.dt = 0.1\n[time]\ndt = 0.2\n")


def test_syntax_errors_carry_line_numbers():
    with pytest.raises(ConfigurationError, match="line 2: expected 'key = value'"):
        parse_config("problem = custom\nnot a pair\n")
    with pytest.raises(ConfigurationError, match="line 2: malformed section header"):
        parse_config("problem = custom\n[time\n")


def test_validation_errors_name_the_key():
    with pytest.raises(ConfigurationError, match="time.dtau"):
        parse_config("problem = custom\ntime.scheme = implicit\n")
    with pytest.raises(ConfigurationError, match="time.bogus"):
        parse_config("problem = custom\ntime.bogus = 1\n")
    with pytest.raises(ConfigurationError, match="grid.cells"):
        parse_config("problem = custom\ngrid.cells = 3, 3\n")


def test_custom_material_needs_constants():
    with pytest.raises(ConfigurationError, match="material.rho"):
        parse_config("problem = custom\nmaterial.name = custom\n")


def test_analytic_boundary_only_for_accuracy():
    with pytest.raises(ConfigurationError, match="only available"):
        parse_config("problem = custom\nboundary.xlo = analytic, analytic, analytic\n")
    with pytest.raises(ConfigurationError, match="boundary.xhi"):
        parse_config("problem = custom\nboundary.xhi = robin:1, neumann:0, neumann:0\n")


def test_checkpoints_must_lie_in_window():
    with pytest.raises(ConfigurationError, match="checkpoints"):
        parse_config("problem = custom\ntime.t_end = 0.01\ntime.checkpoints = 0.5\n")


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigurationError, match="Cannot read configuration"):
        load_config(tmp_path / "missing.cfg")
