"""Artifact writers and readers, the run orchestration and the command line."""

from __future__ import annotations

import numpy as np
import pytest

import main
from src.benchmarks.probes import ProbeLine
from src.data.config_parser import parse_config
from src.data.exporters import (
    RunArtifacts, report_text, volume_text, write_probe_csv, write_volume
)
from src.data.loaders import read_probe_csv, read_report, read_volume
from src.grid.fields import TemperatureState
from src.grid.structured_grid import build_grid
from src.pipeline.run import (
    CONFIG_ECHO, EXIT_CONFIG, EXIT_OK, REPORT_FILE, RUN_LOG, run_config_text
)
from src.utils.errors import ConfigurationError

CUSTOM_RUN = (
    "problem = custom\n"
    "grid.cells = 3, 3, 3\n"
    "initial.temperature = 1, 2, 3\n"
    "time.t_end = 0.002\n"
)

# ============================================================
# Helpers
# ============================================================


def _uniform(grid, values=(1.0, 2.0, 3.0)) -> np.ndarray:
    return TemperatureState.uniform(grid, values).values


# ============================================================
# Probes and volumes
# ============================================================


def test_probe_csv_for_uniform_field(tmp_path):
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    line = ProbeLine(name="mid", axis="x", point=(0.0, 0.5, 0.5))
    path = write_probe_csv(_uniform(grid), grid, line, tmp_path / "probes" / "mid.csv")

    lines = path.read_text(encoding="utf-8").split("\n")
    assert lines[0] == "coord,Te,Ti,Tr"
    assert lines[2].split(",")[1:] == ["1", "2", "3"]
    assert len([text for text in lines if text]) == 4

    frame = read_probe_csv(path)
    np.testing.assert_allclose(frame["coord"], grid.centers(0, padded=False))
    np.testing.assert_array_equal(frame["Tr"], [3.0, 3.0, 3.0])


def test_probe_without_line_writes_nothing(tmp_path):
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    target = tmp_path / "missing.csv"
    with pytest.raises(ConfigurationError):
        write_probe_csv(_uniform(grid), grid, None, target)
    assert not target.exists()


def test_misaligned_probe_writes_nothing(tmp_path):
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    target = tmp_path / "off.csv"
    line = ProbeLine(name="off", axis="x", point=(0.0, 0.4, 0.5))
    with pytest.raises(ConfigurationError, match="not aligned"):
        write_probe_csv(_uniform(grid), grid, line, target)
    assert not target.exists()


def test_repeated_writes_are_byte_identical(tmp_path):
    grid = build_grid((0, 0, 0), (1, 2, 3), (4, 3, 3))
    temperature = np.random.default_rng(12).uniform(0.0, 1.0, size=(3, 4, 3, 3))
    line = ProbeLine(name="row", axis="x", point=(0.0, 1.0, 1.5))
    first = write_probe_csv(temperature, grid, line, tmp_path / "a.csv")
    second = write_probe_csv(temperature, grid, line, tmp_path / "b.csv")
    assert first.read_bytes() == second.read_bytes()
    assert volume_text(temperature, grid) == volume_text(temperature.copy(), grid)


def test_volume_roundtrip(tmp_path):
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    temperature = np.random.default_rng(13).uniform(0.0, 2.0, size=(3, 3, 3, 3))
    path = write_volume(temperature, grid, tmp_path / "field.vtk")

    text = path.read_text(encoding="utf-8")
    assert "DATASET STRUCTURED_POINTS" in text
    assert "DIMENSIONS 4 4 4" in text
    assert "CELL_DATA 27" in text

    header, loaded = read_volume(path)
    np.testing.assert_array_equal(header["dimensions"], [4, 4, 4])
    np.testing.assert_array_equal(loaded, temperature)


def test_volume_shape_checked():
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    with pytest.raises(ConfigurationError, match="shape"):
        volume_text(np.zeros((3, 3, 3, 4)), grid)


def test_artifacts_skip_volumes_unless_requested(tmp_path):
    grid = build_grid((0, 0, 0), (1, 1, 1), (3, 3, 3))
    assert RunArtifacts(tmp_path).volume("base", 0.5, _uniform(grid), grid) is None
    path = RunArtifacts(tmp_path, volumes=True).volume("base", 0.5, _uniform(grid), grid)
    assert path == tmp_path / "volumes" / "base_t0.5.vtk"
    assert path.exists()


def test_report_roundtrip(tmp_path):
    values = {"problem": "custom", "check.run.finite": "pass", "passed": "true"}
    path = tmp_path / "report.txt"
    path.write_text(report_text(values), encoding="utf-8")
    assert read_report(path) == values


# ============================================================
# Runs
# ============================================================


def test_config_error_creates_no_output(tmp_path):
    out_dir = tmp_path / "out"
    outcome = run_config_text("problem = nope\n", out_dir=out_dir, show_progress=False)
    assert outcome.exit_code == EXIT_CONFIG
    assert "unknown problem" in outcome.error
    assert not out_dir.exists()


def test_custom_run_writes_artifacts(tmp_path):
    out_dir = tmp_path / "run"
    outcome = run_config_text(CUSTOM_RUN, out_dir=out_dir, show_progress=False)
    assert outcome.exit_code == EXIT_OK

    echo = (out_dir / CONFIG_ECHO).read_text(encoding="utf-8")
    assert parse_config(echo) == parse_config(CUSTOM_RUN)

    steps = (out_dir / RUN_LOG).read_text(encoding="utf-8").splitlines()
    assert len(steps) == 2
    assert steps[0].startswith("run step=1 t=0.001 inner=0")
    assert "converged=yes" in steps[1]

    report = read_report(out_dir / REPORT_FILE)
    assert report["problem"] == "custom"
    assert report["check.run.finite"] == "pass"
    assert report["check.run.energy_conserved"] == "pass"
    assert report["passed"] == "true"
    assert (out_dir / "tables" / "bounds.csv").exists()


def test_command_line(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "run.cfg").write_text(CUSTOM_RUN, encoding="utf-8")
    assert main.main(["--config", "run.cfg", "--out", "out"]) == EXIT_OK
    assert (tmp_path / "out" / REPORT_FILE).exists()
    assert main.main(["--config", "absent.cfg"]) == EXIT_CONFIG


def test_rerun_from_echo_reproduces_artifacts(tmp_path):
    first = tmp_path / "first"
    assert run_config_text(CUSTOM_RUN, out_dir=first, show_progress=False).exit_code == EXIT_OK

    echo = (first / CONFIG_ECHO).read_text(encoding="utf-8")
    second = tmp_path / "second"
    assert run_config_text(echo, out_dir=second, show_progress=False).exit_code == EXIT_OK

    for name in (CONFIG_ECHO, REPORT_FILE, "tables/bounds.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
    assert "wall" not in (second / REPORT_FILE).read_text(encoding="utf-8")
