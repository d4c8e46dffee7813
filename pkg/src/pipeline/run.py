"""
Run orchestration for trdiff.

Resolves the configuration, dispatches to the benchmark or custom runner,
and writes the effective-config echo, run.log and the report. Exit codes:

    0  success
    2  configuration error
    3  solver error
    4  non-converged implicit step in strict mode
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Optional

from config.logging_config import close_run_log, setup_run_log
from config.settings import get_settings
from src.benchmarks.accuracy import run_accuracy
from src.benchmarks.custom import run_custom
from src.benchmarks.icf import run_icf
from src.benchmarks.model2d import run_model2d
from src.benchmarks.report import BenchmarkReport
from src.data.config_parser import emit_config, parse_config
from src.data.exporters import RunArtifacts, write_report
from src.data.schemas import RunSpec
from src.utils.errors import ConfigurationError, NonConvergenceError, SolverError
from src.utils.file_utils import atomic_write_text, ensure_directory
from src.utils.logger import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_NONCONVERGED = 4

CONFIG_ECHO = "effective.cfg"
REPORT_FILE = "report.txt"
RUN_LOG = "run.log"

Runner = Callable[..., BenchmarkReport]

RUNNERS: Dict[str, Runner] = {
    "accuracy": run_accuracy,
    "model2d": run_model2d,
    "icf": run_icf,
    "custom": run_custom,
}


@dataclass
class RunOutcome:
    """Exit status plus whatever the run produced."""
    exit_code: int
    out_dir: Optional[Path] = None
    report: Optional[BenchmarkReport] = None
    error: Optional[str] = None


def run(
    spec: RunSpec,
    out_dir: str | Path,
    strict: bool = False,
    show_progress: Optional[bool] = None
) -> RunOutcome:
    """
    Execute a resolved run and write its artifacts under `out_dir`.

    Args:
        spec: Validated run specification
        out_dir: Output directory (created if missing)
        strict: Abort with exit 4 on the first non-converged implicit step
        show_progress: Progress bar switch (defaults to settings)

    Returns:
        RunOutcome
    """
    if show_progress is None:
        show_progress = get_settings().show_progress
    out_dir = Path(out_dir)
    ensure_directory(out_dir)

    atomic_write_text(out_dir / CONFIG_ECHO, emit_config(spec))
    setup_run_log(out_dir, RUN_LOG)
    artifacts = RunArtifacts(out_dir, volumes=spec.output.volumes)

    logger.info("=" * 80)
    logger.info(f"RUN {spec.problem.upper()} -> {out_dir}")
    logger.info("=" * 80)

    try:
        report = RUNNERS[spec.problem](
            spec, artifacts=artifacts, strict=strict, show_progress=show_progress
        )
    except NonConvergenceError as e:
        logger.error(f"Non-converged implicit step: {e}")
        return RunOutcome(EXIT_NONCONVERGED, out_dir, error=str(e))
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        return RunOutcome(EXIT_CONFIG, out_dir, error=str(e))
    except SolverError as e:
        logger.error(f"Solver error: {e}", exc_info=True)
        return RunOutcome(EXIT_SOLVER, out_dir, error=str(e))
    finally:
        close_run_log()

    if spec.output.report:
        values = {"problem": spec.problem, "seed": str(spec.seed)}
        values.update(report.to_key_values())
        write_report(values, out_dir / REPORT_FILE)

    failed = [key for key, ok in report.checks.items() if not ok]
    if failed:
        logger.warning(f"{len(failed)} acceptance checks failed: {', '.join(failed)}")
    else:
        logger.info(f"All {len(report.checks)} acceptance checks passed")
    return RunOutcome(EXIT_OK, out_dir, report=report)


def run_config_text(
    text: str,
    out_dir: Optional[str | Path] = None,
    strict: bool = False,
    long_running: bool = False,
    show_progress: Optional[bool] = None
) -> RunOutcome:
    """
    Parse configuration text and run it.

    Configuration errors are reported before anything is written.
    """
    try:
        spec = parse_config(text, long_running=long_running)
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        return RunOutcome(EXIT_CONFIG, error=str(e))

    if out_dir is None:
        out_dir = get_settings().get_run_path(spec.problem)
    return run(spec, out_dir, strict=strict, show_progress=show_progress)
