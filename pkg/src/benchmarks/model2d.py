"""
Two-material bound-preservation benchmark.

The base run uses the configured scheme and time stepping. Optional
comparison runs:
- linear4: chi = 1 everywhere, bounds at bounds_time (expected to undershoot)
- central2: second-order central reconstruction, probes at t_end
- implicit: dual time stepping at multiples of the base dt, probes at t_end
"""

from typing import Optional

import numpy as np

from src.benchmarks.probes import compare_probes
from src.benchmarks.report import BenchmarkReport
from src.benchmarks.simulation import CaseResult, case_from_spec, run_case
from src.data.exporters import RunArtifacts
from src.data.schemas import RunSpec
from src.grid.fields import SPECIES_LABELS
from src.reconstruction.geno1d import CENTRAL2, GENO, LINEAR4
from src.utils.file_utils import format_float
from src.utils.logger import get_logger

logger = get_logger(__name__)

BOUND_TOLERANCE = 1e-12


def probe_difference(reference: CaseResult, candidate: CaseResult, name: str, t: float) -> float:
    """Largest L1-relative probe difference over the three species."""
    ref = reference.probe(name, t)
    cand = candidate.probe(name, t)
    return max(compare_probes(ref, cand, column=label) for label in SPECIES_LABELS)


def _multiplier_label(multiplier: float) -> str:
    return f"implicit_x{format_float(multiplier)}"


def run_model2d(
    spec: RunSpec,
    artifacts: Optional[RunArtifacts] = None,
    strict: bool = False,
    show_progress: bool = True
) -> BenchmarkReport:
    """
    Base run plus the configured comparison runs.

    Returns:
        BenchmarkReport with bounds, probe comparisons and checks
    """
    settings = spec.model2d
    report = BenchmarkReport(problem="model2d")
    t_end = spec.time.t_end
    bounds_time = min(settings.bounds_time, t_end)
    marks = sorted(set(spec.time.checkpoints) | {bounds_time})
    base_scheme = spec.reconstruction.scheme

    logger.info(f"=== model2d: base run ({base_scheme}, {spec.time.scheme}) ===")
    base = run_case(
        case_from_spec(spec, "base", checkpoints=marks),
        artifacts=artifacts, strict=strict, show_progress=show_progress
    )
    report.add_case(base)

    floor = float(np.min(spec.initial.temperature))
    if base_scheme == GENO:
        mins = [float(np.min(field)) for field in base.fields.values()]
        report.checks["base.min_above_floor"] = min(mins) >= floor - BOUND_TOLERANCE
        maxima = report.bounds_for("base", bounds_time)
        row = maxima.iloc[0]
        ceiling = max(spec.boundary.dirichlet_values(), default=np.inf)
        report.checks["base.max_below_ceiling"] = all(
            row[f"{label}_max"] <= ceiling for label in SPECIES_LABELS
        )
        tr_max = float(row["Tr_max"])
        report.values["base.Tr_max.reference"] = settings.reference_tr_max
        report.values["base.Tr_max.relative_deviation"] = abs(tr_max / settings.reference_tr_max - 1.0)
        report.checks["base.Tr_max_matches_reference"] = (
            abs(tr_max / settings.reference_tr_max - 1.0) <= settings.tr_max_tolerance
        )

    if LINEAR4 in settings.comparisons:
        logger.info("=== model2d: linear-4th comparison ===")
        linear = run_case(
            case_from_spec(spec, "linear4", scheme=LINEAR4, time_scheme="rk2",
                           t_end=bounds_time, checkpoints=()),
            artifacts=artifacts, strict=strict, show_progress=show_progress
        )
        report.add_case(linear)
        report.checks["linear4.undershoots"] = bool(np.min(linear.temperature) < 0.0)

    if CENTRAL2 in settings.comparisons:
        logger.info("=== model2d: second-order central comparison ===")
        central = run_case(
            case_from_spec(spec, "central2", scheme=CENTRAL2, checkpoints=marks),
            artifacts=artifacts, strict=strict, show_progress=show_progress
        )
        report.add_case(central)
        for line in spec.output.probes:
            report.values[f"central2.{line.name}.difference"] = probe_difference(
                base, central, line.name, t_end
            )

    if "implicit" in settings.comparisons and spec.time.scheme == "rk2":
        for multiplier in settings.implicit_multipliers:
            label = _multiplier_label(multiplier)
            logger.info(f"=== model2d: implicit run at {format_float(multiplier)} x dt ===")
            implicit = run_case(
                case_from_spec(
                    spec, label,
                    time_scheme="implicit",
                    dt=multiplier * spec.time.dt,
                    dtau=settings.implicit_dtau_factor * spec.time.dt,
                    drop_orders=settings.implicit_drop_orders,
                    checkpoints=(),
                ),
                artifacts=artifacts, strict=strict, show_progress=show_progress
            )
            report.add_case(implicit)
            gated = multiplier in settings.gated_multipliers
            if gated:
                report.checks[f"{label}.converged"] = implicit.all_converged
            for line in spec.output.probes:
                difference = probe_difference(base, implicit, line.name, t_end)
                report.values[f"{label}.{line.name}.difference"] = difference
                if gated:
                    report.checks[f"{label}.{line.name}.matches_explicit"] = difference < settings.probe_gate

    if artifacts is not None:
        artifacts.table("bounds", report.bounds)

    logger.info(f"model2d finished: {'all checks passed' if report.passed else 'some checks failed'}")
    return report
