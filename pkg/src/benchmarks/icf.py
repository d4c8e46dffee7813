"""
Three-region ICF capsule benchmark.

Checks at every output time:
- minimum temperature stays at the initial floor
- T_r stays below the wall temperature, and max T_e < max T_r
- the radiation front leads the electron front along the probe line
- every implicit step reaches the requested residual drop
"""

from typing import Dict, Optional

import numpy as np

from src.benchmarks.probes import front_extent
from src.benchmarks.report import BenchmarkReport
from src.benchmarks.simulation import case_from_spec, relative_drop, run_case
from src.data.exporters import RunArtifacts
from src.data.schemas import RunSpec
from src.grid.fields import SPECIES_LABELS
from src.reconstruction.geno1d import CENTRAL2
from src.utils.file_utils import format_float
from src.utils.logger import get_logger

logger = get_logger(__name__)

CEILING_TOLERANCE = 1e-9
FLOOR_RTOL = 1e-9

# Published maxima (T_e, T_i, T_r) at selected times
REFERENCE_MAX: Dict[float, tuple] = {
    0.3: (0.522549, 0.513476, 1.99242),
    5.0: (1.819610, 1.819000, 1.99940),
}


def run_icf(
    spec: RunSpec,
    artifacts: Optional[RunArtifacts] = None,
    strict: bool = False,
    show_progress: bool = True
) -> BenchmarkReport:
    """
    Implicit ICF run with bounds, histories and front checks.

    Returns:
        BenchmarkReport
    """
    settings = spec.icf
    report = BenchmarkReport(problem="icf")
    cells = "x".join(str(n) for n in spec.grid.cells)

    logger.info(f"=== ICF: {cells} cells, dt={spec.time.dt:.3g}, t_end={spec.time.t_end:.3g} ===")
    base = run_case(case_from_spec(spec, "base"), artifacts=artifacts, strict=strict,
                    show_progress=show_progress)
    report.add_case(base)

    output_times = sorted(t for t in base.fields if t > 0.0)
    front_line = spec.output.probes[0].name if spec.output.probes else None

    for t in output_times:
        level = f"t={format_float(t)}"
        temperature = base.fields[t]
        flat = temperature.reshape(3, -1)
        mins = flat.min(axis=1)
        maxs = flat.max(axis=1)

        report.checks[f"base.{level}.min_at_floor"] = bool(
            np.allclose(mins, settings.floor, rtol=FLOOR_RTOL, atol=0.0)
        )
        report.checks[f"base.{level}.Tr_below_wall"] = bool(maxs[2] < settings.ceiling + CEILING_TOLERANCE)
        report.checks[f"base.{level}.Te_max_below_Tr_max"] = bool(maxs[0] < maxs[2])

        if front_line is not None:
            frame = base.probe(front_line, t)
            radiation = front_extent(frame, "Tr", settings.front_threshold)
            electron = front_extent(frame, "Te", settings.front_threshold)
            report.checks[f"base.{level}.radiation_front_leads"] = bool(
                np.isin(electron, radiation).all()
            )
            report.values[f"base.{level}.front_cells_Tr"] = float(radiation.size)
            report.values[f"base.{level}.front_cells_Te"] = float(electron.size)

        for reference_t, reference in REFERENCE_MAX.items():
            if np.isclose(t, reference_t, rtol=0.0, atol=1e-12):
                for species, label in enumerate(SPECIES_LABELS):
                    report.values[f"base.{level}.{label}_max.reference"] = reference[species]

    drops = [relative_drop(s.residual_history) for s in base.steps]
    report.values["base.min_residual_drop_orders"] = float(min(drops, default=np.inf))
    report.checks["base.all_steps_converged"] = base.all_converged

    if settings.compare_central2:
        logger.info("=== ICF: second-order central comparison ===")
        central = run_case(case_from_spec(spec, "central2", scheme=CENTRAL2), artifacts=artifacts,
                           strict=strict, show_progress=show_progress)
        report.add_case(central)
        for point in spec.output.histories:
            geno_series = base.histories[point.name]
            central_series = central.histories[point.name]
            for label in SPECIES_LABELS:
                report.values[f"central2.{point.name}.{label}.max_difference"] = float(
                    np.max(np.abs(geno_series[label].to_numpy() - central_series[label].to_numpy()))
                )

    if artifacts is not None:
        artifacts.table("bounds", report.bounds)

    logger.info(f"ICF finished: {'all checks passed' if report.passed else 'some checks failed'}")
    return report
