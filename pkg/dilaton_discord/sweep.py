"""
Dilaton sweeps: report rows over an alpha grid, CSV emission and the
C(B|A) = C(A|B) crossing search.
"""

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List

from scipy.optimize import brentq

from . import metrics as m
from .blackhole import shared_state_direct, squeeze_angle
from .correlations import COARSE_GRID, REFINE_TOL, classical_correlation, full_report
from .exceptions import NoCrossingError
from .models.params import SweepConfig
from .models.report import CSV_COLUMNS, CorrelationReport
from .qcore.measurement import MeasurementSide

logger = logging.getLogger(__name__)

CSV_FORMAT = ".15g"
DEFAULT_CROSSING_TOL = 1e-8
GAP_NOISE_FLOOR = 1e-12   # |g| at or below this has no resolvable sign


def format_value(value: float) -> str:
    """Round-to-nearest decimal with 15 significant digits."""
    return format(float(value), CSV_FORMAT)


def _report_job(job) -> CorrelationReport:
    params, coarse_grid, tol = job
    return full_report(params, coarse_grid=coarse_grid, tol=tol)


def compute_reports(
    config: SweepConfig,
    workers: int = 1,
    coarse_grid: int = COARSE_GRID,
    tol: float = REFINE_TOL,
) -> List[CorrelationReport]:
    """
    full_report at every alpha of the sweep, in ascending alpha order.

    With workers > 1 rows are computed in worker processes; executor.map
    keeps input order, so the output does not depend on `workers`.
    """
    params = [config.params_at(alpha) for alpha in config.alphas()]
    logger.info(
        f"Sweeping alpha in [{config.alpha_min}, {config.alpha_max}] "
        f"({config.steps} steps, M={config.mass}, omega={config.omega}, q_R={config.q_r})"
    )

    jobs = [(p, coarse_grid, tol) for p in params]
    if workers > 1 and len(jobs) > 1:
        chunksize = max(1, len(jobs) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_report_job, jobs, chunksize=chunksize))
    else:
        reports = [_report_job(job) for job in jobs]

    m.SWEEP_ROWS.set(len(reports))
    return reports


def render_csv(reports: List[CorrelationReport]) -> str:
    """Sweep CSV text: header row, then one row per report (LF line endings)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        writer.writerow([format_value(v) for v in report.csv_row()])
    return buffer.getvalue()


def write_csv(reports: List[CorrelationReport], path: str) -> Path:
    """Write the sweep CSV (UTF-8, LF line endings)."""
    out = Path(path)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(render_csv(reports))
    logger.info(f"Wrote {len(reports)} rows to {out}")
    return out


def read_csv(path: str) -> List[Dict[str, float]]:
    """Parse a sweep CSV back into dictionaries of floats."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        return [{k: float(v) for k, v in row.items()} for row in reader]


def sweep(
    config: SweepConfig,
    workers: int = 1,
    coarse_grid: int = COARSE_GRID,
    tol: float = REFINE_TOL,
) -> List[CorrelationReport]:
    """Compute the sweep and, if config.output_path is set, write it as CSV."""
    reports = compute_reports(config, workers=workers, coarse_grid=coarse_grid, tol=tol)
    if config.output_path:
        write_csv(reports, config.output_path)
    return reports


# ---------------------------------------------------------------------------
# Crossing point
# ---------------------------------------------------------------------------

GapFunction = Callable[[SweepConfig, float, int], float]


def classical_gap(config: SweepConfig, alpha: float, coarse_grid: int = COARSE_GRID) -> float:
    """g(α) = C(B̃|A) - C(A|B̃) at fixed (M, ω, q_R)."""
    rho = shared_state_direct(config.params_at(alpha))
    return (
        classical_correlation(rho, MeasurementSide.A, coarse_grid=coarse_grid)
        - classical_correlation(rho, MeasurementSide.B, coarse_grid=coarse_grid)
    )


def occupation_gap(level: float) -> GapFunction:
    """g(α) = sin²r(α) - level: where the Hawking occupation reaches `level`."""
    def gap(config: SweepConfig, alpha: float, coarse_grid: int = COARSE_GRID) -> float:
        return squeeze_angle(config.params_at(alpha)).sin_r ** 2 - level
    return gap


def find_crossing(
    config: SweepConfig,
    tol: float = DEFAULT_CROSSING_TOL,
    coarse_grid: int = COARSE_GRID,
    gap: GapFunction = classical_gap,
) -> float:
    """
    Root of gap(α) on [alpha_min, alpha_max], bracketed to within tol.

    The default gap is C(B̃|A) - C(A|B̃).

    Raises:
        NoCrossingError: g has the same sign at both ends of the interval,
            or is within GAP_NOISE_FLOOR of zero at an end
    """
    lo, hi = config.alpha_min, config.alpha_max
    g_lo = gap(config, lo, coarse_grid)
    g_hi = gap(config, hi, coarse_grid)
    logger.info(f"Crossing bracket [{lo}, {hi}]: g={g_lo:.3e} .. {g_hi:.3e}")
    unresolved = min(abs(g_lo), abs(g_hi)) <= GAP_NOISE_FLOOR
    if unresolved or (g_lo > 0) == (g_hi > 0):
        raise NoCrossingError(
            f"{gap.__name__} does not change sign on [{lo}, {hi}] "
            f"(g={g_lo:.3e} at {lo}, g={g_hi:.3e} at {hi})"
        )

    alpha_star, result = brentq(
        lambda a: gap(config, a, coarse_grid), lo, hi, xtol=tol, full_output=True
    )
    logger.info(f"Crossing found at alpha={alpha_star:.8f} after {result.function_calls} evaluations")
    return float(alpha_star)


def crossing_count(reports: List[CorrelationReport]) -> int:
    """
    Sign changes of cc_A - cc_B along the sweep, ignoring rows where the
    difference is within GAP_NOISE_FLOOR of zero.
    """
    diffs = [r.classical_a - r.classical_b for r in reports]
    diffs = [d for d in diffs if abs(d) > GAP_NOISE_FLOOR]
    return sum(1 for a, b in zip(diffs, diffs[1:]) if (a > 0) != (b > 0))
