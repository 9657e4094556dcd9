"""
Dilaton Discord - Entry point.

Sweeps the dilaton, writes correlation CSVs and SVG charts, searches for a
C(B|A) = C(A|B) crossing, dumps the shared state at one parameter point
and runs the oracle self-check.

    python -m dilaton_discord.main sweep --steps 200 --out sweep.csv
    python -m dilaton_discord.main find-crossing --alpha-min 0.5
    python -m dilaton_discord.main state --alpha 0.3
    python -m dilaton_discord.main plot --out charts/dilaton
    python -m dilaton_discord.main report --alpha 0.9
    python -m dilaton_discord.main --self-check
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from .blackhole import shared_state_direct
from .config import Settings
from .correlations import full_report
from .exceptions import DilatonError, UsageError
from .metrics import start_metrics_server
from .models.params import DilatonParams, SweepConfig
from .oracle import overlap_diagnostic, run_self_check
from .qcore.states import partial_trace, von_neumann_entropy
from .svg_chart import write_correlation_charts
from .sweep import compute_reports, find_crossing, render_csv, sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4
EXIT_SELF_CHECK_FAILED = 5

MATRIX_FORMAT = ".12g"
DEFAULT_PLOT_STEM = "dilaton_correlations"


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # Scenario flags default to None so Settings fills whatever is not given.
    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--mass", type=float, help="Black-hole mass M (default 1.0)")
    point.add_argument("--omega", type=float, help="Mode frequency ω (default 1.0)")
    point.add_argument("--qr", type=float, dest="q_r", help="Particle-branch weight q_R (default 1.0)")
    point.add_argument(
        "--self-check", action="store_true", default=argparse.SUPPRESS,
        help="Also run the oracle self-check",
    )

    sweep_range = argparse.ArgumentParser(add_help=False)
    sweep_range.add_argument("--alpha-min", type=float, help="First dilaton value (default 0.0)")
    sweep_range.add_argument("--alpha-max", type=float, help="Last dilaton value (default 0.999)")
    sweep_range.add_argument("--steps", type=int, help="Number of alpha values (default 200)")
    sweep_range.add_argument("--workers", type=int, help="Worker processes computing sweep rows")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("--alpha", type=float, default=0.0, help="Dilaton value (default 0.0)")

    parser = argparse.ArgumentParser(
        prog="dilaton-discord",
        description="Quantum discord and MID of fermions near a dilaton black hole.",
    )
    parser.add_argument("--self-check", action="store_true", help="Run the oracle self-check")
    parser.add_argument("--log-level", help="Log level (default from DILATON_LOG_LEVEL or INFO)")
    parser.add_argument("--metrics-port", type=int, help="Expose Prometheus metrics on this port")

    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("sweep", parents=[point, sweep_range], help="Correlation CSV over an alpha grid")
    p.add_argument("--out", help="CSV path (stdout when omitted)")

    sub.add_parser(
        "find-crossing", parents=[point, sweep_range],
        help="Alpha where C(B|A) = C(A|B); exits 3 if the gap keeps its sign",
    )

    sub.add_parser("state", parents=[point, single], help="Dump the shared two-qubit state")

    p = sub.add_parser("plot", parents=[point, sweep_range], help="SVG charts of a sweep")
    p.add_argument("--out", default=DEFAULT_PLOT_STEM, help="Output stem for the two SVG files")

    sub.add_parser("report", parents=[point, single], help="Every measure at one point as JSON")

    return parser


def _sweep_config(
    settings: Settings,
    args: argparse.Namespace,
    output_path: Optional[str] = None,
) -> SweepConfig:
    try:
        return settings.sweep_config(
            mass=args.mass,
            omega=args.omega,
            q_r=args.q_r,
            alpha_min=getattr(args, "alpha_min", None),
            alpha_max=getattr(args, "alpha_max", None),
            steps=getattr(args, "steps", None),
            output_path=output_path,
        )
    except ValidationError as e:
        raise UsageError(f"Invalid sweep configuration: {e}") from e


def _point(settings: Settings, args: argparse.Namespace) -> DilatonParams:
    return DilatonParams(
        mass=settings.mass if args.mass is None else args.mass,
        alpha=args.alpha,
        omega=settings.omega if args.omega is None else args.omega,
        q_r=settings.q_r if args.q_r is None else args.q_r,
    )


def _workers(settings: Settings, args: argparse.Namespace) -> int:
    workers = getattr(args, "workers", None)
    workers = settings.sweep_workers if workers is None else workers
    if workers < 1:
        raise UsageError(f"--workers must be at least 1, got {workers}")
    return workers


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_sweep(settings: Settings, args: argparse.Namespace) -> int:
    config = _sweep_config(settings, args, output_path=args.out)
    reports = sweep(
        config,
        workers=_workers(settings, args),
        coarse_grid=settings.coarse_grid,
        tol=settings.refine_tol,
    )
    if not config.output_path:
        sys.stdout.write(render_csv(reports))
    return EXIT_OK


def cmd_find_crossing(settings: Settings, args: argparse.Namespace) -> int:
    config = _sweep_config(settings, args)
    alpha_star = find_crossing(config, tol=settings.crossing_tol, coarse_grid=settings.coarse_grid)
    print(f"{alpha_star:.5f}")
    return EXIT_OK


def format_matrix(matrix: np.ndarray) -> List[str]:
    return ["  " + "  ".join(f"{v:>20{MATRIX_FORMAT}}" for v in row) for row in matrix]


def cmd_state(settings: Settings, args: argparse.Namespace) -> int:
    p = _point(settings, args)
    rho = shared_state_direct(p)
    overlap = overlap_diagnostic(p)

    lines = [f"rho_AB at M={p.mass} alpha={p.alpha} omega={p.omega} q_R={p.q_r}", "real part:"]
    lines += format_matrix(rho.matrix.real)
    lines.append("imaginary part:")
    lines += format_matrix(rho.matrix.imag)
    lines.append("eigenvalues: " + " ".join(format(v, MATRIX_FORMAT) for v in rho.eigenvalues()))
    lines.append(f"S(A): {von_neumann_entropy(partial_trace(rho, [0])):{MATRIX_FORMAT}}")
    lines.append(f"S(B): {von_neumann_entropy(partial_trace(rho, [1])):{MATRIX_FORMAT}}")
    lines.append(f"S(AB): {von_neumann_entropy(rho):{MATRIX_FORMAT}}")
    lines.append(
        f"overlap <0_k|1_k>: {overlap.real:{MATRIX_FORMAT}} {overlap.imag:+{MATRIX_FORMAT}}j"
    )
    print("\n".join(lines))
    return EXIT_OK


def cmd_plot(settings: Settings, args: argparse.Namespace) -> int:
    config = _sweep_config(settings, args)
    reports = compute_reports(
        config,
        workers=_workers(settings, args),
        coarse_grid=settings.coarse_grid,
        tol=settings.refine_tol,
    )
    for path in write_correlation_charts(reports, args.out, settings.load_plot_config()):
        print(path)
    return EXIT_OK


def cmd_report(settings: Settings, args: argparse.Namespace) -> int:
    report = full_report(_point(settings, args), coarse_grid=settings.coarse_grid, tol=settings.refine_tol)
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


COMMANDS = {
    "sweep": cmd_sweep,
    "find-crossing": cmd_find_crossing,
    "state": cmd_state,
    "plot": cmd_plot,
    "report": cmd_report,
}


def self_check(settings: Settings, args: argparse.Namespace) -> int:
    """
    Oracle self-check at the command's parameter point, or at both ends
    of the sweep range for sweep-style commands and when run alone.
    """
    if hasattr(args, "alpha"):
        points = [_point(settings, args)]
    else:
        if not hasattr(args, "mass"):
            args.mass = args.omega = args.q_r = None
        config = _sweep_config(settings, args)
        points = [config.params_at(config.alpha_min), config.params_at(config.alpha_max)]

    passed = True
    for p in points:
        report = run_self_check(p, grid_size=settings.validation_grid)
        print(json.dumps(report.to_dict(), indent=2))
        if not report.passed:
            failed = [name for name, ok in report.checks.items() if not ok]
            logger.error(f"Self-check failed at alpha={p.alpha}: {', '.join(failed)}")
            passed = False
    return EXIT_OK if passed else EXIT_SELF_CHECK_FAILED


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point. Returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = Settings()
        _configure_logging(args.log_level or settings.log_level)
        start_metrics_server(settings.metrics_port if args.metrics_port is None else args.metrics_port)

        if args.command is None and not args.self_check:
            parser.print_help(sys.stderr)
            return EXIT_USAGE

        code = EXIT_OK
        if args.command is not None:
            code = COMMANDS[args.command](settings, args)
        if code == EXIT_OK and args.self_check:
            code = self_check(settings, args)
        return code

    except (UsageError, ValidationError) as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except DilatonError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_DOMAIN
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_UNEXPECTED
    except Exception as e:
        logger.error(f"Fatal error: {e}", exc_info=True)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
