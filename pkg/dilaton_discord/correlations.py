"""
Correlation measures of two-qubit states.

- mutual information I = S(A) + S(B) - S(AB)
- one-sided classical correlation and quantum discord, with the
  measurement-conditioned entropy minimized over Bloch directions
- measurement-induced disturbance (MID): dephase in the marginal
  eigenbases and compare mutual informations

Minimization protocol: a 64 x 64 (θ, φ) grid evaluated in one vectorized
pass, then Powell refinement (Brent line searches along the angle axes)
from the lowest grid valleys, then a parabolic θ polish over a wide
stencil. The refined value never exceeds the grid value it started from.
"""

import logging
import math
import time
from typing import Callable, List, NamedTuple, Tuple

import numpy as np
from scipy.ndimage import label, minimum_filter, minimum_position
from scipy.optimize import minimize

from . import metrics as m
from .blackhole import hawking_temperature, occupation_number, shared_state_direct, squeeze_angle
from .exceptions import DegenerateBranchError
from .models.params import DilatonParams
from .models.report import CorrelationReport
from .qcore.linalg import hermitian_eigensystem
from .qcore.measurement import (
    BlochMeasurement,
    MeasurementSide,
    Outcome,
    conditional_entropy_batch,
    dephase_in_bases,
    measure_subsystem,
)
from .qcore.states import DensityMatrix, partial_trace, von_neumann_entropy

logger = logging.getLogger(__name__)

COARSE_GRID = 64
REFINE_TOL = 1e-9
REFINE_CANDIDATES = 3
PLATEAU_TOL = 1e-12
THETA_POLISH_STEP = 0.75
THETA_POLISH_ITERATIONS = 6
THETA_POLISH_MIN_STEP = 1e-10
THETA_POLISH_SLACK = 1e-12


class Minimum(NamedTuple):
    """Smallest measurement-conditioned entropy and where it is attained."""
    value: float
    argmin: BlochMeasurement


class MIDResult(NamedTuple):
    mid_classical: float
    mid_quantum: float


# ---------------------------------------------------------------------------
# Entropic building blocks
# ---------------------------------------------------------------------------

def _marginal_entropies(rho: DensityMatrix) -> Tuple[float, float]:
    return (
        von_neumann_entropy(partial_trace(rho, [0])),
        von_neumann_entropy(partial_trace(rho, [1])),
    )


def mutual_information(rho: DensityMatrix) -> float:
    """I(A:B) = S(ρ_A) + S(ρ_B) - S(ρ_AB), in bits."""
    s_a, s_b = _marginal_entropies(rho)
    return s_a + s_b - von_neumann_entropy(rho)


def conditional_entropy(rho: DensityMatrix, side: MeasurementSide, meas: BlochMeasurement) -> float:
    """
    Σ± p± S(ρ±) after measuring `side` along `meas`.

    Branches below the probability floor contribute zero.
    """
    total = 0.0
    for outcome in (Outcome.PLUS, Outcome.MINUS):
        try:
            p, post = measure_subsystem(rho, side, meas, outcome)
        except DegenerateBranchError:
            m.DEGENERATE_BRANCHES.inc()
            continue
        total += p * von_neumann_entropy(post)
    return total


# ---------------------------------------------------------------------------
# Minimization over measurement directions
# ---------------------------------------------------------------------------

def angle_grid(size: int) -> Tuple[np.ndarray, np.ndarray]:
    """θ on [0, π] (endpoints included) and φ on [0, 2π) (endpoint excluded)."""
    return (
        np.linspace(0.0, math.pi, size),
        np.linspace(0.0, 2 * math.pi, size, endpoint=False),
    )


def conditional_entropy_grid(rho: DensityMatrix, side: MeasurementSide, size: int) -> np.ndarray:
    """Objective on the size x size angle grid; axis 0 is θ, axis 1 is φ."""
    thetas, phis = angle_grid(size)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return conditional_entropy_batch(rho, side, tt, pp).reshape(size, size)


def _grid_candidates(values: np.ndarray, count: int) -> List[Tuple[int, int]]:
    """
    Lowest local minima of the grid (φ axis periodic), one per valley.

    n and -n give the same measurement with outcomes swapped, so only the
    upper hemisphere θ <= π/2 is searched for distinct candidates; the
    global grid minimum is always included. Connected cells that tie within
    PLATEAU_TOL (a φ-independent ridge, say) count as one valley.
    """
    floor = minimum_filter(values, size=3, mode=("nearest", "wrap"))
    local = values <= floor + PLATEAU_TOL
    local[(values.shape[0] + 1) // 2:, :] = False
    local.flat[int(np.argmin(values))] = True
    labels, n = label(local, structure=np.ones((3, 3), dtype=int))
    positions = minimum_position(values, labels, index=np.arange(1, n + 1))
    positions = sorted(positions, key=lambda ij: values[ij])
    return [(int(i), int(j)) for i, j in positions[:count]]


def _polish_theta(
    evaluate: Callable[[np.ndarray, float], np.ndarray],
    best: Minimum,
    ceiling: float,
) -> Minimum:
    """
    Re-center θ by parabolic steps over a ±THETA_POLISH_STEP stencil.

    A step is kept only while the objective stays within THETA_POLISH_SLACK
    of the current value and below `ceiling`.
    """
    h = THETA_POLISH_STEP
    theta, phi, value = best.argmin.theta, best.argmin.phi, best.value
    for _ in range(THETA_POLISH_ITERATIONS):
        if not h <= theta <= math.pi - h:
            break
        f_lo, f_mid, f_hi = evaluate(np.array([theta - h, theta, theta + h]), phi)
        curvature = f_lo - 2 * f_mid + f_hi
        if curvature <= 0:
            break
        step = h * (f_lo - f_hi) / (2 * curvature)
        if abs(step) >= h:
            break
        candidate = theta + step
        f_new = float(evaluate(np.array([candidate]), phi)[0])
        if f_new > value + THETA_POLISH_SLACK or f_new > ceiling:
            break
        theta, value = candidate, f_new
        if abs(step) < THETA_POLISH_MIN_STEP:
            break
    return Minimum(value, BlochMeasurement.wrapped(theta, phi))


def minimize_conditional_entropy(
    rho: DensityMatrix,
    side: MeasurementSide,
    coarse_grid: int = COARSE_GRID,
    tol: float = REFINE_TOL,
) -> Minimum:
    """
    Minimum over Bloch directions of the measurement-conditioned entropy.

    Coarse coarse_grid x coarse_grid scan, Powell refinement of the best
    grid valleys to `tol` in the objective, then a wide-stencil θ polish.
    The polish matters when sin r -> 0: the objective is then only ~1e-9
    deep and rounding in the entropy hides the minimum from a line search.
    """
    m.MINIMIZATIONS.labels(side=side.value).inc()
    thetas, phis = angle_grid(coarse_grid)
    values = conditional_entropy_grid(rho, side, coarse_grid)

    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    best = Minimum(float(values[i, j]), BlochMeasurement(float(thetas[i]), float(phis[j])))
    coarse_value = best.value

    def evaluate(theta: np.ndarray, phi: float) -> np.ndarray:
        theta = np.clip(theta, 0.0, math.pi)
        return conditional_entropy_batch(rho, side, theta, np.full(theta.shape, phi))

    def objective(x: np.ndarray) -> float:
        return float(evaluate(np.array([x[0]]), x[1])[0])

    for ci, cj in _grid_candidates(values, REFINE_CANDIDATES):
        x0 = np.array([thetas[ci], phis[cj]])
        result = minimize(
            objective,
            x0,
            method="Powell",
            bounds=[(0.0, math.pi), (phis[cj] - math.pi, phis[cj] + math.pi)],
            options={"xtol": tol * 10, "ftol": tol},
        )
        value = float(result.fun)
        if value < best.value:
            best = Minimum(value, BlochMeasurement.wrapped(result.x[0], result.x[1]))

    best = _polish_theta(evaluate, best, coarse_value)
    logger.debug(
        f"side={side.value} coarse={coarse_value:.12g} refined={best.value:.12g} "
        f"theta={best.argmin.theta:.6f} phi={best.argmin.phi:.6f}"
    )
    return best


def classical_correlation(rho: DensityMatrix, side: MeasurementSide, **kwargs) -> float:
    """C = S(unmeasured marginal) - min conditional entropy."""
    unmeasured = partial_trace(rho, [side.unmeasured_index])
    return von_neumann_entropy(unmeasured) - minimize_conditional_entropy(rho, side, **kwargs).value


def quantum_discord(rho: DensityMatrix, side: MeasurementSide, **kwargs) -> float:
    """D = S(measured marginal) - S(ρ) + min conditional entropy (= I - C)."""
    measured = partial_trace(rho, [side.measured_index])
    minimum = minimize_conditional_entropy(rho, side, **kwargs).value
    return von_neumann_entropy(measured) - von_neumann_entropy(rho) + minimum


def _one_sided(rho: DensityMatrix, side: MeasurementSide, s_marginals, s_joint, **kwargs):
    """(classical, discord, argmin) sharing one minimization."""
    minimum = minimize_conditional_entropy(rho, side, **kwargs)
    s_measured = s_marginals[side.measured_index]
    s_unmeasured = s_marginals[side.unmeasured_index]
    classical = s_unmeasured - minimum.value
    discord = s_measured - s_joint + minimum.value
    return classical, discord, minimum.argmin


# ---------------------------------------------------------------------------
# Measurement-induced disturbance
# ---------------------------------------------------------------------------

def mid_dephased_state(rho: DensityMatrix) -> DensityMatrix:
    """η: ρ dephased in the (canonical) eigenbases of its two marginals."""
    _, basis_a = hermitian_eigensystem(partial_trace(rho, [0]).matrix)
    _, basis_b = hermitian_eigensystem(partial_trace(rho, [1]).matrix)
    return dephase_in_bases(rho, basis_a, basis_b)


def mid(rho: DensityMatrix) -> MIDResult:
    """(I(η), I(ρ) - I(η))."""
    eta = mid_dephased_state(rho)
    classical = mutual_information(eta)
    return MIDResult(classical, mutual_information(rho) - classical)


# ---------------------------------------------------------------------------
# Full report
# ---------------------------------------------------------------------------

def full_report(
    p: DilatonParams,
    coarse_grid: int = COARSE_GRID,
    tol: float = REFINE_TOL,
) -> CorrelationReport:
    """Every measure of shared_state_direct(p) plus temperature and occupation."""
    started = time.perf_counter()
    rho = shared_state_direct(p)

    s_marginals = _marginal_entropies(rho)
    s_joint = von_neumann_entropy(rho)
    mutual = s_marginals[0] + s_marginals[1] - s_joint

    cc_a, d_a, argmin_a = _one_sided(rho, MeasurementSide.A, s_marginals, s_joint,
                                     coarse_grid=coarse_grid, tol=tol)
    cc_b, d_b, argmin_b = _one_sided(rho, MeasurementSide.B, s_marginals, s_joint,
                                     coarse_grid=coarse_grid, tol=tol)
    mid_result = mid(rho)

    report = CorrelationReport(
        params=p,
        temperature=hawking_temperature(p),
        occupation=occupation_number(p),
        sin_r=squeeze_angle(p).sin_r,
        mutual_info=mutual,
        classical_a=cc_a,
        classical_b=cc_b,
        discord_a=d_a,
        discord_b=d_b,
        mid_classical=mid_result.mid_classical,
        mid_quantum=mid_result.mid_quantum,
        argmin_a=argmin_a,
        argmin_b=argmin_b,
    )

    elapsed = time.perf_counter() - started
    m.REPORTS_COMPUTED.inc()
    m.REPORT_DURATION.observe(elapsed)
    logger.debug(f"report alpha={p.alpha:.6f} computed in {elapsed * 1000:.1f} ms")
    return report
