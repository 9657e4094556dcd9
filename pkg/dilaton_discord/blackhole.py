"""
Dilaton black-hole physics layer.

Maps (M, α, ω, q_R) to the squeeze angle of the horizon mode mixing, the
Hawking temperature and Fermi-Dirac occupation seen outside the horizon,
the explicit Kruskal vacuum / one-particle kets, and the two-qubit state
shared by the inertial observer A and the near-horizon fermion mode B̃.

Fock-space convention
---------------------
Each mode holds 0 or 1 quanta. A product-basis ket is indexed big-endian
over its factors, first factor most significant (the np.kron ordering):

    Kruskal kets:  [out⁺ (fermion k), in⁻ (antifermion -k),
                    out⁻ (antifermion -k), in⁺ (fermion k)]
    Shared state:  [A, out⁺, in⁻, out⁻, in⁺]

so occupation "1011" in the Kruskal labeling is index 0b1011 = 11.
The explicit ket expansions already carry all fermionic signs, so states
are plain vectors; no operator ordering is applied.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.special import expit

from .exceptions import DomainError
from .models.params import DilatonParams, SqueezeAngle
from .qcore.states import DensityMatrix, StateVector, partial_trace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FockLabeling:
    """Ordered list of two-level mode factors and the index <-> occupation map."""
    factors: Tuple[str, ...]

    @property
    def dims(self) -> Tuple[int, ...]:
        return (2,) * len(self.factors)

    @property
    def dim(self) -> int:
        return 2 ** len(self.factors)

    def position(self, factor: str) -> int:
        return self.factors.index(factor)

    def index(self, occupations: Sequence[int]) -> int:
        if len(occupations) != len(self.factors):
            raise ValueError(
                f"Expected {len(self.factors)} occupations, got {len(occupations)}"
            )
        idx = 0
        for n in occupations:
            if n not in (0, 1):
                raise ValueError(f"Occupation must be 0 or 1, got {n}")
            idx = 2 * idx + n
        return idx

    def occupations(self, index: int) -> Tuple[int, ...]:
        if not 0 <= index < self.dim:
            raise ValueError(f"Index {index} out of range [0, {self.dim})")
        return tuple(int(c) for c in format(index, f"0{len(self.factors)}b"))

    def ket(self, coefficients: Dict[str, complex]) -> StateVector:
        """Build a state from {"0101": amplitude, ...} occupation strings."""
        amps = np.zeros(self.dim, dtype=complex)
        for label, amp in coefficients.items():
            amps[self.index([int(c) for c in label])] += amp
        return StateVector(amps, self.dims)


KRUSKAL_MODES = FockLabeling(("out+", "in-", "out-", "in+"))
SHARED_MODES = FockLabeling(("A", "out+", "in-", "out-", "in+"))


# ---------------------------------------------------------------------------
# Thermodynamics of the horizon
# ---------------------------------------------------------------------------

def _boltzmann_exponent(p: DilatonParams) -> float:
    """8πω(M - α) = ω / T."""
    return 8 * math.pi * p.omega * (p.mass - p.alpha)


def squeeze_angle(p: DilatonParams) -> SqueezeAngle:
    """
    cos r = (e^{-8πω(M-α)} + 1)^{-1/2},  sin r = (e^{8πω(M-α)} + 1)^{-1/2}.

    Evaluated through the logistic function so large ω(M-α) cannot overflow.
    """
    x = _boltzmann_exponent(p)
    return SqueezeAngle(cos_r=math.sqrt(expit(x)), sin_r=math.sqrt(expit(-x)))


def hawking_temperature(p: DilatonParams) -> float:
    """T = 1 / (8π(M - α))."""
    if not p.alpha < p.mass:
        raise DomainError(f"alpha must be below the mass (alpha={p.alpha}, M={p.mass})")
    return 1.0 / (8 * math.pi * (p.mass - p.alpha))


def occupation_number(p: DilatonParams) -> float:
    """Fermi-Dirac occupation N = 1 / (e^{ω/T} + 1) of the outside fermion mode."""
    return float(expit(-p.omega / hawking_temperature(p)))


# ---------------------------------------------------------------------------
# Kruskal states
# ---------------------------------------------------------------------------

def kruskal_vacuum(r: SqueezeAngle) -> StateVector:
    """
    Normalized Kruskal vacuum of one mode pair over [out⁺, in⁻, out⁻, in⁺]:

        C²|0000> - SC|0011> + SC|1100> - S²|1111>

    The |0011> amplitude is -S·C (not -S): unit norm fixes it.
    """
    c, s = r.cos_r, r.sin_r
    return KRUSKAL_MODES.ket({
        "0000": c * c,
        "0011": -s * c,
        "1100": s * c,
        "1111": -s * s,
    })


def kruskal_one_particle(r: SqueezeAngle, q_r: complex) -> StateVector:
    """
    First excited fermion state:

        q_R (C|1000> - S|1011>) + q_L (S|1100> + C|0001>),  q_L = sqrt(1 - |q_R|²)

    Raises:
        DomainError: |q_R| > 1
    """
    if abs(q_r) > 1 + 1e-12:
        raise DomainError(f"|q_R| must not exceed 1, got {abs(q_r)}")
    q_l = math.sqrt(max(0.0, 1.0 - abs(q_r) ** 2))
    c, s = r.cos_r, r.sin_r
    return KRUSKAL_MODES.ket({
        "1000": q_r * c,
        "1011": -q_r * s,
        "1100": q_l * s,
        "0001": q_l * c,
    })


# ---------------------------------------------------------------------------
# Shared two-qubit state
# ---------------------------------------------------------------------------

def shared_state_direct(p: DilatonParams) -> DensityMatrix:
    """
    Closed-form state of A and the outside fermion mode B̃ (dims [2, 2]):

        ½[C²|00><00| + q_R* C|00><11| + q_R C|11><00|
          + |q_L|² C²|10><10| + S²|01><01| + χ₀|11><11|],
        χ₀ = |q_R|² + |q_L|² S².

    The |10><10| weight is |q_L|² C²; unit trace requires the square.
    """
    r = squeeze_angle(p)
    c, s = r.cos_r, r.sin_r
    q_r = complex(p.q_r)
    q_l2 = p.q_l ** 2
    chi0 = abs(q_r) ** 2 + q_l2 * s * s

    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = c * c
    rho[0, 3] = np.conj(q_r) * c
    rho[3, 0] = q_r * c
    rho[2, 2] = q_l2 * c * c
    rho[1, 1] = s * s
    rho[3, 3] = chi0
    return DensityMatrix(rho / 2, (2, 2))


def entangled_kruskal_state(p: DilatonParams) -> StateVector:
    """(|0>_A ⊗ |0_k>_K + |1>_A ⊗ |1_k>⁺_K) / √2 over SHARED_MODES."""
    r = squeeze_angle(p)
    vacuum = kruskal_vacuum(r).amplitudes
    excited = kruskal_one_particle(r, p.q_r).amplitudes
    return StateVector(np.concatenate([vacuum, excited]) / math.sqrt(2), SHARED_MODES.dims)


def outside_state_fock(p: DilatonParams) -> DensityMatrix:
    """
    State of [A, out⁺, out⁻] after tracing out both inside modes (8x8).
    """
    rho = entangled_kruskal_state(p).density_matrix()
    keep = [SHARED_MODES.position(f) for f in ("A", "out+", "out-")]
    return partial_trace(rho, keep)


def shared_state_fock(p: DilatonParams) -> DensityMatrix:
    """
    Same state as shared_state_direct, built from the explicit 32-dim kets:
    trace out in⁻ and in⁺, then the outside antifermion mode out⁻.
    """
    outside = outside_state_fock(p)
    return partial_trace(outside, [0, 1])
