"""
One-qubit projective measurements on two-qubit states.

A measurement is parameterized by a Bloch direction
n = (sin θ cos φ, sin θ sin φ, cos θ); its projectors are
P± = (I ± n·σ) / 2.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from ..exceptions import ContractViolationError, DegenerateBranchError
from .linalg import (
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    ComplexMatrix,
    as_complex_matrix,
    dagger,
    is_unitary,
    qubit_eigenvalues,
    tensor_product,
)
from .states import DensityMatrix, entropy_from_eigenvalues, partial_trace

logger = logging.getLogger(__name__)

BRANCH_PROBABILITY_FLOOR = 1e-14
TWO_PI = 2 * math.pi


class MeasurementSide(Enum):
    """Which half of a two-qubit state is measured."""
    A = "A"
    B = "B"

    @property
    def measured_index(self) -> int:
        return 0 if self is MeasurementSide.A else 1

    @property
    def unmeasured_index(self) -> int:
        return 1 - self.measured_index


class Outcome(Enum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class BlochMeasurement:
    """Measurement direction: theta in [0, π], phi in [0, 2π)."""
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ContractViolationError(f"theta={self.theta} outside [0, π]")
        if not 0.0 <= self.phi < TWO_PI:
            raise ContractViolationError(f"phi={self.phi} outside [0, 2π)")

    @classmethod
    def wrapped(cls, theta: float, phi: float) -> "BlochMeasurement":
        """Build from unconstrained angles by clipping theta and wrapping phi."""
        theta = min(max(float(theta), 0.0), math.pi)
        phi = float(phi) % TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        return cls(theta, phi)

    @property
    def bloch_vector(self) -> np.ndarray:
        return np.array([
            math.sin(self.theta) * math.cos(self.phi),
            math.sin(self.theta) * math.sin(self.phi),
            math.cos(self.theta),
        ])

    def to_dict(self) -> dict:
        return {"theta": self.theta, "phi": self.phi}


def bloch_projectors(m: BlochMeasurement) -> Tuple[ComplexMatrix, ComplexMatrix]:
    """(P+, P-) for direction m."""
    n1, n2, n3 = m.bloch_vector
    n_sigma = n1 * PAULI_X + n2 * PAULI_Y + n3 * PAULI_Z
    return (IDENTITY_2 + n_sigma) / 2, (IDENTITY_2 - n_sigma) / 2


def projector_batch(thetas: np.ndarray, phis: np.ndarray, sign: int = 1) -> np.ndarray:
    """
    Projectors (I + sign n·σ)/2 for arrays of angles; shape (..., 2, 2).

    Written out entrywise so large angle grids stay vectorized.
    """
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    cos_t = np.cos(thetas)
    off = sign * np.sin(thetas) * np.exp(-1j * phis) / 2
    out = np.empty(np.broadcast(thetas, phis).shape + (2, 2), dtype=complex)
    out[..., 0, 0] = (1 + sign * cos_t) / 2
    out[..., 1, 1] = (1 - sign * cos_t) / 2
    out[..., 0, 1] = off
    out[..., 1, 0] = np.conj(off)
    return out


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2):
        raise ContractViolationError(f"Expected a two-qubit state, got dims {rho.dims}")


def measure_subsystem(
    rho: DensityMatrix,
    side: MeasurementSide,
    m: BlochMeasurement,
    outcome: Outcome,
) -> Tuple[float, DensityMatrix]:
    """
    Apply one projector of m to one side of a two-qubit state.

    Returns (p, rho_post) where p = Tr[Π ρ Π] and rho_post is the
    normalized state of the unmeasured qubit.

    Raises:
        DegenerateBranchError: p < 1e-14; the caller counts the branch as
            contributing zero entropy
    """
    _require_two_qubits(rho)
    p_plus, p_minus = bloch_projectors(m)
    local = p_plus if outcome is Outcome.PLUS else p_minus
    if side is MeasurementSide.A:
        projector = tensor_product(local, IDENTITY_2)
    else:
        projector = tensor_product(IDENTITY_2, local)

    projected = projector @ rho.matrix @ projector
    p = float(np.trace(projected).real)
    if p < BRANCH_PROBABILITY_FLOOR:
        raise DegenerateBranchError(p)

    projected = (projected + dagger(projected)) / (2 * p)
    post = partial_trace(DensityMatrix(projected, rho.dims), [side.unmeasured_index])
    return p, post


def conditioned_blocks(rho: DensityMatrix, side: MeasurementSide, projectors: np.ndarray) -> np.ndarray:
    """
    Unnormalized post-measurement states Tr_measured[(Π ⊗ I) ρ] for a batch of
    local projectors of shape (N, 2, 2). Returns shape (N, 2, 2).
    """
    _require_two_qubits(rho)
    r = rho.matrix.reshape(2, 2, 2, 2)
    if side is MeasurementSide.A:
        return np.einsum("nxy,ybxc->nbc", projectors, r)
    return np.einsum("nxy,ayzx->naz", projectors, r)


def conditional_entropy_batch(
    rho: DensityMatrix,
    side: MeasurementSide,
    thetas: np.ndarray,
    phis: np.ndarray,
) -> np.ndarray:
    """
    Σ± p± S(ρ±) for flat arrays of measurement angles, vectorized.

    Branches with p < 1e-14 contribute 0.
    """
    thetas = np.ravel(thetas)
    phis = np.ravel(phis)
    total = np.zeros(thetas.shape)
    for sign in (1, -1):
        blocks = conditioned_blocks(rho, side, projector_batch(thetas, phis, sign))
        blocks = (blocks + np.conj(np.swapaxes(blocks, -1, -2))) / 2
        p = np.trace(blocks, axis1=-2, axis2=-1).real
        live = p >= BRANCH_PROBABILITY_FLOOR
        safe_p = np.where(live, p, 1.0)
        lam = qubit_eigenvalues(blocks) / safe_p[:, None]
        total += np.where(live, p * entropy_from_eigenvalues(lam), 0.0)
    return total


def dephase_in_bases(
    rho: DensityMatrix,
    basis_a: ComplexMatrix,
    basis_b: ComplexMatrix,
) -> DensityMatrix:
    """
    Fully dephase a two-qubit state in a product basis:
    η = Σ_ij (π_i ⊗ π_j) ρ (π_i ⊗ π_j), π from the columns of each basis.

    Raises:
        ContractViolationError: non-two-qubit state or non-orthonormal basis
    """
    _require_two_qubits(rho)
    basis_a = as_complex_matrix(basis_a)
    basis_b = as_complex_matrix(basis_b)
    for name, basis in (("A", basis_a), ("B", basis_b)):
        if basis.shape != (2, 2) or not is_unitary(basis):
            raise ContractViolationError(f"Basis for side {name} is not orthonormal")

    eta = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        pa = np.outer(basis_a[:, i], np.conj(basis_a[:, i]))
        for j in range(2):
            pb = np.outer(basis_b[:, j], np.conj(basis_b[:, j]))
            pi = tensor_product(pa, pb)
            eta += pi @ rho.matrix @ pi
    return DensityMatrix((eta + dagger(eta)) / 2, rho.dims)
