"""
State containers, partial traces and von Neumann entropy.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ContractViolationError, InvalidSubsystemError
from .linalg import ComplexMatrix, as_complex_matrix, dagger, hermiticity_error

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
NORM_TOL = 1e-12
ZERO_EIGENVALUE = 1e-14   # eigenvalues below this count as exactly 0 in entropies

_EINSUM_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class StateVector:
    """Unit-norm ket over a product of subsystems."""
    amplitudes: np.ndarray
    dims: Tuple[int, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if int(np.prod(self.dims)) != amps.size:
            raise ContractViolationError(
                f"dims {self.dims} do not match {amps.size} amplitudes"
            )
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ContractViolationError(f"State vector is not normalized (|psi|^2 = {norm_sq!r})")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, np.conj(self.amplitudes)), self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    """
    Hermitian, unit-trace, positive-semidefinite matrix with subsystem dims.

    Invariants are checked on construction (Hermiticity 1e-12, trace 1e-12,
    smallest eigenvalue >= -1e-10).
    """
    matrix: ComplexMatrix
    dims: Tuple[int, ...]

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

        if not dims or any(d < 1 for d in dims) or int(np.prod(dims)) != m.shape[0]:
            raise ContractViolationError(f"dims {dims} do not match matrix dimension {m.shape[0]}")
        herm = hermiticity_error(m)
        if herm > HERMITIAN_TOL:
            raise ContractViolationError(f"Density matrix is not Hermitian (deviation {herm:.3e})")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > TRACE_TOL:
            raise ContractViolationError(f"Density matrix trace is {trace!r}, expected 1")
        smallest = float(np.linalg.eigvalsh((m + dagger(m)) / 2)[0])
        if smallest < -PSD_TOL:
            raise ContractViolationError(
                f"Density matrix is not positive semidefinite (eigenvalue {smallest:.3e})"
            )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def marginal(self, keep: Iterable[int]) -> "DensityMatrix":
        return partial_trace(self, keep)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sorted descending."""
        return np.linalg.eigvalsh((self.matrix + dagger(self.matrix)) / 2)[::-1]

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "real": self.matrix.real.tolist(),
            "imag": self.matrix.imag.tolist(),
        }


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """
    Reduced state on the subsystems in `keep` (returned in ascending order).

    Raises:
        InvalidSubsystemError: empty keep-set or an index outside rho.dims
    """
    n = len(rho.dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise InvalidSubsystemError("partial_trace needs at least one subsystem to keep")
    for k in keep:
        if k < 0 or k >= n:
            raise InvalidSubsystemError(f"Subsystem index {k} out of range [0, {n - 1}]")

    if len(keep) == n:
        return rho

    tensor = rho.matrix.reshape(rho.dims + rho.dims)
    row = list(_EINSUM_LETTERS[:n])
    col = list(_EINSUM_LETTERS[n:2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[k] for k in keep) + "".join(col[k] for k in keep)
    reduced = np.einsum(f"{''.join(row)}{''.join(col)}->{out}", tensor)

    kept_dims = tuple(rho.dims[k] for k in keep)
    size = int(np.prod(kept_dims))
    return DensityMatrix(reduced.reshape(size, size), kept_dims)


def entropy_from_eigenvalues(eigenvalues: np.ndarray) -> np.ndarray:
    """
    -sum(lambda log2 lambda) along the last axis with 0 log 0 = 0.

    Eigenvalues below ZERO_EIGENVALUE (including small negative PSD slack)
    are treated as exactly 0.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    lam = np.where(lam < ZERO_EIGENVALUE, 0.0, lam)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam > 0, -lam * np.log2(np.where(lam > 0, lam, 1.0)), 0.0)
    return terms.sum(axis=-1)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) in bits."""
    s = float(entropy_from_eigenvalues(rho.eigenvalues()))
    return min(max(s, 0.0), float(np.log2(rho.dim)))


def product_state(*factors: DensityMatrix) -> DensityMatrix:
    """rho_1 ⊗ rho_2 ⊗ ... with concatenated dims."""
    matrix = np.array([[1.0 + 0j]])
    dims: Tuple[int, ...] = ()
    for f in factors:
        matrix = np.kron(matrix, f.matrix)
        dims += f.dims
    return DensityMatrix(matrix, dims)


def random_density_matrix(
    rng: np.random.Generator,
    dims: Sequence[int] = (2, 2),
    rank: Optional[int] = None,
) -> DensityMatrix:
    """Random state from a complex Ginibre matrix G: rho = G G^dagger / Tr."""
    dim = int(np.prod(dims))
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ dagger(g)
    m = (m + dagger(m)) / 2
    return DensityMatrix(m / np.trace(m).real, tuple(dims))
