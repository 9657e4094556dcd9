"""
Dense complex linear algebra for small Hilbert spaces.

A ComplexMatrix is a square complex128 numpy array. Everything here is a
pure function of its inputs.
"""

import logging
from typing import Tuple

import numpy as np

from ..exceptions import ContractViolationError

logger = logging.getLogger(__name__)

ComplexMatrix = np.ndarray

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10
DEGENERACY_TOL = 1e-12   # eigenvalues closer than this share an eigenspace
_SPAN_TOL = 1e-8         # projected basis vectors shorter than this are skipped

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def as_complex_matrix(m) -> ComplexMatrix:
    """Coerce to a square complex128 array, raising on bad shapes."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ContractViolationError(f"Expected a square matrix, got shape {arr.shape}")
    return arr


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    return np.conj(m).T


def hermiticity_error(m: ComplexMatrix) -> float:
    """Max-norm distance between m and its conjugate transpose."""
    return float(np.max(np.abs(m - dagger(m))))


def is_unitary(u: ComplexMatrix, tol: float = UNITARY_TOL) -> bool:
    u = as_complex_matrix(u)
    return bool(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0]))) <= tol)


def tensor_product(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """
    Kronecker product a ⊗ b.

    Entry (i*b.dim + k, j*b.dim + l) equals a[i, j] * b[k, l].
    """
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def hermitian_eigensystem(m: ComplexMatrix) -> Tuple[np.ndarray, ComplexMatrix]:
    """
    Eigen-decomposition of a Hermitian matrix with a reproducible basis.

    Returns (eigenvalues, eigenvectors) with eigenvalues sorted descending
    and eigenvectors as orthonormal columns. The output is canonical:

    - eigenvalues within DEGENERACY_TOL form one eigenspace, which is
      re-spanned by Gram-Schmidt over the computational basis vectors
      projected into it (lowest index first), so e.g. I/2 yields the
      computational basis;
    - every column is phase-fixed so its largest-magnitude component is
      real and positive.

    Raises:
        ContractViolationError: if m is not Hermitian within HERMITIAN_TOL
    """
    m = as_complex_matrix(m)
    err = hermiticity_error(m)
    if err > HERMITIAN_TOL:
        raise ContractViolationError(f"Matrix is not Hermitian (deviation {err:.3e})")

    values, vectors = np.linalg.eigh((m + dagger(m)) / 2)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]

    vectors = _respan_degenerate(values, vectors)
    return values, _fix_phases(vectors)


def _eigenspace_clusters(values: np.ndarray):
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or abs(values[i - 1] - values[i]) > DEGENERACY_TOL:
            yield start, i
            start = i


def _respan_degenerate(values: np.ndarray, vectors: ComplexMatrix) -> ComplexMatrix:
    dim = vectors.shape[0]
    out = vectors.copy()
    for start, stop in _eigenspace_clusters(values):
        size = stop - start
        if size == 1:
            continue
        block = vectors[:, start:stop]
        projector = block @ dagger(block)
        basis = []
        for i in range(dim):
            v = projector[:, i].copy()
            for u in basis:
                v -= (np.vdot(u, v)) * u
            norm = np.linalg.norm(v)
            if norm > _SPAN_TOL:
                basis.append(v / norm)
            if len(basis) == size:
                break
        if len(basis) == size:
            out[:, start:stop] = np.column_stack(basis)
        else:
            logger.debug(f"Could not re-span a {size}-fold eigenspace; keeping solver basis")
    return out


def _fix_phases(vectors: ComplexMatrix) -> ComplexMatrix:
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col)))
        out[:, j] = col * (np.conj(col[k]) / abs(col[k]))
    return out


def qubit_eigenvalues(blocks: np.ndarray) -> np.ndarray:
    """
    Eigenvalues of a batch of 2x2 Hermitian matrices, shape (..., 2, 2).

    Returns an array of shape (..., 2) sorted descending. The small
    eigenvalue is taken as det / large to avoid cancellation.
    """
    a = blocks[..., 0, 0].real
    d = blocks[..., 1, 1].real
    b = blocks[..., 0, 1]
    trace = a + d
    det = a * d - (b.real ** 2 + b.imag ** 2)
    disc = np.sqrt(np.maximum((a - d) ** 2 + 4 * (b.real ** 2 + b.imag ** 2), 0.0))
    large = (trace + disc) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(large > 0, det / np.where(large > 0, large, 1.0), (trace - disc) / 2)
    return np.stack([large, small], axis=-1)
