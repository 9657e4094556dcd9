"""
Small dense Hilbert-space toolkit: states, partial traces, entropies,
eigensystems and qubit measurements.
"""

from .linalg import ComplexMatrix, hermitian_eigensystem, tensor_product
from .measurement import (
    BlochMeasurement,
    MeasurementSide,
    Outcome,
    bloch_projectors,
    dephase_in_bases,
    measure_subsystem,
)
from .states import DensityMatrix, StateVector, partial_trace, von_neumann_entropy

__all__ = [
    "ComplexMatrix",
    "hermitian_eigensystem",
    "tensor_product",
    "BlochMeasurement",
    "MeasurementSide",
    "Outcome",
    "bloch_projectors",
    "dephase_in_bases",
    "measure_subsystem",
    "DensityMatrix",
    "StateVector",
    "partial_trace",
    "von_neumann_entropy",
]
