# src/common/validators.py

"""
Operand validators
Every public numerical operation funnels its inputs through these checks.
"""

from typing import Optional

import numpy as np
import numpy.typing as npt

from src.core.base_model import ComplexMatrix, ComplexVector
from src.core.config import settings
from src.core.exceptions import (
    DimensionMismatchError,
    NotAStateError,
    NotHermitianError,
    NotNormalizedError,
)


def as_matrix(m: npt.ArrayLike, field: str = "matrix") -> ComplexMatrix:
    """Coerce to a 2-D complex array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatchError("2-D array", f"{arr.ndim}-D array", field)
    return arr


def as_square(m: npt.ArrayLike, side: Optional[int] = None, field: str = "matrix") -> ComplexMatrix:
    arr = as_matrix(m, field)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError("square matrix", arr.shape, field)
    if side is not None and arr.shape[0] != side:
        raise DimensionMismatchError(f"side {side}", arr.shape[0], field)
    return arr


def as_vector(v: npt.ArrayLike, length: Optional[int] = None, field: str = "vector") -> ComplexVector:
    arr = np.asarray(v, dtype=np.complex128).reshape(-1)
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatchError(f"length {length}", arr.shape[0], field)
    return arr


def hermitian_deviation(m: ComplexMatrix) -> float:
    """max |M[i,j] - conj(M[j,i])|"""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: npt.ArrayLike, tol: Optional[float] = None) -> bool:
    tol = settings.hermiticity_tolerance if tol is None else tol
    return hermitian_deviation(as_square(m)) <= tol


def ensure_hermitian(m: npt.ArrayLike, field: str = "matrix") -> ComplexMatrix:
    """
    Validate Hermiticity with a scale-aware tolerance and return the exactly
    symmetrized matrix.
    """
    arr = as_square(m, field=field)
    tol = settings.hermiticity_tolerance * max(1.0, float(np.linalg.norm(arr)))
    deviation = hermitian_deviation(arr)
    if deviation > tol:
        raise NotHermitianError(deviation, tol)
    return (arr + arr.conj().T) / 2


def psd_floor(m: ComplexMatrix) -> float:
    """Most negative eigenvalue still accepted as PSD for this matrix."""
    return -settings.psd_tolerance * max(1.0, float(np.linalg.norm(m)))


def ensure_normalized(psi: npt.ArrayLike, length: Optional[int] = None) -> ComplexVector:
    vec = as_vector(psi, length, "state vector")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > settings.normalization_tolerance:
        raise NotNormalizedError(norm)
    return vec


def ensure_density(rho: npt.ArrayLike, side: Optional[int] = None) -> ComplexMatrix:
    """
    Validate a density operator: Hermitian, unit trace, PSD within the global floor.
    """
    arr = as_square(rho, side, "density matrix")
    try:
        arr = ensure_hermitian(arr, "density matrix")
    except NotHermitianError as exc:
        raise NotAStateError(f"input is not a density operator: {exc.message}") from exc
    trace = float(np.real(np.trace(arr)))
    if abs(trace - 1.0) > settings.normalization_tolerance * max(1, arr.shape[0]):
        raise NotAStateError(f"input is not a density operator: trace {trace:.12g}")
    lowest = float(np.linalg.eigvalsh(arr)[0])
    if lowest < psd_floor(arr):
        raise NotAStateError(f"input is not a density operator: eigenvalue {lowest:.6g}")
    return arr
