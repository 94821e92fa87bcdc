# src/apps/linalg/service.py

"""
Dense complex linear algebra on bipartite and multipartite index structures

Composite index convention everywhere: i * d_b + k, first factor slowest.
All functions are pure and never modify their operands.
"""

from functools import reduce
from typing import Optional, Sequence, Union

import numpy as np
import numpy.typing as npt
import scipy.linalg

from src.apps.linalg.constants import DEGENERACY_TOLERANCE, JACOBI, LAPACK, PHASE_TOLERANCE, SOLVERS
from src.apps.linalg.exceptions import DimensionMismatchError, InvalidParameterError
from src.apps.linalg.jacobi import jacobi_eigh
from src.apps.linalg.schemas import BipartiteDims, SchmidtForm, SpectralDecomposition
from src.common.enums import Subsystem
from src.common.utils import phase_fix, vector_key
from src.common.validators import as_matrix, as_square, ensure_hermitian, ensure_normalized, psd_floor
from src.core.base_model import ComplexMatrix, ComplexVector, RealVector
from src.core.config import settings

SubsystemLike = Union[Subsystem, str]


# ==============================================================================
# Tensor structure
# ==============================================================================

def kron(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """(A (x) B)[i*rB + k, j*cB + l] = A[i, j] * B[k, l]"""
    return np.kron(as_matrix(a, "A"), as_matrix(b, "B"))


def kron_all(*factors: npt.ArrayLike) -> ComplexMatrix:
    if not factors:
        return np.ones((1, 1), dtype=np.complex128)
    return reduce(kron, factors)


def _bipartite(m: npt.ArrayLike, dims: BipartiteDims) -> ComplexMatrix:
    return as_square(m, dims.side, "bipartite operator")


def _subsystem(which: SubsystemLike) -> Subsystem:
    try:
        return Subsystem(which)
    except ValueError as exc:
        raise InvalidParameterError(f"unknown subsystem {which!r}", "which") from exc


def partial_transpose_multi(
    m: npt.ArrayLike,
    dims: Sequence[int],
    mask: Sequence[bool],
) -> ComplexMatrix:
    """
    Transpose every factor whose mask entry is true.

    Args:
        m: square operator on the product of `dims`
        dims: factor dimensions, slowest first
        mask: one flag per factor
    """
    dims = [int(d) for d in dims]
    if len(mask) != len(dims):
        raise DimensionMismatchError(f"{len(dims)} mask entries", len(mask), "mask")
    side = int(np.prod(dims))
    arr = as_square(m, side, "multipartite operator")

    n = len(dims)
    row_axes = list(range(n))
    col_axes = list(range(n, 2 * n))
    perm = [col_axes[k] if mask[k] else row_axes[k] for k in range(n)]
    perm += [row_axes[k] if mask[k] else col_axes[k] for k in range(n)]
    return arr.reshape(dims + dims).transpose(perm).reshape(side, side)


def partial_transpose(
    m: npt.ArrayLike,
    dims: BipartiteDims,
    which: SubsystemLike = Subsystem.B,
) -> ComplexMatrix:
    """Transpose the indices of the selected factor."""
    mask = [True, False] if _subsystem(which) == Subsystem.A else [False, True]
    _bipartite(m, dims)
    return partial_transpose_multi(m, dims.as_tuple(), mask)


def partial_trace(
    m: npt.ArrayLike,
    dims: BipartiteDims,
    which: SubsystemLike = Subsystem.B,
) -> ComplexMatrix:
    """Trace out the selected factor and return the operator on the other one."""
    arr = _bipartite(m, dims).reshape(dims.d_a, dims.d_b, dims.d_a, dims.d_b)
    if _subsystem(which) == Subsystem.B:
        return np.einsum("ikjk->ij", arr)
    return np.einsum("kikj->ij", arr)


def permute_subsystems(
    m: npt.ArrayLike,
    dims: Sequence[int],
    order: Sequence[int],
) -> ComplexMatrix:
    """
    Reorder tensor factors: factor j of the result is factor order[j] of `m`.
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    if sorted(order) != list(range(n)):
        raise InvalidParameterError(f"{list(order)} is not a permutation of {n} factors", "order")
    side = int(np.prod(dims))
    arr = as_square(m, side, "multipartite operator")
    perm = list(order) + [n + k for k in order]
    return arr.reshape(dims + dims).transpose(perm).reshape(side, side)


# ==============================================================================
# Spectra
# ==============================================================================

def _raw_eigh(h: ComplexMatrix, solver: str) -> tuple[RealVector, ComplexMatrix]:
    if solver == JACOBI:
        return jacobi_eigh(h, settings.jacobi_tolerance, settings.jacobi_max_sweeps)
    return np.linalg.eigh(h)


def _resolve_solver(solver: Optional[str]) -> str:
    solver = settings.eigensolver if solver is None else solver
    if solver not in SOLVERS:
        raise InvalidParameterError(f"unknown eigensolver {solver!r}", "eigensolver")
    return solver


def _canonical_vectors(eigenvalues: RealVector, vectors: ComplexMatrix) -> ComplexMatrix:
    """Phase-fix every column and sort each degenerate cluster lexicographically."""
    fixed = np.column_stack([phase_fix(vectors[:, k], PHASE_TOLERANCE) for k in range(vectors.shape[1])])
    scale = max(1.0, float(np.max(np.abs(eigenvalues)))) if eigenvalues.size else 1.0
    start = 0
    n = eigenvalues.shape[0]
    while start < n:
        stop = start + 1
        while stop < n and eigenvalues[stop] - eigenvalues[stop - 1] <= DEGENERACY_TOLERANCE * scale:
            stop += 1
        if stop - start > 1:
            block = sorted(range(start, stop), key=lambda k: vector_key(fixed[:, k]))
            fixed[:, start:stop] = fixed[:, block]
        start = stop
    return fixed


def eigh(h: npt.ArrayLike, solver: Optional[str] = None) -> SpectralDecomposition:
    """
    Full spectral decomposition of a Hermitian matrix.

    Eigenvalues are ascending. Eigenvectors are phase-fixed (first
    non-negligible entry real positive) and ordered lexicographically inside
    degenerate clusters, so the result is a function of the input alone.

    Raises:
        NotHermitianError: deviation from Hermiticity beyond tolerance
    """
    arr = ensure_hermitian(h)
    eigenvalues, vectors = _raw_eigh(arr, _resolve_solver(solver))
    return SpectralDecomposition(eigenvalues, _canonical_vectors(eigenvalues, vectors))


def eigvalsh(h: npt.ArrayLike, solver: Optional[str] = None) -> RealVector:
    arr = ensure_hermitian(h)
    if _resolve_solver(solver) == LAPACK:
        return np.linalg.eigvalsh(arr)
    return jacobi_eigh(arr, settings.jacobi_tolerance, settings.jacobi_max_sweeps)[0]


def min_eigenpair(h: npt.ArrayLike, solver: Optional[str] = None) -> tuple[float, ComplexVector]:
    """
    Lowest eigenvalue with a phase-fixed eigenvector.
    Used inside every see-saw step, so the LAPACK path asks only for one pair.
    """
    arr = ensure_hermitian(h)
    if _resolve_solver(solver) == LAPACK:
        values, vectors = scipy.linalg.eigh(arr, subset_by_index=[0, 0])
        return float(values[0]), phase_fix(vectors[:, 0], PHASE_TOLERANCE)
    spectrum = eigh(arr, JACOBI)
    return spectrum.min_value, spectrum.min_vector


def min_eigenvalue(h: npt.ArrayLike, solver: Optional[str] = None) -> float:
    return float(eigvalsh(h, solver)[0])


def is_psd(m: npt.ArrayLike, solver: Optional[str] = None) -> bool:
    """lambda_min(M) >= -psd_tolerance * max(1, ||M||_F)"""
    arr = ensure_hermitian(m)
    return min_eigenvalue(arr, solver) >= psd_floor(arr)


def expectation(m: npt.ArrayLike, v: npt.ArrayLike) -> float:
    """Real part of <v|M|v>."""
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    return float(np.real(np.vdot(vec, as_square(m, vec.shape[0]) @ vec)))


# ==============================================================================
# Pure states
# ==============================================================================

def schmidt_decompose(psi: npt.ArrayLike, dims: BipartiteDims) -> SchmidtForm:
    """
    Schmidt decomposition of a normalized bipartite vector through the SVD of
    its d_a x d_b coefficient matrix.

    Raises:
        NotNormalizedError: |psi| differs from 1 beyond tolerance
    """
    vec = ensure_normalized(psi, dims.side)
    u, s, vh = np.linalg.svd(vec.reshape(dims.d_a, dims.d_b))
    k = dims.min_dim
    return SchmidtForm(
        weights=s[:k] ** 2,
        left_basis=u[:, :k],
        right_basis=vh[:k, :].T,
        dims=dims,
    )


def projector(psi: npt.ArrayLike) -> ComplexMatrix:
    """|psi><psi|"""
    vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
    return np.outer(vec, vec.conj())
