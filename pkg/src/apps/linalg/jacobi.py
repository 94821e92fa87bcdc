# src/apps/linalg/jacobi.py

"""
Cyclic Jacobi eigensolver for dense complex Hermitian matrices
"""

import numpy as np

from src.apps.linalg.exceptions import NumericalFailureError
from src.core.base_model import ComplexMatrix, RealVector
from src.core.logging import get_logger

logger = get_logger(__name__)


def _off_diagonal_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """
    Unitary U with (U^dag [[app, apq], [conj(apq), aqq]] U) diagonal.

    The phase of apq is absorbed first, leaving a real symmetric 2x2 block
    that the usual small-angle rotation annihilates.
    """
    magnitude = abs(apq)
    phase = apq / magnitude
    tau = (aqq - app) / (2.0 * magnitude)
    if tau == 0.0:
        t = 1.0
    else:
        t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)


def jacobi_eigh(
    h: ComplexMatrix,
    tolerance: float = 1e-14,
    max_sweeps: int = 100,
) -> tuple[RealVector, ComplexMatrix]:
    """
    Diagonalize a Hermitian matrix by cyclic sweeps of 2x2 rotations.

    Args:
        h: Hermitian matrix (not validated here)
        tolerance: relative off-diagonal Frobenius norm at which sweeping stops
        max_sweeps: sweep cap

    Returns:
        (eigenvalues ascending, eigenvectors as columns)

    Raises:
        NumericalFailureError: off-diagonal mass above tolerance after max_sweeps
    """
    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = tolerance * max(1.0, float(np.linalg.norm(a)))
    skip = threshold / max(n, 1)

    sweeps = 0
    off = _off_diagonal_norm(a)
    while off > threshold:
        if sweeps >= max_sweeps:
            raise NumericalFailureError(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off:.3e})"
            )
        rotations = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                rotations += 1
                u = _rotation(a[p, p].real, a[q, q].real, apq)
                pair = [p, q]
                a[:, pair] = a[:, pair] @ u
                a[pair, :] = u.conj().T @ a[pair, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, pair] = v[:, pair] @ u
        sweeps += 1
        off = _off_diagonal_norm(a)
        # every remaining entry is below skip, so off <= threshold already
        if rotations == 0:
            break

    logger.debug("jacobi converged", size=n, sweeps=sweeps, off_diagonal=off)

    eigenvalues = np.real(np.diag(a))
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]
