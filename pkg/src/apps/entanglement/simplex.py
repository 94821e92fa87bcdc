# src/apps/entanglement/simplex.py

"""
Worst-case input of the depolarizing pair over Schmidt weights

Phi_q (x) Phi_q commutes with local unitaries U (x) conj(U), so the PT spectrum
of its output on a pure input depends only on the input's Schmidt weights.
The search runs over the probability simplex: a grid of nonincreasing weight
vectors, then Nelder-Mead from the best grid points.
"""

from typing import Iterator, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from src.apps.channels.families import depolarizing_choi_min_eigenvalue, depolarizing_cp_range
from src.apps.entanglement.constants import (
    SIMPLEX_MAX_ITERATIONS_PER_DIM,
    SIMPLEX_REFINEMENT_STARTS,
    SIMPLEX_VALUE_TOLERANCE,
)
from src.apps.entanglement.exceptions import InvalidParameterError, NotCompletelyPositiveError
from src.apps.entanglement.schemas import RestrictedWorstCase, SimplexPoint
from src.apps.linalg.schemas import BipartiteDims
from src.apps.linalg.service import kron, min_eigenvalue, partial_transpose, projector
from src.core.base_model import ComplexMatrix
from src.core.config import settings
from src.core.logging import get_logger

logger = get_logger(__name__)


def schmidt_diagonal_state(weights: Sequence[float]) -> np.ndarray:
    """sum_i sqrt(w_i) |i>|i>"""
    w = np.asarray(weights, dtype=np.float64)
    d = w.shape[0]
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[np.arange(d) * (d + 1)] = np.sqrt(np.clip(w, 0.0, None))
    return psi


def depolarizing_pair_output(d: int, q: float, weights: Sequence[float]) -> ComplexMatrix:
    """
    (Phi_q (x) Phi_q)[psi psi^dag] for psi = sum_i sqrt(w_i)|ii>:
    q^2 psi psi^dag + q(1-q)(rho (x) I/d + I/d (x) rho) + (1-q)^2 I/d^2, rho = diag(w).
    """
    rho = np.diag(np.asarray(weights, dtype=np.complex128))
    eye = np.eye(d)
    return (
        q * q * projector(schmidt_diagonal_state(weights))
        + q * (1.0 - q) * (kron(rho, eye / d) + kron(eye / d, rho))
        + (1.0 - q) ** 2 * np.eye(d * d) / d**2
    )


def restricted_objective(d: int, q: float, weights: Sequence[float]) -> float:
    """lambda_min(PT_B) of the depolarizing-pair output on a Schmidt-diagonal input."""
    return min_eigenvalue(partial_transpose(depolarizing_pair_output(d, q, weights), BipartiteDims.of(d, d)))


def simplex_grid(d: int, step: float) -> Iterator[tuple[float, ...]]:
    """
    Nonincreasing weight vectors with entries on multiples of `step`, in
    descending lexicographic order.
    """
    total = int(round(1.0 / step))
    if total < 1 or abs(total * step - 1.0) > 1e-9:
        raise InvalidParameterError(f"grid step must divide 1, got {step}", "step")

    def partitions(remaining: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
        if parts == 1:
            if remaining <= cap:
                yield (remaining,)
            return
        lowest = -(-remaining // parts)
        for first in range(min(remaining, cap), lowest - 1, -1):
            for rest in partitions(remaining - first, parts - 1, first):
                yield (first,) + rest

    for counts in partitions(total, d, total):
        yield tuple(c / total for c in counts)


def _normalized(x: np.ndarray) -> np.ndarray:
    squares = np.asarray(x, dtype=np.float64) ** 2
    norm = squares.sum()
    if norm == 0.0:
        return np.full(squares.shape, 1.0 / squares.shape[0])
    return squares / norm


def _check_cp(d: int, q: float) -> None:
    low, high = depolarizing_cp_range(d)
    if not low - settings.psd_tolerance <= q <= high + settings.psd_tolerance:
        raise NotCompletelyPositiveError(depolarizing_choi_min_eigenvalue(d, q))


def schmidt_restricted_worst_case(
    d: int,
    q: float,
    grid_step: Optional[float] = None,
    diameter: Optional[float] = None,
) -> RestrictedWorstCase:
    """
    Minimize lambda_min(PT_B((Phi_q (x) Phi_q)[psi psi^dag])) over Schmidt weights.

    Args:
        d: local dimension
        q: depolarizing parameter
        grid_step: simplex grid resolution (settings.simplex_grid_step)
        diameter: Nelder-Mead stopping diameter (settings.simplex_diameter)

    Raises:
        NotCompletelyPositiveError: q outside [-1/(d^2-1), 1]
    """
    _check_cp(d, q)
    grid_step = settings.simplex_grid_step if grid_step is None else grid_step
    diameter = settings.simplex_diameter if diameter is None else diameter

    grid = tuple(SimplexPoint(w, restricted_objective(d, q, w)) for w in simplex_grid(d, grid_step))
    ranked = sorted(grid, key=lambda p: (p.value, tuple(-x for x in p.weights)))
    best_value, best_weights = ranked[0].value, ranked[0].weights

    for point in ranked[:SIMPLEX_REFINEMENT_STARTS]:
        result = minimize(
            lambda x: restricted_objective(d, q, _normalized(x)),
            x0=np.sqrt(point.weights),
            method="Nelder-Mead",
            options={
                "xatol": diameter,
                "fatol": SIMPLEX_VALUE_TOLERANCE,
                "maxiter": SIMPLEX_MAX_ITERATIONS_PER_DIM * d,
                "maxfev": SIMPLEX_MAX_ITERATIONS_PER_DIM * d * 2,
            },
        )
        weights = tuple(float(w) for w in np.sort(_normalized(result.x))[::-1])
        value = restricted_objective(d, q, weights)
        if value < best_value:
            best_value, best_weights = value, weights

    logger.debug(
        "restricted worst case found",
        d=d,
        q=q,
        min_value=best_value,
        weights=[round(w, 6) for w in best_weights],
        grid_points=len(grid),
    )
    return RestrictedWorstCase(d=d, q=q, min_value=best_value, weights=best_weights, grid=grid)
