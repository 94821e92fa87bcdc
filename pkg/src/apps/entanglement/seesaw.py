# src/apps/entanglement/seesaw.py

"""
See-saw searches

Every search alternates closed-form minimal-eigenvector updates over the
factors of a product ansatz. Restarts draw from independent generators
spawned from the config seed and are merged on (value, witness), so the
outcome does not depend on the number of workers.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src.apps.channels.models import Channel
from src.apps.channels.service import apply, dual_map
from src.apps.entanglement.constants import WITNESS_KEY_DECIMALS, WITNESS_SCHMIDT_RANK
from src.apps.entanglement.exceptions import DimensionMismatchError
from src.apps.entanglement.schemas import (
    DistillationWitness,
    OutputDistillationResult,
    SeesawConfig,
    WorstCaseResult,
)
from src.apps.linalg.schemas import BipartiteDims
from src.apps.linalg.service import expectation, min_eigenpair, partial_transpose, projector, schmidt_decompose
from src.common.utils import haar_random_state, parallel_map, random_isometry_columns, spawn_generators, vector_key
from src.common.validators import ensure_density
from src.core.base_model import ComplexMatrix, ComplexVector
from src.core.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Trial:
    """Outcome of one restart."""
    value: float
    vectors: tuple[ComplexVector, ...]
    converged: bool
    iterations: int

    @property
    def key(self) -> tuple:
        return (self.value,) + tuple(vector_key(v, WITNESS_KEY_DECIMALS) for v in self.vectors)


def settled(previous: float, current: float, tol: float) -> bool:
    return abs(previous - current) <= tol * max(1.0, abs(current))


def run_restarts(trial: Callable[[int, np.random.Generator], Trial], cfg: SeesawConfig) -> tuple[Trial, int]:
    """Run every restart and return the best trial and the number that converged."""
    generators = spawn_generators(cfg.seed, cfg.restarts)
    trials = parallel_map(lambda k: trial(k, generators[k]), range(cfg.restarts), cfg.workers)
    best = min(trials, key=lambda t: t.key)
    return best, sum(t.converged for t in trials)


# ==============================================================================
# Product vectors
# ==============================================================================

def minimize_product_value(om: ComplexMatrix, cut: BipartiteDims, cfg: SeesawConfig) -> tuple[Trial, int]:
    """
    Minimize <a (x) b|Omega|a (x) b> over unit a, b.

    Restart 0 starts from the leading Schmidt vector of Omega's lowest
    eigenvector; the others from Haar-random b.
    """
    om4 = om.reshape(cut.d_a, cut.d_b, cut.d_a, cut.d_b)

    def trial(k: int, rng: np.random.Generator) -> Trial:
        if k == 0:
            _, lowest = min_eigenpair(om)
            b = schmidt_decompose(lowest, cut).right_basis[:, 0]
        else:
            b = haar_random_state(cut.d_b, rng)
        value = math.inf
        a = None
        for iteration in range(1, cfg.max_iters + 1):
            _, a = min_eigenpair(np.einsum("ikjl,k,l->ij", om4, b.conj(), b))
            current, b = min_eigenpair(np.einsum("ikjl,i,j->kl", om4, a.conj(), a))
            if settled(value, current, cfg.tol):
                return Trial(current, (a, b), True, iteration)
            value = current
        return Trial(value, (a, b), False, cfg.max_iters)

    best, converged = run_restarts(trial, cfg)
    logger.debug(
        "product minimization finished",
        value=best.value,
        converged=converged,
        restarts=cfg.restarts,
    )
    return best, converged


# ==============================================================================
# Schmidt-rank-two vectors
# ==============================================================================

def rank_two_descent(
    m: ComplexMatrix,
    dims: BipartiteDims,
    right: ComplexMatrix,
    max_iters: int,
    tol: float,
) -> tuple[float, ComplexVector, ComplexMatrix, bool]:
    """
    Minimize <psi|M|psi> over unit psi of Schmidt rank <= r, psi = vec(A Z),
    alternating the left and right factor. Each half-step is the lowest
    eigenvector of M compressed to span{e_i (x) right_k} or span{left_k (x) e_j}.

    Args:
        m: Hermitian operator on d_a * d_b
        dims: bipartition
        right: d_b x r matrix with orthonormal columns, the starting right factor
        max_iters: full A/B sweeps
        tol: relative change at which the descent stops

    Returns:
        (value, psi, final right factor, converged)
    """
    d_a, d_b = dims.d_a, dims.d_b
    r = right.shape[1]
    eye_a, eye_b = np.eye(d_a), np.eye(d_b)
    value = math.inf
    psi = None
    for _ in range(max_iters):
        lift = np.kron(eye_a, right)
        _, x = min_eigenpair(lift.conj().T @ m @ lift)
        u, _, _ = np.linalg.svd(x.reshape(d_a, r) @ right.T, full_matrices=False)
        left = u[:, :r]

        lift = np.kron(left, eye_b)
        current, z = min_eigenpair(lift.conj().T @ m @ lift)
        coefficients = left @ z.reshape(r, d_b)
        _, _, vh = np.linalg.svd(coefficients, full_matrices=False)
        right = vh[:r].T
        psi = coefficients.reshape(-1)
        if settled(value, current, tol):
            return current, psi, right, True
        value = current
    return value, psi, right, False


def _witness_rank(dims: BipartiteDims) -> int:
    return min(WITNESS_SCHMIDT_RANK, dims.d_a, dims.d_b)


def _warm_right_factor(m: ComplexMatrix, dims: BipartiteDims) -> ComplexMatrix:
    _, lowest = min_eigenpair(m)
    return schmidt_decompose(lowest, dims).right_basis[:, : _witness_rank(dims)]


def _distillation_witness(m: ComplexMatrix, psi: ComplexVector, dims: BipartiteDims) -> DistillationWitness:
    psi = psi / np.linalg.norm(psi)
    return DistillationWitness(
        vector=psi,
        value=expectation(m, psi),
        dims=dims,
        schmidt_weights=schmidt_decompose(psi, dims).weights,
    )


def refute_one_copy_undistillability(
    rho: ComplexMatrix,
    dims: BipartiteDims,
    cfg: Optional[SeesawConfig] = None,
) -> Optional[DistillationWitness]:
    """
    Search a Schmidt-rank <= 2 vector psi with <psi|PT_B(rho)|psi> < -tol.

    A returned witness is re-evaluated directly on PT_B(rho). None means the
    search found nothing, which is evidence and not a certificate.

    Raises:
        NotAStateError: rho is not a density operator on d_a * d_b
    """
    cfg = cfg or SeesawConfig()
    rho = ensure_density(rho, dims.side)
    m = partial_transpose(rho, dims)
    lowest, _ = min_eigenpair(m)
    if lowest >= -cfg.tol:
        logger.debug("state is PPT, no distillation witness exists", min_pt_eigenvalue=lowest)
        return None

    r = _witness_rank(dims)
    warm = _warm_right_factor(m, dims)

    def trial(k: int, rng: np.random.Generator) -> Trial:
        right = warm if k == 0 else random_isometry_columns(dims.d_b, r, rng)
        value, psi, _, converged = rank_two_descent(m, dims, right, cfg.max_iters, cfg.tol)
        return Trial(value, (psi,), converged, 0)

    best, converged = run_restarts(trial, cfg)
    witness = _distillation_witness(m, best.vectors[0], dims)
    logger.debug(
        "one-copy distillation search finished",
        value=witness.value,
        min_pt_eigenvalue=lowest,
        converged=converged,
        restarts=cfg.restarts,
    )
    return witness if witness.value < -cfg.tol else None


# ==============================================================================
# Channel outputs
# ==============================================================================

def _channel_cut(ch: Channel, cut: Optional[BipartiteDims]) -> BipartiteDims:
    cut = cut or ch.dims
    if cut.side != ch.d:
        raise DimensionMismatchError(ch.d, f"{cut.d_a}x{cut.d_b}", "cut")
    return cut


def worst_case_output_pt(
    ch: Channel,
    cut: Optional[BipartiteDims] = None,
    cfg: Optional[SeesawConfig] = None,
    start: Optional[ComplexVector] = None,
) -> WorstCaseResult:
    """
    Approximate min over pure inputs psi of lambda_min(PT_B(Phi[psi psi^dag])).

    Alternates the lowest PT eigenvector w of the output with the input
    psi minimizing <psi|Phi^dag[PT_B(w w^dag)]|psi>. Pure inputs suffice since
    lambda_min(PT_B(.)) is concave and Phi is linear.

    Args:
        ch: map on A (x) B
        cut: bipartition; defaults to the channel's subsystems
        cfg: search budget and seed
        start: optional input replacing restart 0's random start
    """
    cfg = cfg or SeesawConfig()
    cut = _channel_cut(ch, cut)
    dual = dual_map(ch)

    def evaluate(psi: ComplexVector) -> tuple[float, ComplexVector]:
        return min_eigenpair(partial_transpose(apply(ch, projector(psi)), cut))

    def trial(k: int, rng: np.random.Generator) -> Trial:
        psi = start if (k == 0 and start is not None) else haar_random_state(ch.d, rng)
        value, w = evaluate(psi)
        for iteration in range(1, cfg.max_iters + 1):
            _, psi = min_eigenpair(apply(dual, partial_transpose(projector(w), cut)))
            current, w = evaluate(psi)
            if settled(value, current, cfg.tol):
                return Trial(current, (psi, w), True, iteration)
            value = current
        return Trial(value, (psi, w), False, cfg.max_iters)

    best, converged = run_restarts(trial, cfg)
    logger.debug(
        "worst-case output search finished",
        channel=ch.name,
        min_value=best.value,
        converged=converged,
        restarts=cfg.restarts,
        iterations=best.iterations,
    )
    return WorstCaseResult(
        min_value=best.value,
        worst_input=best.vectors[0],
        output_witness=best.vectors[1],
        converged_restarts=converged,
        restarts=cfg.restarts,
    )


def refute_output_distillability(
    ch: Channel,
    cut: Optional[BipartiteDims] = None,
    cfg: Optional[SeesawConfig] = None,
    start: Optional[ComplexVector] = None,
) -> Optional[OutputDistillationResult]:
    """
    Search a pure input whose output has a one-copy distillation witness:
    the outer step picks the input minimizing <psi|Phi^dag[PT_B(w w^dag)]|psi>,
    the inner step runs the rank-two descent on PT_B of the output, warm
    started from the previous witness.
    """
    cfg = cfg or SeesawConfig()
    cut = _channel_cut(ch, cut)
    dual = dual_map(ch)
    r = _witness_rank(cut)

    def output_pt(psi: ComplexVector) -> ComplexMatrix:
        return partial_transpose(apply(ch, projector(psi)), cut)

    def trial(k: int, rng: np.random.Generator) -> Trial:
        psi = start if (k == 0 and start is not None) else haar_random_state(ch.d, rng)
        m = output_pt(psi)
        right = _warm_right_factor(m, cut) if k == 0 else random_isometry_columns(cut.d_b, r, rng)
        value, w, right, _ = rank_two_descent(m, cut, right, cfg.max_iters, cfg.tol)
        for iteration in range(1, cfg.max_iters + 1):
            _, psi = min_eigenpair(apply(dual, partial_transpose(projector(w), cut)))
            current, w, right, _ = rank_two_descent(output_pt(psi), cut, right, cfg.max_iters, cfg.tol)
            if settled(value, current, cfg.tol):
                return Trial(current, (psi, w), True, iteration)
            value = current
        return Trial(value, (psi, w), False, cfg.max_iters)

    best, converged = run_restarts(trial, cfg)
    psi, w = best.vectors
    witness = _distillation_witness(output_pt(psi), w, cut)
    logger.debug(
        "output distillation search finished",
        channel=ch.name,
        value=witness.value,
        converged=converged,
        restarts=cfg.restarts,
    )
    if witness.value < -cfg.tol:
        return OutputDistillationResult(worst_input=psi, witness=witness)
    return None
