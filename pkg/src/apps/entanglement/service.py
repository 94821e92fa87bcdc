# src/apps/entanglement/service.py

"""
State-level entanglement tests: PPT, low-dimension separability,
block-positivity and the reference states used across the package.
"""

from typing import Optional

import numpy as np
import numpy.typing as npt

from src.apps.entanglement.constants import PPT_EXACT_MAX_PRODUCT
from src.apps.entanglement.exceptions import InvalidParameterError, SeparabilityUndecidableError
from src.apps.entanglement.schemas import BlockPositivityVerdict, PptReport, SeesawConfig
from src.apps.entanglement.seesaw import minimize_product_value
from src.apps.linalg.schemas import BipartiteDims
from src.apps.linalg.service import expectation, kron, min_eigenpair, partial_transpose, projector
from src.common.enums import BlockPositivityTag, Subsystem
from src.common.validators import as_square, as_vector, ensure_density, ensure_hermitian, psd_floor
from src.core.base_model import ComplexMatrix, ComplexVector
from src.core.logging import get_logger

logger = get_logger(__name__)


# ==============================================================================
# Reference states
# ==============================================================================

def maximally_entangled(d_a: int, d_b: Optional[int] = None) -> ComplexVector:
    """sum_{i < min(d_a, d_b)} |i>|i> / sqrt(min(d_a, d_b))"""
    d_b = d_a if d_b is None else d_b
    k = min(d_a, d_b)
    psi = np.zeros(d_a * d_b, dtype=np.complex128)
    for i in range(k):
        psi[i * d_b + i] = 1.0
    return psi / np.sqrt(k)


def isotropic_state(d: int, q: float) -> ComplexMatrix:
    """q |Psi+><Psi+| + (1 - q) I / d^2, the Choi state of the depolarizing channel."""
    return q * projector(maximally_entangled(d)) + (1.0 - q) * np.eye(d * d) / d**2


def isotropic_min_pt_eigenvalue(d: int, q: float) -> float:
    """(1 - q)/d^2 - q/d, from the antisymmetric eigenspace of PT(Psi+) = SWAP/d."""
    return min((1.0 - q) / d**2 - q / d, (1.0 - q) / d**2 + q / d)


def werner_state(p: float) -> ComplexMatrix:
    """Two-qubit singlet mixture p |Psi-><Psi-| + (1 - p) I / 4."""
    if not -1.0 / 3.0 <= p <= 1.0:
        raise InvalidParameterError(f"Werner weight must lie in [-1/3, 1], got {p}", "p")
    singlet = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)
    return p * projector(singlet) + (1.0 - p) * np.eye(4) / 4


# ==============================================================================
# PPT and separability
# ==============================================================================

def pt_min_eigenpair(
    m: npt.ArrayLike,
    dims: BipartiteDims,
    which: Subsystem = Subsystem.B,
) -> tuple[float, ComplexVector]:
    """Lowest eigenpair of the partial transpose of any Hermitian operator."""
    return min_eigenpair(partial_transpose(ensure_hermitian(m), dims, which))


def ppt_report(rho: npt.ArrayLike, dims: BipartiteDims, which: Subsystem = Subsystem.B) -> PptReport:
    """
    Raises:
        NotAStateError: rho is not Hermitian, unit trace and PSD
    """
    state = ensure_density(rho, dims.side)
    lowest, witness = pt_min_eigenpair(state, dims, which)
    return PptReport(
        min_pt_eigenvalue=lowest,
        witness=witness,
        is_ppt=lowest >= psd_floor(state),
        dims=dims,
    )


def is_separable_low_dim(rho: npt.ArrayLike, dims: BipartiteDims) -> bool:
    """
    Exact separability for d_a * d_b <= 6, where PPT and separability coincide.

    Raises:
        SeparabilityUndecidableError: d_a * d_b > 6
    """
    if dims.side > PPT_EXACT_MAX_PRODUCT:
        raise SeparabilityUndecidableError(dims.d_a, dims.d_b)
    return ppt_report(rho, dims).is_ppt


# ==============================================================================
# Block positivity
# ==============================================================================

def product_value(om: npt.ArrayLike, a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """<a (x) b|Omega|a (x) b>"""
    vec = kron(as_vector(a).reshape(-1, 1), as_vector(b).reshape(-1, 1)).reshape(-1)
    return expectation(om, vec)


def block_positivity(
    om: npt.ArrayLike,
    cut: BipartiteDims,
    cfg: Optional[SeesawConfig] = None,
) -> BlockPositivityVerdict:
    """
    Decide <a (x) b|Omega|a (x) b> >= 0 for all product vectors, as far as possible.

    CERTIFIED_PSD when Omega itself is PSD. Otherwise a see-saw minimizes the
    product value: REFUTED with the product vector when it drops below -tol,
    NUMERICALLY_BLOCK_POSITIVE when every restart converged above, UNKNOWN
    when some did not. Never a proof of block-positivity.

    Raises:
        NotHermitianError: Omega is not Hermitian
        DimensionMismatchError: Omega does not have side d_a * d_b
    """
    cfg = cfg or SeesawConfig()
    matrix = ensure_hermitian(as_square(om, cut.side, "block operator"))
    lowest, _ = min_eigenpair(matrix)
    if lowest >= psd_floor(matrix):
        return BlockPositivityVerdict(BlockPositivityTag.CERTIFIED_PSD, lowest)

    best, converged = minimize_product_value(matrix, cut, cfg)
    a, b = best.vectors
    value = product_value(matrix, a, b)
    if value < -cfg.tol:
        tag = BlockPositivityTag.REFUTED
    elif converged == cfg.restarts:
        tag = BlockPositivityTag.NUMERICALLY_BLOCK_POSITIVE
    else:
        tag = BlockPositivityTag.UNKNOWN
    logger.debug("block positivity decided", tag=tag.value, value=value, min_eigenvalue=lowest)
    return BlockPositivityVerdict(tag, value, a=a, b=b, converged_restarts=converged)
