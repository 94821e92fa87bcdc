# src/apps/channels/service.py

"""
Choi calculus

Omega = (Phi (x) Id)[|Psi+><Psi+|] with |Psi+> = d^-1/2 sum_i |i>|i>, stored
with unit trace. Phi[X] = d tr_S'[Omega (I (x) X^T)], the transpose taken in
the computational basis.
"""

from typing import Optional, Sequence, Union

import numpy as np
import numpy.typing as npt

from src.apps.channels.exceptions import (
    DimensionMismatchError,
    MissingRepresentationError,
    NotCompletelyPositiveError,
    NotTracePreservingError,
)
from src.apps.channels.models import Channel, ChoiOperator, CompositeChoi
from src.apps.linalg.service import eigh, is_psd, kron, partial_trace
from src.common.enums import ApplyPath, Subsystem
from src.common.validators import as_square, psd_floor
from src.core.base_model import ComplexMatrix
from src.core.config import settings
from src.core.logging import get_logger

logger = get_logger(__name__)

KrausLike = Union[npt.ArrayLike, Sequence[npt.ArrayLike]]


# ==============================================================================
# Construction
# ==============================================================================

def _kraus_array(kraus: KrausLike) -> np.ndarray:
    arr = np.asarray(kraus, dtype=np.complex128)
    if arr.ndim == 2:
        arr = arr[np.newaxis]
    if arr.ndim != 3 or arr.shape[0] == 0:
        raise DimensionMismatchError("non-empty list of matrices", arr.shape, "kraus")
    return arr


def _choi_matrix(kraus: np.ndarray) -> ComplexMatrix:
    """(1/d) sum_k vec(K_k) vec(K_k)^dag with row-major vec."""
    d_in = kraus.shape[2]
    vecs = kraus.reshape(kraus.shape[0], -1)
    return (vecs.T @ vecs.conj()) / d_in


def trace_preservation_deviation(kraus: np.ndarray) -> float:
    """max |sum_k K_k^dag K_k - I|"""
    total = np.einsum("kmi,kmj->ij", kraus.conj(), kraus)
    return float(np.max(np.abs(total - np.eye(kraus.shape[2]))))


def channel_from_kraus(
    kraus: KrausLike,
    subsystems: Optional[tuple[int, int]] = None,
    name: str = "channel",
    require_tp: bool = True,
) -> Channel:
    """
    Build a channel from Kraus operators, computing its Choi operator eagerly.

    Raises:
        NotTracePreservingError: sum K^dag K != I and `require_tp`
    """
    arr = _kraus_array(kraus)
    if require_tp:
        deviation = trace_preservation_deviation(arr)
        if deviation > settings.normalization_tolerance * max(1, arr.shape[2]):
            raise NotTracePreservingError(deviation)
    d_out, d_in = arr.shape[1], arr.shape[2]
    choi = ChoiOperator(_choi_matrix(arr), d_out, d_in)
    return Channel(d_in, d_out, choi, kraus=arr, subsystems=subsystems, name=name)


def channel_from_choi(
    matrix: npt.ArrayLike,
    d: int,
    subsystems: Optional[tuple[int, int]] = None,
    name: str = "channel",
) -> Channel:
    """
    Build a map from its Choi operator. Kraus operators are extracted when the
    Choi is PSD; otherwise the map is kept as a Hermiticity-preserving linear map.
    """
    choi = ChoiOperator(as_square(matrix, d * d, "choi"), d, d)
    kraus = None
    if is_psd(choi.matrix):
        kraus = _kraus_from_matrix(choi)
    return Channel(d, d, choi, kraus=kraus, subsystems=subsystems, name=name)


def choi_from_kraus(ch: Channel) -> ChoiOperator:
    """
    Choi operator recomputed from the Kraus list.

    Raises:
        MissingRepresentationError: the channel carries no Kraus operators
    """
    if ch.kraus is None:
        raise MissingRepresentationError("Kraus")
    return ChoiOperator(_choi_matrix(ch.kraus), ch.d_out, ch.d_in)


def _kraus_from_matrix(om: ChoiOperator) -> np.ndarray:
    scaled = om.d_ref * om.matrix
    spectrum = eigh(scaled)
    if spectrum.min_value < psd_floor(scaled):
        raise NotCompletelyPositiveError(spectrum.min_value / om.d_ref)
    cutoff = settings.rank_tolerance * max(1.0, float(np.max(np.abs(spectrum.eigenvalues))))
    keep = np.flatnonzero(spectrum.eigenvalues > cutoff)[::-1]
    if keep.size == 0:
        return np.zeros((1, om.d_out, om.d_ref), dtype=np.complex128)
    kraus = np.stack([
        np.sqrt(spectrum.eigenvalues[k]) * spectrum.eigenvectors[:, k].reshape(om.d_out, om.d_ref)
        for k in keep
    ])
    logger.debug("kraus operators extracted", rank=int(keep.size), d=om.d_ref)
    return kraus


def kraus_from_choi(om: ChoiOperator, name: str = "channel") -> Channel:
    """
    Kraus operators sqrt(lambda_k) * unvec(v_k) from the spectral decomposition
    of d * Omega, one per eigenvalue above the rank tolerance.

    Raises:
        NotCompletelyPositiveError: Omega has an eigenvalue below the PSD floor
    """
    kraus = _kraus_from_matrix(om)
    return Channel(om.d_ref, om.d_out, om, kraus=kraus, name=name)


# ==============================================================================
# Application
# ==============================================================================

def _apply_kraus(kraus: np.ndarray, x: ComplexMatrix) -> ComplexMatrix:
    return np.sum(kraus @ x @ kraus.conj().transpose(0, 2, 1), axis=0)


def _apply_choi(om: ChoiOperator, x: ComplexMatrix) -> ComplexMatrix:
    return om.d_ref * np.einsum("minl,il->mn", om.tensor, x)


def _apply_factors(ch: Channel, x: ComplexMatrix) -> ComplexMatrix:
    first, second = ch.factors
    d_a, d_b = first.d, second.d
    x4 = x.reshape(d_a, d_b, d_a, d_b)
    y = d_a * np.einsum("minl,ijlr->mjnr", first.choi.tensor, x4)
    z = d_b * np.einsum("pjqr,mjnr->mpnq", second.choi.tensor, y)
    return z.reshape(ch.d_out, ch.d_out)


def apply(ch: Channel, x: npt.ArrayLike, path: ApplyPath = ApplyPath.AUTO) -> ComplexMatrix:
    """
    Phi[X].

    Args:
        ch: the map
        x: operator on the input space
        path: AUTO uses local factors when the map is a tensor product, the
            Kraus list when present and the Choi contraction otherwise

    Raises:
        DimensionMismatchError: x does not have side d_in
        MissingRepresentationError: KRAUS path requested without Kraus operators
    """
    arr = as_square(x, ch.d_in, "input operator")
    path = ApplyPath(path)
    if path == ApplyPath.CHOI:
        return _apply_choi(ch.choi, arr)
    if path == ApplyPath.KRAUS:
        if ch.kraus is None:
            raise MissingRepresentationError("Kraus")
        return _apply_kraus(ch.kraus, arr)
    if len(ch.factors) == 2:
        return _apply_factors(ch, arr)
    if ch.kraus is not None:
        return _apply_kraus(ch.kraus, arr)
    return _apply_choi(ch.choi, arr)


def apply_dual(ch: Channel, y: npt.ArrayLike) -> ComplexMatrix:
    """Phi^dag[Y]"""
    return apply(dual_map(ch), y)


# ==============================================================================
# Products, composition, duals
# ==============================================================================

def composite_choi(ch1: Channel, ch2: Channel) -> CompositeChoi:
    """
    Choi of ch1 (x) ch2 on A (x) B: the kron of the factor Chois, in A, A', B, B'
    order, permuted to A, B, A', B'.
    """
    return CompositeChoi.from_local_blocks(kron(ch1.choi.matrix, ch2.choi.matrix), ch1.d, ch2.d)


def local_blocks(composite: CompositeChoi) -> ComplexMatrix:
    return composite.local_blocks()


def tensor(ch1: Channel, ch2: Channel, name: Optional[str] = None) -> Channel:
    """
    ch1 (x) ch2 acting on A (x) B with A the input of ch1.

    The Kraus list (pairwise kron) is materialized only when both factors have one.
    """
    d_a, d_b = ch1.d, ch2.d
    composite = composite_choi(ch1, ch2)
    kraus = None
    if ch1.kraus is not None and ch2.kraus is not None:
        kraus = np.einsum("aij,bkl->abikjl", ch1.kraus, ch2.kraus).reshape(
            ch1.kraus.shape[0] * ch2.kraus.shape[0], d_a * d_b, d_a * d_b
        )
    d = d_a * d_b
    return Channel(
        d,
        d,
        ChoiOperator(composite.matrix, d, d),
        kraus=kraus,
        subsystems=(d_a, d_b),
        factors=(ch1, ch2),
        name=name or f"{ch1.name}(x){ch2.name}",
    )


def compose_star(om_phi: ChoiOperator, om_xi: ChoiOperator) -> ChoiOperator:
    """
    Choi of Phi o Xi directly from the two Choi operators:
    Omega_{Phi o Xi}[m,k,n,l] = d * sum_{i,j} Omega_Phi[m,i,n,j] * Omega_Xi[i,k,j,l].

    Raises:
        DimensionMismatchError: the two maps act on different dimensions
    """
    if (om_phi.d_out, om_phi.d_ref) != (om_xi.d_out, om_xi.d_ref):
        raise DimensionMismatchError(om_phi.d_ref, om_xi.d_ref, "compose_star")
    d = om_phi.d_ref
    product = d * np.einsum("minj,ikjl->mknl", om_phi.tensor, om_xi.tensor)
    return ChoiOperator(product.reshape(d * d, d * d), d, d)


def compose(outer: Channel, inner: Channel, name: Optional[str] = None) -> Channel:
    """
    outer o inner. Kraus set {K_i L_j} when both maps have Kraus operators,
    the star product of their Chois otherwise.
    """
    if outer.d != inner.d:
        raise DimensionMismatchError(inner.d, outer.d, "compose")
    name = name or f"{outer.name}o{inner.name}"
    subsystems = outer.subsystems if outer.subsystems == inner.subsystems else None
    if len(outer.factors) == 2 and len(inner.factors) == 2 and subsystems is not None:
        return tensor(
            compose(outer.factors[0], inner.factors[0]),
            compose(outer.factors[1], inner.factors[1]),
            name=name,
        )
    if outer.kraus is not None and inner.kraus is not None:
        kraus = np.einsum("imk,jkn->ijmn", outer.kraus, inner.kraus).reshape(-1, outer.d, inner.d)
        return channel_from_kraus(kraus, subsystems=subsystems, name=name, require_tp=False)
    return channel_from_choi(compose_star(outer.choi, inner.choi).matrix, outer.d, subsystems, name)


def dual_map(ch: Channel) -> Channel:
    """
    Phi^dag with tr[Phi^dag[X] Y] = tr[X Phi[Y]]: Kraus {K_k^dag}; in Choi
    form Omega_dag[m,i,n,l] = Omega[l,n,i,m].
    """
    name = f"{ch.name}^dag"
    if len(ch.factors) == 2:
        return tensor(dual_map(ch.factors[0]), dual_map(ch.factors[1]), name=name)
    matrix = ch.choi.tensor.transpose(3, 2, 1, 0).reshape(ch.d * ch.d, ch.d * ch.d)
    kraus = None if ch.kraus is None else ch.kraus.conj().transpose(0, 2, 1)
    return Channel(ch.d, ch.d, ChoiOperator(matrix, ch.d, ch.d), kraus=kraus, subsystems=ch.subsystems, name=name)


# ==============================================================================
# Structural properties
# ==============================================================================

def is_completely_positive(ch: Channel) -> bool:
    """Omega >= 0 within the global PSD floor."""
    if len(ch.factors) == 2:
        return all(is_completely_positive(f) for f in ch.factors)
    return is_psd(ch.choi.matrix)


def is_trace_preserving(ch: Channel) -> bool:
    """tr_S Omega = I / d"""
    reduced = partial_trace(ch.choi.matrix, ch.choi.dims, Subsystem.A)
    return float(np.max(np.abs(reduced - np.eye(ch.d_in) / ch.d_in))) <= settings.normalization_tolerance


def is_unital(ch: Channel) -> bool:
    """tr_S' Omega = I / d"""
    reduced = partial_trace(ch.choi.matrix, ch.choi.dims, Subsystem.B)
    return float(np.max(np.abs(reduced - np.eye(ch.d_out) / ch.d_in))) <= settings.normalization_tolerance


def require_completely_positive(ch: Channel) -> None:
    """
    Raises:
        NotCompletelyPositiveError: the map is not CP
    """
    if not is_completely_positive(ch):
        lowest = min(float(eigh(ch.choi.matrix).min_value), 0.0)
        raise NotCompletelyPositiveError(lowest)
