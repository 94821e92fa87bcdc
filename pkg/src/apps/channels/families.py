# src/apps/channels/families.py

"""
Builtin channels: depolarizing family, identity, unitary conjugation,
complete dephasing, transposition and seeded random channels.
"""

import numpy as np
import numpy.typing as npt

from src.apps.channels.exceptions import InvalidParameterError, NotCompletelyPositiveError
from src.apps.channels.models import Channel, ChoiOperator
from src.apps.channels.service import channel_from_choi, channel_from_kraus, tensor
from src.common.utils import format_number, random_isometry_columns
from src.common.validators import as_square
from src.core.config import settings


def _check_dimension(d: int) -> int:
    if int(d) != d or d < 2:
        raise InvalidParameterError(f"dimension must be an integer >= 2, got {d}", "d")
    return int(d)


def maximally_entangled_projector(d: int) -> np.ndarray:
    """|Psi+><Psi+| on C^d (x) C^d."""
    psi = np.eye(d, dtype=np.complex128).reshape(-1) / np.sqrt(d)
    return np.outer(psi, psi.conj())


def depolarizing_cp_range(d: int) -> tuple[float, float]:
    """q range for which Phi_q is completely positive: [-1/(d^2-1), 1]."""
    d = _check_dimension(d)
    return -1.0 / (d * d - 1), 1.0


def depolarizing_choi_min_eigenvalue(d: int, q: float) -> float:
    """Smaller of q + (1-q)/d^2 (on Psi+) and (1-q)/d^2 (its complement)."""
    return min(q + (1.0 - q) / d**2, (1.0 - q) / d**2)


def depolarizing(d: int, q: float) -> Channel:
    """
    Phi_q[X] = q X + (1 - q) tr[X] I / d

    Raises:
        NotCompletelyPositiveError: q outside [-1/(d^2-1), 1]
    """
    d = _check_dimension(d)
    lowest = depolarizing_choi_min_eigenvalue(d, q)
    if lowest < -settings.psd_tolerance:
        raise NotCompletelyPositiveError(lowest)
    choi = q * maximally_entangled_projector(d) + (1.0 - q) * np.eye(d * d) / d**2
    return channel_from_choi(choi, d, name=f"depolarizing(d={d},q={format_number(q)})")


def depolarizing_pair(d: int, q: float) -> Channel:
    """Phi_q (x) Phi_q on d (x) d."""
    single = depolarizing(d, q)
    return tensor(single, single, name=f"depolarizing2(d={d},q={format_number(q)})")


def identity_channel(d: int) -> Channel:
    return channel_from_kraus(np.eye(d), name=f"identity(d={d})")


def unitary_channel(u: npt.ArrayLike, name: str = "unitary") -> Channel:
    """
    X -> U X U^dag

    Raises:
        NotTracePreservingError: U is not unitary
    """
    return channel_from_kraus(as_square(u, field="unitary"), name=name)


def dephasing_channel(d: int) -> Channel:
    """Complete dephasing in the computational basis, Kraus |i><i|."""
    kraus = np.zeros((d, d, d), dtype=np.complex128)
    for i in range(d):
        kraus[i, i, i] = 1.0
    return channel_from_kraus(kraus, name=f"dephasing(d={d})")


def transpose_map(d: int) -> Channel:
    """X -> X^T, positive and trace preserving but not completely positive. Choi = SWAP / d."""
    swap = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    return Channel(d, d, ChoiOperator(swap / d, d, d), name=f"transpose(d={d})")


def random_channel(d: int, n_kraus: int, rng: np.random.Generator) -> Channel:
    """
    Random CPTP map from a Stinespring isometry V: C^d -> C^d (x) C^n; the
    Kraus operators are the n blocks of V.
    """
    v = random_isometry_columns(d * n_kraus, d, rng)
    kraus = v.reshape(n_kraus, d, d)
    return channel_from_kraus(kraus, name=f"random(d={d},n={n_kraus})")
