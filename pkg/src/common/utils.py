# src/common/utils.py

"""
Utility helpers: number formatting, complex codecs, seeded randomness and
the deterministic parallel map used by multi-restart searches.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, Sequence, TypeVar

import numpy as np
import numpy.typing as npt

from src.core.base_model import ComplexMatrix, ComplexVector, EncodedVector
from src.core.config import settings

T = TypeVar("T")
R = TypeVar("R")


def format_number(value: float, digits: Optional[int] = None) -> str:
    """Fixed-locale rendering with a `.` separator and N significant digits."""
    digits = settings.significant_digits if digits is None else digits
    text = f"{float(value):.{digits}g}"
    return "0" if text == "-0" else text


def round_significant(value: float, digits: Optional[int] = None) -> float:
    return float(format_number(value, digits))


def encode_vector(values: npt.ArrayLike) -> EncodedVector:
    """Row-major flattening into [re, im] pairs."""
    flat = np.asarray(values, dtype=np.complex128).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def decode_vector(pairs: Sequence[Sequence[float]]) -> ComplexVector:
    arr = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
    return arr[:, 0] + 1j * arr[:, 1]


def decode_matrix(pairs: Sequence[Sequence[float]], rows: int, cols: int) -> ComplexMatrix:
    return decode_vector(pairs).reshape(rows, cols)


def phase_fix(vec: ComplexVector, tol: float = 1e-12) -> ComplexVector:
    """Rotate the global phase so the first non-negligible entry is real positive."""
    vec = np.asarray(vec, dtype=np.complex128)
    scale = max(float(np.max(np.abs(vec))) if vec.size else 0.0, 1e-300)
    for z in vec:
        if abs(z) > tol * scale:
            return vec * (abs(z) / z)
    return vec


def vector_key(vec: ComplexVector, decimals: int = 12) -> tuple[float, ...]:
    """Lexicographic sort key over (re, im) of each component."""
    rounded = np.round(np.column_stack([vec.real, vec.imag]).reshape(-1), decimals)
    return tuple(float(x) + 0.0 for x in rounded)


def spawn_generators(seed: int, count: int) -> list[np.random.Generator]:
    """
    Independent generator per restart so results do not depend on the order
    in which restarts are executed.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(child) for child in children]


def haar_random_state(dim: int, rng: np.random.Generator) -> ComplexVector:
    """Haar-random pure state from normalized complex Gaussian components."""
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def random_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_isometry_columns(dim: int, count: int, rng: np.random.Generator) -> ComplexMatrix:
    """`count` orthonormal columns in C^dim."""
    z = rng.normal(size=(dim, count)) + 1j * rng.normal(size=(dim, count))
    q, _ = np.linalg.qr(z)
    return q


def random_hermitian(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (z + z.conj().T) / 2


def random_density(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> ComplexMatrix:
    """Random density operator G G^dag / tr, G a dim x rank Ginibre matrix."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> list[R]:
    """
    Map preserving input order. Threads only; numpy releases the GIL inside
    LAPACK so small dense problems still overlap.
    """
    items = list(items)
    workers = settings.workers if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
