# src/apps/channels/models.py

"""
Channel value objects

A Channel always carries its state-normalized Choi operator; a Kraus list is
present whenever the map is completely positive. Both are computed when the
channel is built, so instances are immutable and safe to share between threads.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.apps.channels.constants import DEFAULT_CHANNEL_NAME, SWAP_MIDDLE_FACTORS
from src.apps.channels.exceptions import DimensionMismatchError, InvalidParameterError
from src.apps.linalg.schemas import BipartiteDims
from src.apps.linalg.service import partial_transpose_multi, permute_subsystems
from src.common.enums import Subsystem
from src.common.validators import ensure_hermitian
from src.core.base_model import ComplexMatrix, frozen_array


@dataclass(frozen=True, eq=False)
class ChoiOperator:
    """
    Omega on S (x) S', output system S first, reference copy S' second.
    """
    matrix: ComplexMatrix
    d_out: int
    d_ref: int

    def __post_init__(self):
        side = self.d_out * self.d_ref
        if self.matrix.shape != (side, side):
            raise DimensionMismatchError((side, side), self.matrix.shape, "choi")
        object.__setattr__(self, "matrix", frozen_array(ensure_hermitian(self.matrix, "choi")))

    @property
    def dims(self) -> BipartiteDims:
        return BipartiteDims.of(self.d_out, self.d_ref)

    @property
    def tensor(self) -> np.ndarray:
        """Omega[m, i, n, l] with (m, n) output and (i, l) reference indices."""
        return self.matrix.reshape(self.d_out, self.d_ref, self.d_out, self.d_ref)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def composite(self, subsystems: tuple[int, int]) -> "CompositeChoi":
        """View the Choi of a map on A (x) B in its A, B, A', B' factor order."""
        d_a, d_b = subsystems
        if d_a * d_b != self.d_out or self.d_out != self.d_ref:
            raise DimensionMismatchError(self.d_out, f"{d_a}x{d_b}", "subsystems")
        return CompositeChoi(self.matrix, d_a, d_b)


@dataclass(frozen=True, eq=False)
class CompositeChoi:
    """
    Choi operator of a map on A (x) B stored in factor order A, B, A', B'.

    The cut AB|A'B' is then a plain bipartite split of `matrix`.
    """
    matrix: ComplexMatrix
    d_a: int
    d_b: int

    @property
    def factor_dims(self) -> list[int]:
        return [self.d_a, self.d_b, self.d_a, self.d_b]

    @property
    def cut(self) -> BipartiteDims:
        """AB | A'B'"""
        d = self.d_a * self.d_b
        return BipartiteDims.of(d, d)

    def local_blocks(self) -> ComplexMatrix:
        """Same operator in factor order A, A', B, B'."""
        return permute_subsystems(self.matrix, self.factor_dims, SWAP_MIDDLE_FACTORS)

    def output_transposed(self, which: Subsystem = Subsystem.B) -> ComplexMatrix:
        """Transpose only the output factor A or B, never the references."""
        mask = [Subsystem(which) == Subsystem.A, Subsystem(which) == Subsystem.B, False, False]
        return partial_transpose_multi(self.matrix, self.factor_dims, mask)

    @classmethod
    def from_local_blocks(cls, matrix: ComplexMatrix, d_a: int, d_b: int) -> "CompositeChoi":
        return cls(permute_subsystems(matrix, [d_a, d_a, d_b, d_b], SWAP_MIDDLE_FACTORS), d_a, d_b)


@dataclass(frozen=True, eq=False)
class Channel:
    """
    Linear map M_d -> M_d.

    `kraus` has shape (n, d_out, d_in) when present. `subsystems` records the
    bipartition A (x) B of the system for maps on composite systems, and
    `factors` keeps the local maps of a tensor product so that applying the
    product never materializes its Kraus list.
    """
    d_in: int
    d_out: int
    choi: ChoiOperator
    kraus: Optional[np.ndarray] = None
    subsystems: Optional[tuple[int, int]] = None
    factors: tuple["Channel", ...] = field(default_factory=tuple)
    name: str = DEFAULT_CHANNEL_NAME

    def __post_init__(self):
        if self.d_in != self.d_out:
            raise DimensionMismatchError("square channel", f"{self.d_out}x{self.d_in}", "channel")
        if (self.choi.d_out, self.choi.d_ref) != (self.d_out, self.d_in):
            raise DimensionMismatchError((self.d_out, self.d_in), (self.choi.d_out, self.choi.d_ref), "choi")
        if self.kraus is not None:
            kraus = np.asarray(self.kraus, dtype=np.complex128)
            if kraus.ndim != 3 or kraus.shape[1:] != (self.d_out, self.d_in):
                raise DimensionMismatchError(f"(n, {self.d_out}, {self.d_in})", kraus.shape, "kraus")
            object.__setattr__(self, "kraus", frozen_array(kraus))
        if self.subsystems is not None:
            d_a, d_b = (int(x) for x in self.subsystems)
            if d_a * d_b != self.d_in:
                raise DimensionMismatchError(self.d_in, f"{d_a}x{d_b}", "subsystems")
            object.__setattr__(self, "subsystems", (d_a, d_b))
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def d(self) -> int:
        return self.d_in

    @property
    def has_kraus(self) -> bool:
        return self.kraus is not None

    @property
    def is_bipartite(self) -> bool:
        return self.subsystems is not None

    @property
    def dims(self) -> BipartiteDims:
        """Bipartition A (x) B of the system."""
        if self.subsystems is None:
            raise InvalidParameterError(f"{self.name} acts on an undivided system", "subsystems")
        return BipartiteDims.of(*self.subsystems)

    @property
    def composite_choi(self) -> CompositeChoi:
        return self.choi.composite(self.dims.as_tuple())

    def __repr__(self) -> str:
        return (
            f"Channel(name={self.name!r}, d={self.d_in}, subsystems={self.subsystems}, "
            f"kraus={None if self.kraus is None else self.kraus.shape[0]})"
        )
