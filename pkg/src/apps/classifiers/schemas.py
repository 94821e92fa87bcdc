# src/apps/classifiers/schemas.py

"""
Verdicts, witnesses and threshold results
"""

from typing import Optional

from pydantic import Field

from src.common.enums import ChannelProperty, VerdictTag, WitnessKind
from src.common.utils import decode_vector, encode_vector
from src.core.base_model import BaseSchema, ComplexVector, EncodedVector


class Witness(BaseSchema):
    """
    Vectors that re-evaluate to `value` on the classified channel.

    See WitnessKind for the meaning of `vectors` per kind; `cut` is the
    bipartition the vectors live on.
    """
    kind: WitnessKind
    vectors: list[EncodedVector]
    value: float
    cut: tuple[int, int]
    schmidt_weights: Optional[list[float]] = None

    @classmethod
    def build(
        cls,
        kind: WitnessKind,
        vectors: tuple[ComplexVector, ...],
        value: float,
        cut: tuple[int, int],
        schmidt_weights: Optional[list[float]] = None,
    ) -> "Witness":
        return cls(
            kind=kind,
            vectors=[encode_vector(v) for v in vectors],
            value=float(value),
            cut=cut,
            schmidt_weights=schmidt_weights,
        )

    def decoded(self) -> list[ComplexVector]:
        return [decode_vector(v) for v in self.vectors]


class Verdict(BaseSchema):
    """
    Four-valued outcome of a classifier.

    CERTIFIED only comes from exact spectral checks; REFUTED always carries a
    witness; `margin` is the smallest value the deciding check saw.
    """
    claim: ChannelProperty
    tag: VerdictTag
    method: str
    margin: Optional[float] = None
    witness: Optional[Witness] = None
    detail: Optional[str] = None

    @property
    def certified(self) -> bool:
        return self.tag == VerdictTag.CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.tag == VerdictTag.REFUTED


class ThresholdResult(BaseSchema):
    """
    Bisected PPT-inducing threshold of the depolarizing pair at dimension d.
    """
    d: int = Field(..., ge=2)
    q_star: float
    q_low: float
    q_high: float
    conjecture_value: float
    binding_value: float
    restricted_min: float
    unrestricted_min: float
    restriction_violated: bool = False

    @property
    def bracket(self) -> tuple[float, float]:
        return (self.q_low, self.q_high)

    @property
    def difference(self) -> float:
        return self.q_star - self.conjecture_value

    def conjecture_violated(self, tol: float) -> bool:
        """Measured threshold below the conjectured one, which would falsify it."""
        return self.q_star < self.conjecture_value - tol

    @property
    def gap(self) -> float:
        return self.q_star - self.binding_value
