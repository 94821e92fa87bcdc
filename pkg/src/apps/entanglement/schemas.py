# src/apps/entanglement/schemas.py

"""
Entanglement test configuration and results
"""

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
from pydantic import Field

from src.apps.linalg.schemas import BipartiteDims
from src.common.enums import BlockPositivityTag
from src.core.base_model import BaseSchema, ComplexVector, RealVector, frozen_array
from src.core.config import settings


class SeesawConfig(BaseSchema):
    """
    Budget and seed of every heuristic search. Identical configs give
    identical results, independent of `workers`.
    """
    restarts: int = Field(default_factory=lambda: settings.seesaw_restarts, ge=1)
    max_iters: int = Field(default_factory=lambda: settings.seesaw_max_iters, ge=1)
    tol: float = Field(default_factory=lambda: settings.seesaw_tolerance, gt=0)
    seed: int = Field(default_factory=lambda: settings.seed, ge=0)
    workers: int = Field(default_factory=lambda: settings.workers, ge=1)

    def with_overrides(self, **overrides: Any) -> "SeesawConfig":
        """Copy with every non-None override applied and validated."""
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return SeesawConfig(**values)


@dataclass(frozen=True, eq=False)
class PptReport:
    min_pt_eigenvalue: float
    witness: ComplexVector
    is_ppt: bool
    dims: BipartiteDims

    def __post_init__(self):
        object.__setattr__(self, "witness", frozen_array(self.witness))


@dataclass(frozen=True, eq=False)
class BlockPositivityVerdict:
    """
    Outcome of the product-vector minimization of <a (x) b|Omega|a (x) b>.

    `margin` is the smallest value found (or lambda_min for CERTIFIED_PSD);
    `a` and `b` are set when a product vector was evaluated.
    """
    tag: BlockPositivityTag
    margin: float
    a: Optional[ComplexVector] = None
    b: Optional[ComplexVector] = None
    converged_restarts: int = 0

    @property
    def refuted(self) -> bool:
        return self.tag == BlockPositivityTag.REFUTED

    @property
    def value(self) -> float:
        return self.margin

    @property
    def product_vector(self) -> Optional[ComplexVector]:
        if self.a is None or self.b is None:
            return None
        return np.kron(self.a, self.b)


@dataclass(frozen=True, eq=False)
class WorstCaseResult:
    """
    Smallest lambda_min(PT_B(Phi[psi psi^dag])) found, the input psi reaching
    it and the output eigenvector w certifying the value.
    """
    min_value: float
    worst_input: ComplexVector
    output_witness: ComplexVector
    converged_restarts: int
    restarts: int

    @property
    def all_converged(self) -> bool:
        return self.converged_restarts == self.restarts


@dataclass(frozen=True, eq=False)
class DistillationWitness:
    """Schmidt-rank <= 2 vector with <w|PT_B(rho)|w> = value < 0."""
    vector: ComplexVector
    value: float
    dims: BipartiteDims
    schmidt_weights: RealVector

    @property
    def schmidt_rank(self) -> int:
        return int(np.count_nonzero(self.schmidt_weights > settings.rank_tolerance))


@dataclass(frozen=True, eq=False)
class OutputDistillationResult:
    """Input state whose output admits a one-copy distillation witness."""
    worst_input: ComplexVector
    witness: DistillationWitness


@dataclass(frozen=True)
class SimplexPoint:
    weights: tuple[float, ...]
    value: float


@dataclass(frozen=True)
class RestrictedWorstCase:
    """
    Minimum of lambda_min(PT_B) over Schmidt-diagonal inputs of the depolarizing
    pair. `weights` is the minimizer, sorted nonincreasing; `grid` holds every
    evaluated grid point in generation order.
    """
    d: int
    q: float
    min_value: float
    weights: tuple[float, ...]
    grid: tuple[SimplexPoint, ...] = field(default_factory=tuple)
