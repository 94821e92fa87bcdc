# src/apps/linalg/schemas.py

"""
Linear algebra value types
Bipartite dimension labels plus the immutable results of spectral and
Schmidt decompositions.
"""

from dataclasses import dataclass

import numpy as np
from pydantic import Field

from src.core.base_model import BaseSchema, ComplexMatrix, ComplexVector, RealVector, frozen_array
from src.core.config import settings


class BipartiteDims(BaseSchema):
    """
    Dimensions of a bipartite space; composite index is i * d_b + k.
    """
    d_a: int = Field(..., ge=1, description="Dimension of the first factor")
    d_b: int = Field(..., ge=1, description="Dimension of the second factor")

    @classmethod
    def of(cls, d_a: int, d_b: int) -> "BipartiteDims":
        return cls(d_a=d_a, d_b=d_b)

    @property
    def side(self) -> int:
        """Side of the matrices these dimensions label."""
        return self.d_a * self.d_b

    @property
    def min_dim(self) -> int:
        return min(self.d_a, self.d_b)

    def swapped(self) -> "BipartiteDims":
        return BipartiteDims(d_a=self.d_b, d_b=self.d_a)

    def as_tuple(self) -> tuple[int, int]:
        return (self.d_a, self.d_b)


@dataclass(frozen=True)
class SpectralDecomposition:
    """
    Eigenvalues ascending, eigenvectors as orthonormal columns.
    """
    eigenvalues: RealVector
    eigenvectors: ComplexMatrix

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", frozen_array(self.eigenvalues, np.float64))
        object.__setattr__(self, "eigenvectors", frozen_array(self.eigenvectors))

    @property
    def min_value(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def min_vector(self) -> ComplexVector:
        return self.eigenvectors[:, 0].copy()

    def reconstruct(self) -> ComplexMatrix:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class SchmidtForm:
    """
    psi = sum_i sqrt(weights[i]) |left_i> |right_i>

    Weights are the squared Schmidt coefficients, nonincreasing, summing to one.
    Bases are stored as columns.
    """
    weights: RealVector
    left_basis: ComplexMatrix
    right_basis: ComplexMatrix
    dims: BipartiteDims

    def __post_init__(self):
        object.__setattr__(self, "weights", frozen_array(self.weights, np.float64))
        object.__setattr__(self, "left_basis", frozen_array(self.left_basis))
        object.__setattr__(self, "right_basis", frozen_array(self.right_basis))

    @property
    def rank(self) -> int:
        """Number of weights above the rank tolerance."""
        return int(np.count_nonzero(self.weights > settings.rank_tolerance))

    def reassemble(self) -> ComplexVector:
        mat = (self.left_basis * np.sqrt(self.weights)) @ self.right_basis.T
        return mat.reshape(-1)

    def truncated(self, rank: int) -> ComplexVector:
        """Renormalized vector keeping the `rank` leading Schmidt terms."""
        k = max(1, min(rank, self.weights.shape[0]))
        mat = (self.left_basis[:, :k] * np.sqrt(self.weights[:k])) @ self.right_basis[:, :k].T
        vec = mat.reshape(-1)
        return vec / np.linalg.norm(vec)
