# src/apps/linalg/exceptions.py

"""Errors raised by the linear algebra kernel"""

from src.core.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NotHermitianError,
    NotNormalizedError,
    NumericalFailureError,
)

__all__ = [
    "DimensionMismatchError",
    "InvalidParameterError",
    "NotHermitianError",
    "NotNormalizedError",
    "NumericalFailureError",
]
