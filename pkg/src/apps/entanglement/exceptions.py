# src/apps/entanglement/exceptions.py

"""Errors raised by entanglement tests"""

from src.core.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NotAStateError,
    NotCompletelyPositiveError,
    NotHermitianError,
    NumericalFailureError,
    SeparabilityUndecidableError,
)

__all__ = [
    "DimensionMismatchError",
    "InvalidParameterError",
    "NotAStateError",
    "NotCompletelyPositiveError",
    "NotHermitianError",
    "NumericalFailureError",
    "SeparabilityUndecidableError",
]
