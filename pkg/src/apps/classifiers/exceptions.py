# src/apps/classifiers/exceptions.py

"""Errors raised by channel classifiers"""

from src.core.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NotCompletelyPositiveError,
    NotPositiveMapError,
    NumericalFailureError,
    ProportionRequirementError,
)

__all__ = [
    "DimensionMismatchError",
    "InvalidParameterError",
    "NotCompletelyPositiveError",
    "NotPositiveMapError",
    "NumericalFailureError",
    "ProportionRequirementError",
]
