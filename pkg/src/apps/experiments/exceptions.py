# src/apps/experiments/exceptions.py

"""Errors raised while running experiments"""

from src.core.exceptions import (
    AppException,
    ChannelError,
    ChannelParseError,
    InvalidParameterError,
    NumericalFailureError,
    PreconditionError,
    ValidationError,
)

__all__ = [
    "AppException",
    "ChannelError",
    "ChannelParseError",
    "InvalidParameterError",
    "NumericalFailureError",
    "PreconditionError",
    "ValidationError",
]
