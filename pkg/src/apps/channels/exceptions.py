# src/apps/channels/exceptions.py

"""Errors raised by the channel calculus"""

from src.core.exceptions import (
    ChannelError,
    ChannelParseError,
    DimensionMismatchError,
    InvalidParameterError,
    MissingRepresentationError,
    NotCompletelyPositiveError,
    NotHermitianError,
    NotTracePreservingError,
)

__all__ = [
    "ChannelError",
    "ChannelParseError",
    "DimensionMismatchError",
    "InvalidParameterError",
    "MissingRepresentationError",
    "NotCompletelyPositiveError",
    "NotHermitianError",
    "NotTracePreservingError",
]
