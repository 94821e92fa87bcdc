# src/common/decorators.py

"""Function decorators."""

import functools
from time import perf_counter
from typing import Any, Callable, TypeVar, cast

from src.core.logging import get_logger

F = TypeVar("F", bound=Callable[..., Any])


def log_duration(event: str) -> Callable[[F], F]:
    """
    Log the wall-clock duration of the wrapped call, and failures with their
    error type.
    """

    def decorator(func: F) -> F:
        logger = get_logger(func.__module__)

        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start_time = perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(
                    f"{event} failed",
                    error=str(e),
                    error_type=type(e).__name__,
                    duration=f"{perf_counter() - start_time:.3f}s",
                )
                raise
            logger.info(f"{event} completed", duration=f"{perf_counter() - start_time:.3f}s")
            return result

        return cast(F, wrapper)

    return decorator
