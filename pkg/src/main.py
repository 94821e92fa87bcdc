# src/main.py

"""
Command-line entry point
Parses the run, dispatches the experiment and maps failures to exit codes.
"""

import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError as PydanticValidationError

from src.apps.experiments.constants import EXIT_NUMERICAL, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE
from src.apps.experiments.exceptions import (
    AppException,
    ChannelError,
    ChannelParseError,
    NumericalFailureError,
    PreconditionError,
    ValidationError,
)
from src.apps.experiments.router import parse_run_spec
from src.apps.experiments.schemas import RunSpec
from src.apps.experiments.service import render, run
from src.core.base_model import ErrorResponse
from src.core.config import override_settings, settings
from src.core.logging import get_logger, setup_logging

logger = get_logger(__name__)


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.info("report written", path=str(out), bytes=len(text.encode("utf-8")))


def _fail(exc: AppException, code: int) -> int:
    """Log an application error and print its report to stderr."""
    logger.error("run failed", error_code=exc.error_code, message=exc.message, exit_code=code)
    report = ErrorResponse(error_code=exc.error_code, message=exc.message, details={"exit_code": code})
    sys.stderr.write(report.model_dump_json() + "\n")
    return code


def execute(spec: RunSpec) -> int:
    with override_settings(eigensolver=spec.eigensolver):
        report = run(spec)
        _write(render(report, spec.format), spec.out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging()
    try:
        spec = parse_run_spec(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    except PydanticValidationError as e:
        messages = "; ".join(error["msg"] for error in e.errors())
        logger.error("invalid arguments", errors=messages)
        sys.stderr.write(
            ErrorResponse(error_code="INVALID_ARGUMENTS", message=messages, details={"exit_code": EXIT_USAGE})
            .model_dump_json() + "\n"
        )
        return EXIT_USAGE

    logger.info(
        "run started",
        command=spec.command,
        app_version=settings.app_version,
        seed=spec.seed,
        eigensolver=spec.eigensolver or settings.eigensolver,
    )
    try:
        return execute(spec)
    except ChannelParseError as e:
        return _fail(e, EXIT_USAGE)
    except (ValidationError, ChannelError, PreconditionError) as e:
        return _fail(e, EXIT_PRECONDITION)
    except NumericalFailureError as e:
        return _fail(e, EXIT_NUMERICAL)
    except Exception as e:
        logger.error("unhandled exception", error=str(e), error_type=type(e).__name__, exc_info=True)
        message = "internal error" if settings.is_production else str(e)
        report = ErrorResponse(error_code="INTERNAL_ERROR", message=message, details={"exit_code": EXIT_NUMERICAL})
        sys.stderr.write(report.model_dump_json() + "\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
