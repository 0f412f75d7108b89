"""
Standardized error handling for the tag pipeline.

Provides the exception hierarchy every stage raises, the exit code each one
maps to, and the helpers that attach stage context to failures.
"""

import logging
import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

# Process exit codes
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG_ERROR = 2
EXIT_DATA_ERROR = 3
EXIT_CONTRACT_VIOLATION = 4


class PipelineError(Exception):
    """Base class for failures the CLI knows how to report"""

    exit_code = EXIT_UNEXPECTED

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self) -> str:
        if self.stage:
            return f"[{self.stage}] {self.message}"
        return self.message


class ConfigError(PipelineError):
    """Invalid run configuration or override table"""

    exit_code = EXIT_CONFIG_ERROR


class DataError(PipelineError):
    """Input data cannot support the requested computation"""

    exit_code = EXIT_DATA_ERROR


class ContractViolation(PipelineError):
    """A function was called outside its documented preconditions"""

    exit_code = EXIT_CONTRACT_VIOLATION


@dataclass(frozen=True)
class RowError:
    """One malformed input row"""
    path: str
    line_number: int
    message: str

    def __str__(self) -> str:
        return f"{self.path}:{self.line_number}: {self.message}"


def require(condition: bool, message: str) -> None:
    """Raise ContractViolation unless condition holds"""
    if not condition:
        raise ContractViolation(message)


def file_operation_safe(operation_name: Optional[str] = None) -> Callable:
    """
    Decorator for reading input files.

    Missing or unreadable files become DataError carrying the operation name,
    so the CLI reports them as data failures instead of tracebacks.

    Args:
        operation_name: Custom name for operation in logs
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except FileNotFoundError as e:
                func_name = operation_name or func.__name__
                logging.error(f"Error in {func_name}: file not found: {e.filename}")
                raise DataError(f"{func_name}: file not found: {e.filename}") from e
            except (PermissionError, IsADirectoryError, UnicodeDecodeError) as e:
                func_name = operation_name or func.__name__
                logging.error(f"Error in {func_name}: {e}")
                raise DataError(f"{func_name}: cannot read input: {e}") from e
        return wrapper
    return decorator


def check_malformed_share(path: Path, errors: list, total_rows: int, limit: float) -> None:
    """
    Log every malformed row and abort when their share exceeds the limit.

    Args:
        path: File the rows came from
        errors: RowError records collected while parsing
        total_rows: Data rows seen, malformed ones included
        limit: Largest tolerated malformed fraction
    """
    for error in errors[:20]:
        logging.warning(f"Malformed row {error}")
    if len(errors) > 20:
        logging.warning(f"... {len(errors) - 20} more malformed rows in {path}")

    if total_rows and len(errors) / total_rows > limit:
        raise DataError(
            f"{path}: {len(errors)} of {total_rows} rows malformed "
            f"(more than {limit:.0%} allowed)"
        )


class ErrorContext:
    """Context manager for running one pipeline stage."""

    def __init__(
        self,
        operation_name: str,
        cleanup_func: Optional[Callable] = None,
        reraise: bool = True
    ):
        self.operation_name = operation_name
        self.cleanup_func = cleanup_func
        self.reraise = reraise
        self.exception = None

    def __enter__(self):
        logging.info(f"Starting {self.operation_name}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is not None:
            self.exception = exc_val
            if isinstance(exc_val, PipelineError) and exc_val.stage is None:
                exc_val.stage = self.operation_name
            logging.error(f"Error in {self.operation_name}: {exc_val}")

            if self.cleanup_func:
                try:
                    self.cleanup_func()
                except Exception as cleanup_error:
                    logging.error(f"Error during cleanup: {cleanup_error}")

            if not self.reraise:
                return True
        else:
            logging.info(f"Successfully completed {self.operation_name}")

        return False
