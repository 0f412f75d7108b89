"""Utility functions package for the tag pipeline"""

from .logging_setup import setup_logging
from .error_handling import (
    EXIT_OK,
    EXIT_UNEXPECTED,
    EXIT_CONFIG_ERROR,
    EXIT_DATA_ERROR,
    EXIT_CONTRACT_VIOLATION,
    PipelineError,
    ConfigError,
    DataError,
    ContractViolation,
    RowError,
    ErrorContext,
    file_operation_safe,
    check_malformed_share,
    require,
)
from .performance_profiler import (
    PerformanceProfiler,
    get_profiler,
    initialize_profiler,
    profile_timing,
)

__all__ = [
    'setup_logging',
    'EXIT_OK',
    'EXIT_UNEXPECTED',
    'EXIT_CONFIG_ERROR',
    'EXIT_DATA_ERROR',
    'EXIT_CONTRACT_VIOLATION',
    'PipelineError',
    'ConfigError',
    'DataError',
    'ContractViolation',
    'RowError',
    'ErrorContext',
    'file_operation_safe',
    'check_malformed_share',
    'require',
    'PerformanceProfiler',
    'get_profiler',
    'initialize_profiler',
    'profile_timing',
]
