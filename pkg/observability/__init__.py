"""
Observability
Structured logging for solvers, evaluators and the service surface
"""
from observability.structured_logger import StructuredLogger, configure_logging, get_logger

__all__ = [
    'StructuredLogger',
    'configure_logging',
    'get_logger',
]
