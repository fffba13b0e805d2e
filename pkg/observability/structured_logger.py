"""
Structured Logging
Loguru-backed logs with metadata; reports own stdout, logs go to stderr
"""
import sys
from typing import Any, Dict, Optional

from loguru import logger as _loguru_logger

from config import get_settings

_TEXT_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{extra[component]}</cyan> - <level>{message}</level> {extra[metadata]}"
)

_configured = False


def configure_logging(level: Optional[str] = None, json_logs: Optional[bool] = None) -> None:
    """(Re)install the stderr sink using settings unless overridden."""
    global _configured
    settings = get_settings()
    _loguru_logger.remove()
    _loguru_logger.add(
        sys.stderr,
        level=(level or settings.log_level).upper(),
        format=_TEXT_FORMAT,
        serialize=settings.log_json if json_logs is None else json_logs,
        colorize=False,
    )
    _configured = True


class StructuredLogger:
    """
    Structured logger bound to one component name.
    """

    def __init__(self, name: str = "prophet"):
        if not _configured:
            configure_logging()
        self.name = name
        self.logger = _loguru_logger.bind(component=name, metadata={})

    def _log_with_metadata(
        self,
        level: str,
        message: str,
        metadata: Optional[Dict[str, Any]] = None,
    ):
        self.logger.bind(metadata=metadata or {}).log(level, message)

    def info(self, message: str, metadata: Optional[Dict[str, Any]] = None):
        self._log_with_metadata("INFO", message, metadata)

    def warning(self, message: str, metadata: Optional[Dict[str, Any]] = None):
        self._log_with_metadata("WARNING", message, metadata)

    def error(self, message: str, metadata: Optional[Dict[str, Any]] = None):
        self._log_with_metadata("ERROR", message, metadata)

    def debug(self, message: str, metadata: Optional[Dict[str, Any]] = None):
        self._log_with_metadata("DEBUG", message, metadata)

    def log_solve(
        self,
        solver: str,
        num_rewards: int,
        num_agents: int,
        elapsed_ms: float,
        **kwargs
    ):
        """Log a finished exact solve"""
        metadata = {
            "type": "solve",
            "solver": solver,
            "num_rewards": num_rewards,
            "num_agents": num_agents,
            "elapsed_ms": round(elapsed_ms, 3),
            **kwargs
        }
        self.debug(f"{solver}: n={num_rewards}, k={num_agents} ({elapsed_ms:.2f}ms)", metadata)

    def log_evaluation(
        self,
        method: str,
        num_agents: int,
        welfare: float,
        elapsed_ms: float,
        num_samples: int = 0,
        **kwargs
    ):
        """Log a profile evaluation"""
        metadata = {
            "type": "evaluation",
            "method": method,
            "num_agents": num_agents,
            "welfare": welfare,
            "num_samples": num_samples,
            "elapsed_ms": round(elapsed_ms, 3),
            **kwargs
        }
        self.info(
            f"Evaluation: method={method}, k={num_agents}, "
            f"welfare={welfare:.6g} ({elapsed_ms:.2f}ms)",
            metadata
        )

    def log_certificate(self, rule: str, threshold: float, worst_case: float, passed: bool, **kwargs):
        """Log a worst-case certificate"""
        metadata = {
            "type": "certificate",
            "rule": rule,
            "threshold": threshold,
            "worst_case": worst_case,
            "passed": passed,
            **kwargs
        }
        status = "PASS" if passed else "FAIL"
        self.debug(f"Certificate {status}: rule={rule}, T={threshold:.6g}, worst={worst_case:.6g}", metadata)

    def log_error_with_context(self, error: Exception, context: Dict[str, Any]):
        """Log error with context"""
        metadata = {
            "type": "error",
            "error_type": type(error).__name__,
            "error_message": str(error),
            "context": context
        }
        self.error(f"Error: {error}", metadata)


_loggers: Dict[str, StructuredLogger] = {}


def get_logger(name: str = "prophet") -> StructuredLogger:
    """Get structured logger instance for a component"""
    if name not in _loggers:
        _loggers[name] = StructuredLogger(name)
    return _loggers[name]
