"""
Structured logging.

Console output is colored text in development and JSON lines in production;
log files are always JSON lines. Records emitted inside a LogContext carry
its run id and fields (experiment, ensemble, N, ...) so the lines of one
run can be filtered out of a shared log.
"""

import json
import logging
import sys
import uuid
from contextvars import ContextVar
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Optional

import numpy as np

run_id: ContextVar[Optional[str]] = ContextVar("run_id", default=None)
context_fields: ContextVar[dict[str, Any]] = ContextVar("context_fields", default={})

# LogRecord attributes that are not user fields
_RECORD_ATTRS = frozenset(vars(logging.makeLogRecord({}))) | {"message", "asctime", "taskName"}

# Arrays longer than this are logged as a shape summary
MAX_LOGGED_ARRAY = 16


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        if value.size > MAX_LOGGED_ARRAY:
            return f"ndarray(shape={value.shape}, dtype={value.dtype})"
        return _jsonable(value.tolist())
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


class JsonFormatter(logging.Formatter):
    """One JSON object per record"""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "line": record.lineno,
        }
        current = run_id.get()
        if current:
            entry["run_id"] = current
        entry.update({k: v for k, v in context_fields.get().items() if k not in entry})
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)

        for key, value in vars(record).items():
            if key in _RECORD_ATTRS or key in entry:
                continue
            entry[key] = _jsonable(value)

        return json.dumps(entry, default=str)


class ColoredFormatter(logging.Formatter):
    """Colored level names and a short run id prefix for terminals"""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        # Copy: other handlers must see the plain level name
        record = logging.makeLogRecord(vars(record))
        record.levelname = f"{self.COLORS.get(record.levelname, '')}{record.levelname:8}{self.RESET}"
        current = run_id.get()
        if current:
            record.msg = f"[{current[:8]}] {record.msg}"
        return super().format(record)


class ContextualAdapter(logging.LoggerAdapter):
    """Adds the run id and LogContext fields to every record"""

    def process(self, msg: str, kwargs: dict) -> tuple[str, dict]:
        extra = {**context_fields.get(), **kwargs.get("extra", {})}
        current = run_id.get()
        if current:
            extra["run_id"] = current
        kwargs["extra"] = extra
        return msg, kwargs


_logging_initialized = False
_logging_settings: dict[str, Any] = {}


def setup_logging(
    level: str = "INFO",
    json_format: bool = False,
    log_file: Optional[str] = None,
    force: bool = False,
) -> None:
    """
    Configure the root logger once per process.

    Args:
        level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        json_format: JSON lines on the console instead of colored text
        log_file: Optional path that receives JSON lines
        force: Replace an earlier configuration
    """
    global _logging_initialized, _logging_settings

    if _logging_initialized and not force:
        return

    root = logging.getLogger()
    root.setLevel(getattr(logging, level.upper(), logging.INFO))
    root.handlers.clear()

    # stderr; stdout carries the CLI's tables
    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(
        JsonFormatter() if json_format
        else ColoredFormatter("%(asctime)s | %(levelname)s | %(name)s | %(message)s", datefmt="%H:%M:%S")
    )
    root.addHandler(console)

    if log_file:
        try:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
        except OSError as e:
            root.warning("Could not open log file %s: %s", log_file, e)
        else:
            file_handler.setFormatter(JsonFormatter())
            root.addHandler(file_handler)

    _logging_initialized = True
    _logging_settings = {"level": level, "json_format": json_format, "log_file": log_file}
    root.debug("Logging initialized: level=%s json=%s", level, json_format)


def logging_settings() -> dict[str, Any]:
    """Arguments of the last setup_logging call, for re-applying in worker processes."""
    return dict(_logging_settings)


def get_logger(name: str) -> ContextualAdapter:
    """
    Contextual logger for a module.

    Usage:
        logger = get_logger(__name__)
        logger.info("Estimated rate", extra={"n": 16, "mean": 29.8})
    """
    return ContextualAdapter(logging.getLogger(name), {})


def set_run_id(value: Optional[str]) -> None:
    run_id.set(value)


def get_run_id() -> Optional[str]:
    return run_id.get()


def generate_run_id() -> str:
    """Install a fresh run id in the current context and return it."""
    value = uuid.uuid4().hex
    set_run_id(value)
    return value


class LogContext:
    """
    Scope a run id and extra fields for every record logged inside.

    Usage:
        with LogContext(run_id=run_id, experiment="rate-scaling"):
            ...
    """

    def __init__(self, run_id: Optional[str] = None, **fields: Any):
        self.run_id = run_id
        self.fields = fields
        self._tokens: list = []

    def __enter__(self) -> "LogContext":
        if self.run_id is not None:
            self._tokens.append(run_id.set(self.run_id))
        if self.fields:
            self._tokens.append(context_fields.set({**context_fields.get(), **self.fields}))
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        for token in reversed(self._tokens):
            token.var.reset(token)
        self._tokens.clear()
