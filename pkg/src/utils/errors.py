# src/utils/errors.py

from typing import Optional


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""


class CapExceededError(WorkbenchError):
    """A requested enumeration or grid would exceed its configured cap."""

    def __init__(self, what: str, would_be: int, cap: int, advice: Optional[str] = None):
        self.what = what
        self.would_be = int(would_be)
        self.cap = int(cap)
        self.advice = advice
        message = f"{what}: {self.would_be} exceeds cap {self.cap}"
        if advice:
            message += f" ({advice})"
        super().__init__(message)


class DomainError(WorkbenchError, ValueError):
    """An input violates an operation's precondition."""


class CertificateError(WorkbenchError, AssertionError):
    """An internal bound check failed; this signals a bug, not a theorem failure."""

    def __init__(self, side: str, detail: str):
        self.side = side
        super().__init__(f"{side} side violated: {detail}")


class ConfigError(WorkbenchError):
    def __init__(self, key: str, detail: str):
        self.key = key
        super().__init__(f"invalid config value for '{key}': {detail}")


class UsageError(WorkbenchError):
    pass
