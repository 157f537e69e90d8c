# core/exceptions.py
from typing import Any, Optional


class MinorKitError(Exception):
    """Base error; carries a status code the CLI turns into an exit code."""

    status_code: int = 2

    def __init__(self, detail: str, witness: Optional[Any] = None):
        super().__init__(detail)
        self.detail = detail
        self.witness = witness

    def __str__(self) -> str:
        return self.detail


class InvalidGraphError(MinorKitError):
    """Malformed graph, path or decomposition value."""

    status_code = 2


class PreconditionError(MinorKitError):
    """An operation was called outside its documented domain."""

    status_code = 2


class BudgetExceededError(MinorKitError):
    """A deadline or size guard tripped. Reported as "unknown", never as a negative answer."""

    status_code = 0


class ConstructionError(MinorKitError):
    """A construction produced output its own verifier rejects."""

    status_code = 1
