# utils/deadline.py
import time
from typing import Optional

from core.exceptions import BudgetExceededError


class Deadline:
    """Wall-clock budget shared by a single search."""

    def __init__(self, budget_ms: Optional[int] = None):
        self.budget_ms = budget_ms
        self._expires_at = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0

    def expired(self) -> bool:
        return self._expires_at is not None and time.monotonic() > self._expires_at

    def check(self, what: str) -> None:
        if self.expired():
            raise BudgetExceededError(f"{what}: budget of {self.budget_ms} ms exhausted")
