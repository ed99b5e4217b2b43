import time
from typing import Optional

from models.limits import EngineLimits
from utils.errors import CapExceededError


class Deadline:
    """Wall-clock budget polled from inside search loops"""

    # polls between clock reads
    STRIDE = 256

    def __init__(self, seconds: Optional[float]):
        self.seconds = seconds
        self.expires_at = None if seconds is None else time.monotonic() + seconds
        self._ticks = 0

    @classmethod
    def from_limits(cls, limits: EngineLimits) -> "Deadline":
        return cls(limits.time_budget_seconds)

    def remaining(self) -> Optional[float]:
        if self.expires_at is None:
            return None
        return max(0.0, self.expires_at - time.monotonic())

    def check(self) -> None:
        if self.expires_at is None:
            return
        self._ticks += 1
        if self._ticks % self.STRIDE:
            return
        if time.monotonic() > self.expires_at:
            raise CapExceededError("time_budget_seconds", self.seconds)
