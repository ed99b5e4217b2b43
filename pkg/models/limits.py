from dataclasses import dataclass, replace
from typing import Optional

BACKENDS = ("backtrack", "cpsat")


@dataclass(frozen=True)
class EngineLimits:
    """
    Caps and execution settings shared by every engine.

    Attributes:
        max_edges: Largest Kneser edge count materialized or counted
        max_members: Largest set system a constructor may enumerate
        max_defect_size: Largest removal size the defect search may reach (None: unbounded)
        time_budget_seconds: Wall-clock budget per engine call (None: unbounded)
        threads: Worker count; 1 keeps every output reproducible
        backend: "backtrack" (exact search in Python) or "cpsat" (OR-Tools CP-SAT)
        cpsat_seed: Random seed handed to CP-SAT
    """
    max_edges: int = 10_000_000
    max_members: int = 1_000_000
    max_defect_size: Optional[int] = None
    time_budget_seconds: Optional[float] = None
    threads: int = 1
    backend: str = "backtrack"
    cpsat_seed: int = 0

    def __post_init__(self):
        if self.max_edges < 0:
            raise ValueError("max_edges must be non-negative")
        if self.max_members < 0:
            raise ValueError("max_members must be non-negative")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}, expected one of {BACKENDS}")

    def with_overrides(self, **changes) -> "EngineLimits":
        return replace(self, **changes)


DEFAULT_LIMITS = EngineLimits()
