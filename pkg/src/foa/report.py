from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .pairing import Assignment, Objective

DEFAULT_MAX_CANDIDATES = 10**7


@dataclass(frozen=True)
class Limits:
    max_candidates: int = DEFAULT_MAX_CANDIDATES


@dataclass
class SolveReport:
    """Outcome of one solver run.

    ``certified`` is False when the run carries no approximation guarantee,
    either because the algorithm has none (heuristics) or because an
    enumeration cap cut the search short (``budget_exceeded``).
    """

    algorithm: str
    objective: Objective
    epsilon: float | None
    assignment: Assignment
    certified: bool
    counters: dict[str, Any] = field(default_factory=dict)
    config: dict[str, Any] = field(default_factory=dict)
    wall_ms: float = 0.0

    @property
    def value(self) -> float:
        return self.assignment.value

    @property
    def budget_exceeded(self) -> bool:
        return bool(self.counters.get("budget_exceeded", False))
