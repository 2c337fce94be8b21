"""Single entry point that dispatches to the exact, QPTAS and heuristic solvers."""

from __future__ import annotations

import enum
import time

from .angles import solve_maxsum_angles
from .errors import InvalidInstance
from .geometry import Instance, validate_for_angles, validate_for_ratios
from .heuristics import best_heuristic
from .oracle import SearchSpace, solve_exact
from .pairing import Objective
from .ratios import solve_minsum_ratios
from .report import Limits, SolveReport


class Algorithm(str, enum.Enum):
    EXACT = "exact"
    QPTAS = "qptas"
    HEURISTIC = "heuristic"


def validate(instance: Instance, objective: Objective):
    if Objective(objective) is Objective.ANGLES:
        return validate_for_angles(instance)
    return validate_for_ratios(instance)


def exact_report(instance: Instance, objective: Objective, cap: int | None = None) -> SolveReport:
    start = time.perf_counter()
    result = solve_exact(instance, objective, SearchSpace.ALL_OVERLAPPING, cap=cap)
    return SolveReport(
        algorithm="exact",
        objective=Objective(objective),
        epsilon=None,
        assignment=result.best,
        certified=True,
        counters={"candidates": result.pairings_examined, "budget_exceeded": False},
        config={"search_space": SearchSpace.ALL_OVERLAPPING.value},
        wall_ms=1000.0 * (time.perf_counter() - start),
    )


def solve(
    instance: Instance,
    objective: Objective,
    algorithm: Algorithm,
    epsilon: float | None = None,
    limits: Limits | None = None,
) -> SolveReport:
    objective = Objective(objective)
    algorithm = Algorithm(algorithm)
    verdict = validate(instance, objective)
    if not verdict:
        raise InvalidInstance("; ".join(verdict.reasons))
    if algorithm is Algorithm.EXACT:
        return exact_report(instance, objective)
    if algorithm is Algorithm.HEURISTIC:
        return best_heuristic(instance, objective)
    if epsilon is None:
        raise ValueError("the qptas algorithm needs an epsilon")
    if objective is Objective.ANGLES:
        return solve_maxsum_angles(instance, epsilon, limits)
    return solve_minsum_ratios(instance, epsilon, limits)
