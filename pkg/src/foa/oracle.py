"""Brute-force optimum for small instances, used as ground truth."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import InstanceTooLarge
from .geometry import Instance
from .pairing import Assignment, CameraPairing, Objective, assign

ALL_OVERLAPPING_CAP = 8
ALL_PAIRINGS_CAP = 6


class SearchSpace(str, enum.Enum):
    ALL_OVERLAPPING = "all-overlapping"
    ALL_PAIRINGS = "all-pairings"


@dataclass(frozen=True)
class OracleResult:
    best: Assignment
    pairings_examined: int
    objective: Objective


def overlapping_pairings(n: int) -> Iterator[CameraPairing]:
    """Every pairing of left cameras 0..n-1 with right cameras n..2n-1."""
    for perm in itertools.permutations(range(n, 2 * n)):
        yield CameraPairing(tuple(zip(range(n), perm)))


def all_pairings(n: int) -> Iterator[CameraPairing]:
    """Every perfect pairing of 2n cameras, (2n-1)!! of them."""

    def rec(rest):
        if not rest:
            yield ()
            return
        first = rest[0]
        for k in range(1, len(rest)):
            for tail in rec(rest[1:k] + rest[k + 1:]):
                yield ((first, rest[k]),) + tail

    for pairs in rec(tuple(range(2 * n))):
        yield CameraPairing(tuple(sorted(pairs)))


def better(candidate: Assignment, incumbent: Assignment | None, objective: Objective, tol: float = 1e-12) -> bool:
    """Strictly better value, or a tie broken towards the smaller canonical pairing."""
    if incumbent is None:
        return True
    diff = candidate.value - incumbent.value
    if objective is Objective.RATIOS:
        diff = -diff
    scale = tol * max(1.0, abs(incumbent.value))
    if diff > scale:
        return True
    if diff < -scale:
        return False
    return (candidate.pairing.pairs, candidate.target_of_pair) < (
        incumbent.pairing.pairs,
        incumbent.target_of_pair,
    )


def solve_exact(
    instance: Instance,
    objective: Objective,
    search_space: SearchSpace = SearchSpace.ALL_OVERLAPPING,
    cap: int | None = None,
) -> OracleResult:
    objective = Objective(objective)
    search_space = SearchSpace(search_space)
    n = instance.n
    if search_space is SearchSpace.ALL_OVERLAPPING:
        limit = ALL_OVERLAPPING_CAP if cap is None else cap
        source = overlapping_pairings(n)
    else:
        limit = ALL_PAIRINGS_CAP if cap is None else cap
        source = all_pairings(n)
    if n > limit:
        raise InstanceTooLarge(f"n={n} exceeds the {search_space.value} oracle cap of {limit}")
    best = None
    count = 0
    for pairing in source:
        count += 1
        cand = assign(pairing, instance, objective)
        if better(cand, best, objective):
            best = cand
    return OracleResult(best, count, objective)
