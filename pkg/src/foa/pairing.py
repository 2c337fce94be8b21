"""Camera pairings and optimal pair-to-target association.

Camera and target indices are 0-based throughout the library; the JSON
report layer converts to 1-based.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import InvalidInstance
from .geometry import Instance, aspect_ratio, tracking_angle
from .matching import solve_assignment


class Objective(str, enum.Enum):
    ANGLES = "angles"
    RATIOS = "ratios"


@dataclass(frozen=True)
class CameraPairing:
    """A perfect pairing of 2n cameras in canonical form.

    Each pair is ``(left, right)`` with ``left < right``; pairs are sorted by
    their left index.
    """

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], size: int | None = None) -> "CameraPairing":
        canon = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
        used = [c for p in canon for c in p]
        if any(a == b for a, b in canon) or len(set(used)) != len(used):
            raise InvalidInstance(f"not a pairing: {canon}")
        expected = range(size) if size is not None else range(len(used))
        if sorted(used) != list(expected):
            raise InvalidInstance(f"pairing does not cover cameras {list(expected)}: {canon}")
        return cls(canon)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


class DummyPairing:
    """Sentinel for an infeasible guess; its cost against any targets is +inf."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DUMMY"


DUMMY = DummyPairing()

AnyPairing = Union[CameraPairing, DummyPairing]


@dataclass(frozen=True)
class Assignment:
    pairing: AnyPairing
    target_of_pair: tuple[int, ...]
    objective: Objective
    value: float

    def triples(self) -> list[tuple[int, int, int]]:
        """``(left_camera, right_camera, target)`` per pair, 0-based."""
        if isinstance(self.pairing, DummyPairing):
            return []
        return [(a, b, t) for (a, b), t in zip(self.pairing.pairs, self.target_of_pair)]


def is_all_overlapping(pairing: CameraPairing, instance: Instance) -> bool:
    n = instance.n
    return all(a < n <= b for a, b in pairing.pairs)


def _crossing(pairs, cams):
    """First (p, q) in left-endpoint order with disjoint baselines, else None."""
    for x in range(len(pairs)):
        for y in range(x + 1, len(pairs)):
            (i, j), (k, l) = pairs[x], pairs[y]
            if cams[j] < cams[k] or cams[l] < cams[i]:
                return x, y
    return None


def uncross(pairing: CameraPairing, instance: Instance) -> CameraPairing:
    """Exchange disjoint pairs (ci,cj),(ci',cj') -> (ci,ci'),(cj,cj') until all overlap.

    Each exchange strictly lengthens the total baseline, so the loop ends.
    """
    cams = instance.cameras
    pairs = sorted(pairing.pairs)
    while True:
        hit = _crossing(pairs, cams)
        if hit is None:
            return CameraPairing(tuple(pairs))
        x, y = hit
        (i, j), (k, l) = sorted([pairs[x], pairs[y]])
        pairs[x], pairs[y] = (i, k), (j, l)
        pairs.sort()


def angle_matrix(pairing: CameraPairing, instance: Instance) -> np.ndarray:
    cams = instance.cameras
    return np.array(
        [[tracking_angle(cams[a], cams[b], t) for t in instance.targets] for a, b in pairing.pairs],
        dtype=float,
    ).reshape(len(pairing), instance.n)


def ratio_matrix(pairing: CameraPairing, instance: Instance) -> np.ndarray:
    cams = instance.cameras
    return np.array(
        [[aspect_ratio(cams[a], cams[b], t) for t in instance.targets] for a, b in pairing.pairs],
        dtype=float,
    ).reshape(len(pairing), instance.n)


def assign_angles(pairing: CameraPairing, instance: Instance) -> Assignment:
    """Bijection pairs -> targets maximising the total tracking angle."""
    cols, total = solve_assignment(angle_matrix(pairing, instance), maximize=True)
    return Assignment(pairing, tuple(cols), Objective.ANGLES, total)


def sorted_ratio_assignment(baselines, depths) -> tuple[list[int], float]:
    """Shallowest target on shortest baseline, and so on up the ranks.

    Stable sorts keep equal keys in index order, which makes the result the
    lexicographically smallest among equivalent rank matchings.
    """
    by_base = sorted(range(len(baselines)), key=lambda p: baselines[p])
    by_depth = sorted(range(len(depths)), key=lambda k: depths[k])
    target_of = [0] * len(baselines)
    for p, k in zip(by_base, by_depth):
        target_of[p] = k
    total = math.fsum(depths[target_of[p]] / baselines[p] for p in range(len(baselines)))
    return target_of, total


def assign_ratios(pairing: CameraPairing, instance: Instance) -> Assignment:
    cams = instance.cameras
    baselines = [cams[b] - cams[a] for a, b in pairing.pairs]
    target_of, total = sorted_ratio_assignment(baselines, instance.depths())
    return Assignment(pairing, tuple(target_of), Objective.RATIOS, total)


def assign(pairing: AnyPairing, instance: Instance, objective: Objective) -> Assignment:
    objective = Objective(objective)
    if isinstance(pairing, DummyPairing):
        return Assignment(pairing, (), objective, math.inf)
    if objective is Objective.ANGLES:
        return assign_angles(pairing, instance)
    return assign_ratios(pairing, instance)


def evaluate(assignment: Assignment, instance: Instance) -> float:
    """Recompute the objective of ``assignment`` from scratch."""
    if isinstance(assignment.pairing, DummyPairing):
        return math.inf
    cams = instance.cameras
    cost = tracking_angle if Objective(assignment.objective) is Objective.ANGLES else aspect_ratio
    return math.fsum(cost(cams[a], cams[b], instance.targets[t]) for a, b, t in assignment.triples())


def pairing_cost(pairing: AnyPairing, instance: Instance, objective: Objective) -> float:
    """cost(P, T): objective value of the best association for a fixed pairing."""
    return assign(pairing, instance, objective).value
