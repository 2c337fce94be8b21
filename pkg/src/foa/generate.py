"""Seeded random instances."""

from __future__ import annotations

import enum

import numpy as np

from .geometry import Instance, Point


class Profile(str, enum.Enum):
    UNIFORM = "uniform"
    GEOMETRIC = "geometric"


def _cameras(n: int, rng: np.random.Generator, profile: Profile) -> np.ndarray:
    if profile is Profile.UNIFORM:
        cams = np.sort(rng.uniform(0.0, 2.0 * n, 2 * n))
    else:
        # gap i ~ 10^i, shuffled so the widest gaps are not always on the right
        gaps = 10.0 ** np.arange(2 * n - 1) * rng.uniform(0.5, 1.5, 2 * n - 1)
        rng.shuffle(gaps)
        cams = np.concatenate([[0.0], np.cumsum(gaps)])
    while np.any(np.diff(cams) <= 0):
        dup = np.flatnonzero(np.diff(cams) <= 0) + 1
        cams[dup] += rng.uniform(1e-9, 1e-6, dup.size) * max(1.0, abs(cams[-1]))
        cams.sort()
    return cams


def generate(n: int, seed: int, profile: Profile = Profile.UNIFORM, thales_margin: float = 1.5) -> Instance:
    """Random angle-valid instance.

    Target depths are ``thales_margin * r * U(1, 2)`` with r the radius of
    the circle on [c_1, c_2n], so every target sits outside that circle.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if not thales_margin > 1:
        raise ValueError(f"thales_margin must exceed 1, got {thales_margin}")
    profile = Profile(profile)
    rng = np.random.default_rng(seed)
    cams = _cameras(n, rng, profile)
    radius = 0.5 * (cams[-1] - cams[0])
    xs = rng.uniform(cams[0], cams[-1], n)
    ys = thales_margin * radius * rng.uniform(1.0, 2.0, n)
    return Instance(tuple(float(c) for c in cams), tuple(Point(float(x), float(y)) for x, y in zip(xs, ys)))
