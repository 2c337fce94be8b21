"""Shared test helpers."""

from __future__ import annotations

import numpy as np

from foa.geometry import Instance, Point

ACCEPTANCE_LINES: list[str] = []


def random_instance(rng: np.random.Generator, n: int, geometric: bool = False, angle_valid: bool = True) -> Instance:
    """Random instance; depths spread over two orders of magnitude above the Thales circle."""
    if geometric:
        gaps = 10.0 ** np.arange(2 * n - 1) * rng.uniform(0.5, 1.5, 2 * n - 1)
        rng.shuffle(gaps)
        cams = np.concatenate([[0.0], np.cumsum(gaps)])
    else:
        cams = np.sort(rng.uniform(-10, 10, 2 * n))
    radius = 0.5 * (cams[-1] - cams[0])
    targets = []
    for _ in range(n):
        x = rng.uniform(cams[0] - radius, cams[-1] + radius)
        if angle_valid:
            y = radius * (1.01 + rng.exponential(2.0))
        else:
            y = radius * rng.uniform(0.01, 3.0)
        targets.append(Point(float(x), float(y)))
    return Instance(tuple(float(c) for c in cams), tuple(targets))
