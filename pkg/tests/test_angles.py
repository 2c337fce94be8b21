import math

import numpy as np
import pytest

from foa.angles import (
    EPS_SHRINK,
    build_angle_buckets,
    candidate_bound,
    enumerate_candidates,
    solve_maxsum_angles,
)
from foa.errors import InvalidInstance, InvalidRange
from foa.geometry import Instance, Point
from foa.oracle import solve_exact
from foa.pairing import CameraPairing, Objective, evaluate
from foa.report import Limits
from tests.helpers import random_instance


def test_inner_bucket_width():
    inst = Instance((-1.0, 1.0), (Point(0.0, 5.0),))
    left, right = build_angle_buckets(inst, 0.1)
    assert left[0].lo == pytest.approx(-0.001) and left[0].hi == 0.0
    assert right[0].lo == 0.0 and right[0].hi == pytest.approx(0.001)


def test_bucket_extents_and_conformity(rng):
    for _ in range(20):
        inst = random_instance(rng, int(rng.integers(1, 5)))
        eps = rng.uniform(0.1, 0.9)
        left, right = build_angle_buckets(inst, eps)
        a = min(inst.left_reach, inst.right_reach)
        mid = inst.midpoint
        # outward from M, contiguous
        for side in (left, right):
            assert all(min(abs(x.lo - y.hi), abs(x.hi - y.lo)) == 0 for x, y in zip(side, side[1:]))
        assert min(b.lo for b in left) == pytest.approx(mid - a, rel=1e-12, abs=1e-12)
        assert max(b.hi for b in right) == pytest.approx(mid + a / eps**2, rel=1e-12)
        for b in left[1:] + right[1:]:
            assert b.near_distance(mid) * eps**2 >= b.length * (1 - 1e-9)


def test_mirror_rule():
    # a = 3 > d = 1: the buckets are those of the mirror image
    inst = Instance((-3.0, -0.5, 0.5, 1.0), (Point(0.0, 9.0), Point(0.0, 10.0)))
    mirror = inst.mirrored()
    assert build_angle_buckets(inst, 0.2) == build_angle_buckets(mirror, 0.2)
    left, _ = build_angle_buckets(inst, 0.2)
    assert min(b.lo for b in left) == pytest.approx(-1.0)


def test_single_pair_candidates():
    inst = Instance((0.0, 1.0), (Point(0.5, 3.0),))
    cands = list(enumerate_candidates(inst, 0.2))
    assert 1 <= len(cands) <= 8
    assert all(c == CameraPairing(((0, 1),)) for c in cands)


def test_candidates_are_perfect_pairings(rng):
    for _ in range(15):
        n = int(rng.integers(1, 4))
        inst = random_instance(rng, n, geometric=bool(rng.integers(2)))
        for c in enumerate_candidates(inst, 0.3):
            assert sorted(x for pr in c.pairs for x in pr) == list(range(2 * n))


def test_candidate_count_within_bound(rng):
    for _ in range(10):
        inst = random_instance(rng, int(rng.integers(1, 4)))
        count = sum(1 for _ in enumerate_candidates(inst, 0.2))
        assert count <= candidate_bound(inst, 0.2)


def test_single_pair_is_exact():
    inst = Instance((0.0, 1.0), (Point(0.2, 7.0),))
    report = solve_maxsum_angles(inst, 0.5)
    assert report.value == pytest.approx(solve_exact(inst, Objective.ANGLES).best.value)
    assert report.certified and report.config["eps_internal"] == 0.5 / EPS_SHRINK


def test_guarantee_and_recomputation(rng):
    for _ in range(10):
        inst = random_instance(rng, int(rng.integers(2, 4)))
        opt = solve_exact(inst, Objective.ANGLES).best.value
        report = solve_maxsum_angles(inst, 0.8)
        assert (1 - 0.8) * opt - 1e-9 <= report.value <= opt + 1e-9
        assert evaluate(report.assignment, inst) == pytest.approx(report.value, abs=1e-12)


def test_deterministic(rng):
    inst = random_instance(rng, 3)
    a, b = solve_maxsum_angles(inst, 0.6), solve_maxsum_angles(inst, 0.6)
    assert a.assignment == b.assignment and a.counters == b.counters


def test_invalid_inputs():
    inside = Instance((0.0, 1.0, 2.0, 3.0), (Point(1.5, 1.0), Point(1.5, 9.0)))
    with pytest.raises(InvalidInstance):
        solve_maxsum_angles(inside, 0.5)
    ok = Instance((0.0, 1.0), (Point(0.5, 3.0),))
    for eps in (0.0, 1.0, -0.2):
        with pytest.raises(InvalidRange):
            solve_maxsum_angles(ok, eps)


def test_budget_flag(rng):
    inst = random_instance(rng, 3)
    report = solve_maxsum_angles(inst, 0.6, Limits(max_candidates=2))
    assert not report.certified and report.counters["budget_exceeded"]
    assert report.counters["candidates"] == 2
    assert math.isfinite(report.value)
