"""Acceptance criteria 1-8; each test records one PASS/FAIL line for the summary."""

from __future__ import annotations

import itertools
import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from foa.angles import solve_maxsum_angles
from foa.cli import main
from foa.generate import Profile, generate
from foa.geometry import Point, Side, aspect_ratio, conforming_partition, split_ratio, tracking_angle
from foa.oracle import SearchSpace, solve_exact
from foa.pairing import CameraPairing, Objective, assign_ratios, ratio_matrix
from foa.ratios import RecursionTrace, solve_minsum_ratios
from foa.serialization import deterministic_payload, load_instance, recompute_value
from tests.helpers import ACCEPTANCE_LINES, random_instance

TOL = 1e-9


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail


def test_criterion_1_sorted_assignment_equals_matching():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 7))
        inst = random_instance(rng, n, angle_valid=False)
        perm = rng.permutation(2 * n)
        pairing = CameraPairing.from_pairs(zip(perm[:n].tolist(), perm[n:].tolist()))
        cost = ratio_matrix(pairing, inst)
        rows, cols = linear_sum_assignment(cost)
        worst = max(worst, abs(assign_ratios(pairing, inst).value - cost[rows, cols].sum()))
    elapsed = time.perf_counter() - start
    record(1, worst <= TOL and elapsed < 5, f"200 cases, max |sorted - matching| = {worst:.2e}, {elapsed:.2f}s")


def test_criterion_2_uncrossing_and_overlapping_optimum():
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    exchange_failures = 0
    for _ in range(500):
        c = np.sort(rng.uniform(-10, 10, 4))
        radius = (c[3] - c[0]) / 2
        t1, t2 = (Point(rng.uniform(c[0] - radius, c[3] + radius), radius * rng.uniform(1.01, 5)) for _ in range(2))
        # crossing (disjoint) pairs (c1,c2),(c3,c4) become (c1,c3),(c2,c4)
        ok = (
            tracking_angle(c[0], c[2], t1) >= tracking_angle(c[0], c[1], t1)
            and tracking_angle(c[1], c[3], t2) >= tracking_angle(c[2], c[3], t2)
            and aspect_ratio(c[0], c[2], t1) <= aspect_ratio(c[0], c[1], t1)
            and aspect_ratio(c[1], c[3], t2) <= aspect_ratio(c[2], c[3], t2)
        )
        exchange_failures += not ok
    worst = 0.0
    for i in range(100):
        n = 1 + i % 4
        inst = random_instance(rng, n, geometric=i % 3 == 0)
        for objective in Objective:
            a = solve_exact(inst, objective, SearchSpace.ALL_OVERLAPPING).best.value
            b = solve_exact(inst, objective, SearchSpace.ALL_PAIRINGS).best.value
            worst = max(worst, abs(a - b))
    elapsed = time.perf_counter() - start
    record(
        2,
        exchange_failures == 0 and worst <= TOL and elapsed < 60,
        f"{exchange_failures}/500 exchange failures, max oracle gap {worst:.2e} over 100x2 instances, {elapsed:.2f}s",
    )


def test_criterion_3_split_ratio_bound_and_monotonicity():
    rng = np.random.default_rng(3)
    start = time.perf_counter()
    violations = 0
    for _ in range(1000):
        while True:
            x, y, t = (Point(*rng.uniform(-10, 10, 2)) for _ in range(3))
            if abs((y.x - x.x) * (t.y - x.y) - (y.y - x.y) * (t.x - x.x)) > 1e-6:
                break
        eps = rng.uniform(0.05, 0.45)
        violations += split_ratio(x, y, t, eps)[2] > 1 / eps**2
    non_monotone = 0
    for _ in range(50):
        theta = rng.uniform(0.05, 3.0)
        eps = rng.uniform(0.05, 0.45)
        alphas = np.sort(rng.uniform(1e-3, math.pi - theta - 1e-3, 20))
        ratios = []
        for alpha in alphas:
            # x at the origin, line xy along +x, t at unit distance with angle alpha at x,
            # y placed so that the angle x t y equals theta
            t = Point(math.cos(alpha), math.sin(alpha))
            y = Point(math.sin(theta) / math.sin(alpha + theta), 0.0)
            ratios.append(split_ratio(Point(0.0, 0.0), y, t, eps)[2])
        non_monotone += any(r2 <= r1 for r1, r2 in zip(ratios, ratios[1:]))
    elapsed = time.perf_counter() - start
    record(
        3,
        violations == 0 and non_monotone == 0 and elapsed < 2,
        f"{violations}/1000 bound violations, {non_monotone}/50 non-monotone sweeps, {elapsed:.2f}s",
    )


def test_criterion_4_conforming_partition_invariant():
    rng = np.random.default_rng(4)
    slack = Fraction(1, 10**12)
    checked = failures = 0
    for _ in range(200):
        g1 = float(rng.uniform(1e-3, 10))
        g2 = g1 * float(rng.uniform(1.01, 1e3))
        eps = float(rng.uniform(0.05, 0.95))
        side = Side.LEFT if rng.integers(2) else Side.RIGHT
        for b in conforming_partition(0.0, g1, g2, eps, side):
            checked += 1
            near = Fraction(min(abs(b.lo), abs(b.hi)))
            length = Fraction(b.hi) - Fraction(b.lo)
            failures += near < length / Fraction(eps) ** 2 * (1 - slack)
    record(4, failures == 0, f"200 partitions, {checked} buckets, {failures} violations (exact arithmetic)")


def test_criterion_5_angles_guarantee():
    start = time.perf_counter()
    worst = math.inf
    failures = 0
    for seed in range(30):
        n = 2 + seed % 2
        inst = generate(n, seed, Profile.GEOMETRIC if seed % 3 == 0 else Profile.UNIFORM)
        opt = solve_exact(inst, Objective.ANGLES).best.value
        for eps in (0.8, 0.6):
            value = solve_maxsum_angles(inst, eps).value
            failures += not ((1 - eps) * opt - TOL <= value <= opt + TOL)
            worst = min(worst, value / opt)
    elapsed = time.perf_counter() - start
    record(
        5,
        failures == 0 and elapsed < 600,
        f"30 instances x 2 eps, {failures} out of bounds, worst value/OPT = {worst:.6f}, {elapsed:.1f}s",
    )


@pytest.fixture(scope="module")
def ratio_runs():
    runs = []
    start = time.perf_counter()
    for seed in range(30):
        n = 2 + seed % 3
        profile = Profile.GEOMETRIC if seed % 2 else Profile.UNIFORM
        inst = generate(n, 1000 + seed, profile)
        trace = RecursionTrace()
        report = solve_minsum_ratios(inst, 0.5, trace=trace)
        opt = solve_exact(inst, Objective.RATIOS).best.value
        runs.append((inst, report, trace, opt))
    return runs, time.perf_counter() - start


def test_criterion_6_ratios_guarantee(ratio_runs):
    runs, elapsed = ratio_runs
    failures = sum(not (opt - TOL <= r.value <= 1.5 * opt + TOL) for _, r, _, opt in runs)
    worst = max(r.value / opt for _, r, _, opt in runs)
    record(
        6,
        failures == 0 and all(r.certified for _, r, _, _ in runs) and elapsed < 600,
        f"30 instances (uniform + geometric), {failures} out of bounds, worst value/OPT = {worst:.6f}, {elapsed:.1f}s",
    )


def test_criterion_7_factor_two_and_depth(ratio_runs):
    runs, _ = ratio_runs
    nested = violations = depth_failures = 0
    for inst, report, trace, _ in runs:
        if inst.n < 2:
            continue
        depth_failures += trace.max_depth > math.ceil(math.log2(inst.n)) + 1
        for entry in trace.entries:
            for beta1, _, _ in entry.ancestors:
                nested += 1
                violations += not (entry.beta >= 2 * beta1 or entry.beta <= beta1 / 2)
    record(
        7,
        violations == 0 and depth_failures == 0 and nested > 0,
        f"{nested} nested (beta1, beta2) pairs, {violations} violations, {depth_failures} depth-bound failures",
    )


def test_criterion_8_determinism_and_round_trip(tmp_path, capsys):
    mismatches = bad_values = reports = 0
    cases = itertools.product(
        [(2, 7, "uniform"), (3, 8, "geometric"), (4, 9, "uniform")],
        [("angles", "qptas"), ("ratios", "qptas"), ("angles", "exact"), ("ratios", "heuristic")],
    )
    for (n, seed, profile), (objective, algorithm) in cases:
        payloads = []
        for run in ("a", "b"):
            inst_path = tmp_path / f"{n}-{seed}-{run}.json"
            report_path = tmp_path / f"{n}-{seed}-{objective}-{algorithm}-{run}.report.json"
            assert main(["generate", "--n", str(n), "--seed", str(seed), "--profile", profile, "--out", str(inst_path)]) == 0
            code = main(["solve", str(inst_path), "--objective", objective, "--algorithm", algorithm,
                         "--epsilon", "0.5", "--out", str(report_path)])
            assert code == 0
            doc = json.loads(report_path.read_text())
            reports += 1
            bad_values += abs(recompute_value(doc, load_instance(inst_path)) - doc["value"]) > TOL
            payloads.append(deterministic_payload(doc))
        mismatches += payloads[0] != payloads[1]
    capsys.readouterr()
    record(
        8,
        mismatches == 0 and bad_values == 0,
        f"{reports} reports, {mismatches} non-identical payload pairs, {bad_values} values off by > 1e-9",
    )
