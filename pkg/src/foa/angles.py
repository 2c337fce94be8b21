"""Quasi-polynomial (1 - eps)-approximation for the maximum sum of tracking angles.

Cameras left of M are bucketed by a conforming partition of [M - a, M],
cameras right of M by one of [M, M + a/eps^2].  Each guess of how many
"sensitive" pairs start in each bucket (sigma, pi), how many pairs join
each bucket pair (mu) and how many far-reaching pairs remain (lambda)
yields one candidate pairing; the best candidate under optimal
pair-to-target matching wins.
"""

from __future__ import annotations

import itertools
import time
from typing import Iterator, Sequence

from .combinatorics import bounded_matrices
from .errors import InvalidInstance, InvalidRange
from .geometry import Bucket, Instance, Side, conforming_partition, validate_for_angles
from .oracle import better
from .pairing import CameraPairing, Objective, assign_angles
from .report import Limits, SolveReport

EPS_SHRINK = 4


def _oriented(instance: Instance) -> tuple[Instance, bool]:
    if instance.left_reach > instance.right_reach:
        return instance.mirrored(), True
    return instance, False


def build_angle_buckets(instance: Instance, eps_internal: float) -> tuple[list[Bucket], list[Bucket]]:
    """Buckets ``[B_0, B_1, ..., B_k]`` and ``[B'_0, B'_1, ..., B'_j]``.

    Both lists run outward from M.  If a > d the buckets are those of the
    mirrored instance (see :meth:`Instance.mirrored`).
    """
    inst, _ = _oriented(instance)
    n, mid, a = inst.n, inst.midpoint, inst.left_reach
    inner = eps_internal * a / (100.0 * n * n)
    left = [Bucket(mid - inner, mid, Side.LEFT)]
    left += list(reversed(conforming_partition(mid, inner, a, eps_internal, Side.LEFT).buckets))
    right = [Bucket(mid, mid + inner, Side.RIGHT)]
    right += list(conforming_partition(mid, inner, a / eps_internal**2, eps_internal, Side.RIGHT).buckets)
    return left, right


def _bucket_members(cams: Sequence[float], indices: Sequence[int], buckets: Sequence[Bucket]) -> dict[int, list[int]]:
    """Map bucket position -> camera indices inside it (sorted by x).

    A camera on a shared boundary goes to the bucket nearer M.
    """
    members: dict[int, list[int]] = {}
    for c in indices:
        for pos, b in enumerate(buckets):
            if b.contains(cams[c]):
                members.setdefault(pos, []).append(c)
                break
    for lst in members.values():
        lst.sort(key=lambda c: cams[c])
    return members


def _pair_in_order(lefts, rights, cams):
    return list(zip(sorted(lefts, key=lambda c: cams[c]), sorted(rights, key=lambda c: cams[c])))


def _enumerate_oriented(inst: Instance, eps_internal: float) -> Iterator[list[tuple[int, int]]]:
    n, cams = inst.n, inst.cameras
    left_b, right_b = build_angle_buckets(inst, eps_internal)
    L0 = list(range(n))
    R0 = list(range(n, 2 * n))
    left_members = _bucket_members(cams, L0, left_b)
    sigma_buckets = sorted(p for p in left_members if p >= 1)

    for sigma in itertools.product(*(range(len(left_members[p]) + 1) for p in sigma_buckets)):
        chosen = []
        for p, s in zip(sigma_buckets, sigma):
            chosen.extend(left_members[p][:s])
        R1 = sorted(R0, key=lambda c: cams[c])
        fixed1 = _pair_in_order(chosen, R1[: len(chosen)], cams)
        R1 = R1[len(chosen):]
        L1 = [c for c in L0 if c not in set(chosen)]

        right_members = _bucket_members(cams, R1, right_b)
        pi_buckets = sorted(p for p in right_members if p >= 1)
        for pi in itertools.product(*(range(len(right_members[p]) + 1) for p in pi_buckets)):
            chosen_r = []
            for p, s in zip(pi_buckets, pi):
                chosen_r.extend(right_members[p][len(right_members[p]) - s:])
            L2 = sorted(L1, key=lambda c: cams[c])
            take = L2[len(L2) - len(chosen_r):] if chosen_r else []
            fixed2 = fixed1 + _pair_in_order(take, chosen_r, cams)
            L2 = L2[: len(L2) - len(chosen_r)]
            R2 = [c for c in R1 if c not in set(chosen_r)]

            lm = _bucket_members(cams, L2, left_b)
            rm = _bucket_members(cams, R2, right_b)
            lkeys, rkeys = sorted(lm), sorted(rm)
            for mu in bounded_matrices([len(lm[p]) for p in lkeys], [len(rm[q]) for q in rkeys]):
                fixed3 = list(fixed2)
                avail_l = {p: list(lm[p]) for p in lkeys}
                avail_r = {q: list(rm[q]) for q in rkeys}
                for x, p in enumerate(lkeys):
                    for y, q in enumerate(rkeys):
                        k = mu[x][y]
                        if k:
                            fixed3 += list(zip(avail_l[p][:k], avail_r[q][:k]))
                            avail_l[p] = avail_l[p][k:]
                            avail_r[q] = avail_r[q][k:]
                used = {c for pr in fixed3 for c in pr}
                L3 = sorted((c for c in L2 if c not in used), key=lambda c: cams[c])
                R3 = sorted((c for c in R2 if c not in used), key=lambda c: cams[c])
                for lam in range(len(L3) + 1):
                    pairs = fixed3 + _pair_in_order(L3[:lam], R3[:lam], cams)
                    pairs += _pair_in_order(L3[lam:], R3[lam:], cams)
                    yield pairs


def enumerate_candidates(instance: Instance, eps_internal: float) -> Iterator[CameraPairing]:
    """One candidate pairing per (sigma, pi, mu, lambda) guess, in ``instance`` indices.

    Only buckets currently holding unpaired cameras get a map entry.  Pairs
    chosen "arbitrarily" are formed in left-to-right order on both sides.
    """
    inst, flipped = _oriented(instance)
    last = 2 * inst.n - 1
    for pairs in _enumerate_oriented(inst, eps_internal):
        if flipped:
            pairs = [(last - b, last - a) for a, b in pairs]
        yield CameraPairing(tuple(sorted(pairs)))


def solve_maxsum_angles(instance: Instance, epsilon: float, limits: Limits | None = None) -> SolveReport:
    """Best candidate pairing; within (1 - epsilon) of optimal unless the budget ran out."""
    if not 0 < epsilon < 1:
        raise InvalidRange(f"epsilon must be in (0, 1), got {epsilon}")
    verdict = validate_for_angles(instance)
    if not verdict:
        raise InvalidInstance("; ".join(verdict.reasons))
    limits = limits or Limits()
    eps_internal = epsilon / EPS_SHRINK
    start = time.perf_counter()

    seen: set = set()
    best = None
    examined = 0
    exhausted = False
    for pairing in enumerate_candidates(instance, eps_internal):
        if examined >= limits.max_candidates:
            exhausted = True
            break
        examined += 1
        if pairing.pairs in seen:
            continue
        seen.add(pairing.pairs)
        cand = assign_angles(pairing, instance)
        if better(cand, best, Objective.ANGLES):
            best = cand

    left_b, right_b = build_angle_buckets(instance, eps_internal)
    return SolveReport(
        algorithm="qptas",
        objective=Objective.ANGLES,
        epsilon=epsilon,
        assignment=best,
        certified=not exhausted,
        counters={
            "candidates": examined,
            "distinct_pairings": len(seen),
            "left_buckets": len(left_b),
            "right_buckets": len(right_b),
            "budget_exceeded": exhausted,
        },
        config={"eps_internal": eps_internal, "max_candidates": limits.max_candidates},
        wall_ms=1000.0 * (time.perf_counter() - start),
    )


def candidate_bound(instance: Instance, eps_internal: float) -> int:
    """Crude upper bound on the number of guesses: (n+1)^(k + j + (k+1)(j+1) + 1).

    k, j count the buckets B_1..B_k and B'_1..B'_j that contain cameras.
    """
    inst, _ = _oriented(instance)
    left_b, right_b = build_angle_buckets(inst, eps_internal)
    n = inst.n
    k = sum(1 for p in _bucket_members(inst.cameras, range(n), left_b) if p >= 1)
    j = sum(1 for p in _bucket_members(inst.cameras, range(n, 2 * n), right_b) if p >= 1)
    return (n + 1) ** (k + j + (k + 1) * (j + 1) + 1)

