"""Recursive quasi-polynomial (1 + eps)-approximation for the minimum sum of aspect ratios.

``min_ratio_pair`` guesses the median baseline ``beta`` of an optimal
pairing, buckets [M - 2n beta, M + 2n beta] geometrically around M and, for
every guess of medium pairs per bucket pair (mu) and short-pair endpoints
per bucket (sigma), fixes the medium pairs and recurses separately on the
short and long remainders.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

from .combinatorics import bounded_matrices, vectors_by_total
from .errors import ConstraintViolated, InvalidInstance, InvalidRange
from .geometry import Instance, ratio_discretization, validate_for_ratios
from .pairing import DUMMY, AnyPairing, CameraPairing, Objective, assign_ratios, sorted_ratio_assignment
from .report import Limits, SolveReport

EPS_SHRINK = 10
_REL_TOL = 1e-12


@dataclass(frozen=True)
class RatioCall:
    """Arguments of one recursive call: cameras X, targets Y, baseline bounds."""

    cameras: tuple[int, ...]
    targets: tuple[int, ...]
    lower: float
    upper: float
    depth: int = 1


@dataclass(frozen=True)
class TraceEntry:
    depth: int
    beta: float
    lower: float
    upper: float
    # (beta, lower, upper) of every enclosing call, outermost first
    ancestors: tuple[tuple[float, float, float], ...]


@dataclass
class RecursionTrace:
    entries: list[TraceEntry] = field(default_factory=list)
    max_depth: int = 0


def assign_cameras_to_classes(
    left_groups: Sequence[Sequence[int]],
    right_groups: Sequence[Sequence[int]],
    mu: Sequence[Sequence[int]],
    sigma_left: Sequence[int],
    sigma_right: Sequence[int],
    outside: Sequence[int] = (),
) -> tuple[list[int], list[int], list[int], list[tuple[int, int]]]:
    """Split bucketed cameras into short, medium and long classes.

    ``left_groups[p]`` / ``right_groups[q]`` list the cameras of each bucket
    ordered nearest-to-M first.  Bucket pairs are processed in (p, q) order;
    each takes its ``mu[p][q]`` cameras nearest M on both sides.  Of what is
    left in a bucket the ``sigma`` farthest cameras become short endpoints
    and the rest long ones.  ``outside`` cameras (beyond the bucketed
    region) are always long.

    Returns ``(X_short, X_mid, X_long, P_mid)``.
    """
    if sum(sigma_left) != sum(sigma_right):
        raise ConstraintViolated("sigma totals differ between the two sides")
    left = [list(g) for g in left_groups]
    right = [list(g) for g in right_groups]
    p_mid: list[tuple[int, int]] = []
    for p in range(len(left)):
        for q in range(len(right)):
            k = mu[p][q]
            if k < 0 or k > len(left[p]) or k > len(right[q]):
                raise ConstraintViolated(f"mu[{p}][{q}]={k} exceeds bucket occupancy")
            if k:
                p_mid += list(zip(left[p][:k], right[q][:k]))
                left[p] = left[p][k:]
                right[q] = right[q][k:]
    x_short: list[int] = []
    x_long: list[int] = list(outside)
    for groups, sigma in ((left, sigma_left), (right, sigma_right)):
        for g, s in zip(groups, sigma):
            if s < 0 or s > len(g):
                raise ConstraintViolated(f"sigma={s} exceeds the {len(g)} remaining cameras")
            cut = len(g) - s
            x_long += g[:cut]
            x_short += g[cut:]
    x_mid = [c for pr in p_mid for c in pr]
    return x_short, x_mid, x_long, p_mid


def _guesses(lg, rg):
    """Every feasible (mu, sigma_left, sigma_right) for the given bucket occupancies."""
    for mu in bounded_matrices([len(g) for g in lg], [len(g) for g in rg]):
        rest_l = [len(g) - sum(row) for g, row in zip(lg, mu)]
        rest_r = [len(g) - sum(mu[p][q] for p in range(len(lg))) for q, g in enumerate(rg)]
        left_sig = vectors_by_total(rest_l)
        right_sig = vectors_by_total(rest_r)
        for total in sorted(left_sig):
            for sl in left_sig[total]:
                for sr in right_sig.get(total, ()):
                    yield mu, sl, sr


class _RatioSearch:
    def __init__(self, instance: Instance, eps: float, limits: Limits, trace: RecursionTrace | None):
        self.cams = instance.cameras
        self.depths = instance.depths()
        self.n = instance.n
        self.mid = instance.midpoint
        self.eps = eps
        self.limits = limits
        self.trace = trace
        self.examined = 0
        self.calls = 0
        self.max_depth = 0
        self.exhausted = False

    def cost(self, pairs, targets) -> float:
        base = [self.cams[b] - self.cams[a] for a, b in pairs]
        return sorted_ratio_assignment(base, [self.depths[t] for t in targets])[1]

    def _groups(self, cams_in_x, buckets, outward):
        """Cameras of X per non-empty bucket (bucket order outward from M)."""
        ordered = list(reversed(buckets)) if outward else list(buckets)
        groups: dict[int, list[int]] = {}
        placed = set()
        for pos, b in enumerate(ordered):
            inside = [c for c in cams_in_x if c not in placed and b.contains(self.cams[c])]
            if inside:
                inside.sort(key=lambda c: abs(self.cams[c] - self.mid))
                groups[pos] = inside
                placed.update(inside)
        outside = [c for c in cams_in_x if c not in placed]
        return [groups[k] for k in sorted(groups)], outside

    def solve(self, call: RatioCall, ancestors=()):
        """Return ``(pairs or None, cost)``; None stands for the dummy pairing."""
        xs, ys = call.cameras, call.targets
        if not xs:
            return [], 0.0
        self.calls += 1
        self.max_depth = max(self.max_depth, call.depth)
        cams, n, eps = self.cams, self.n, self.eps
        m = len(ys)
        xs = sorted(xs, key=lambda c: cams[c])
        ys = sorted(ys, key=lambda t: (self.depths[t], t))
        lefts, rights = xs[:m], xs[m:]
        lo_ok = call.lower * (1 - _REL_TOL)
        hi_ok = call.upper * (1 + _REL_TOL)
        betas = sorted({cams[j] - cams[i] for i in lefts for j in rights if lo_ok <= cams[j] - cams[i] <= hi_ok})

        best, best_pairs = math.inf, None
        for beta in betas:
            if self.trace is not None:
                self.trace.entries.append(TraceEntry(call.depth, beta, call.lower, call.upper, ancestors))
            left_b, right_b = ratio_discretization(self.mid, beta, n, eps)
            lg, l_out = self._groups(lefts, left_b, outward=True)
            rg, r_out = self._groups(rights, right_b, outward=False)
            outside = l_out + r_out
            short_up = (1 + eps) * beta / (2 * n)
            long_lo = (1 - eps) * 2 * n * beta
            long_up = call.upper * (1 + eps)
            chain = ancestors + ((beta, call.lower, call.upper),)

            for mu, sl, sr in _guesses(lg, rg):
                if self.examined >= self.limits.max_candidates:
                    self.exhausted = True
                    return best_pairs, best
                self.examined += 1
                m_mid = sum(map(sum, mu))
                m_short = sum(sl)
                m_long = m - m_short - m_mid
                if 2 * m_short > m or 2 * m_long > m:
                    continue
                x_short, _, x_long, p_mid = assign_cameras_to_classes(lg, rg, mu, sl, sr, outside)
                ps, _ = self.solve(
                    RatioCall(tuple(x_short), tuple(ys[:m_short]), call.lower, short_up, call.depth + 1),
                    chain,
                )
                pl = None
                if ps is not None:
                    pl, _ = self.solve(
                        RatioCall(tuple(x_long), tuple(ys[m_short + m_mid:]), long_lo, long_up, call.depth + 1),
                        chain,
                    )
                if pl is not None:
                    pairs = p_mid + ps + pl
                    c = self.cost(pairs, ys)
                    if c < best:
                        best, best_pairs = c, pairs
                if self.exhausted:
                    return best_pairs, best
        return best_pairs, best


def min_ratio_pair(
    instance: Instance,
    call: RatioCall,
    eps_internal: float,
    trace: RecursionTrace | None = None,
    limits: Limits | None = None,
) -> AnyPairing:
    """Run the recursion on one call; returns a pairing of ``call.cameras`` or DUMMY."""
    search = _RatioSearch(instance, eps_internal, limits or Limits(), trace)
    pairs, _ = search.solve(call)
    if trace is not None:
        trace.max_depth = max(trace.max_depth, search.max_depth)
    if pairs is None:
        return DUMMY
    return CameraPairing(tuple(sorted((min(a, b), max(a, b)) for a, b in pairs)))


def solve_minsum_ratios(
    instance: Instance,
    epsilon: float,
    limits: Limits | None = None,
    trace: RecursionTrace | None = None,
) -> SolveReport:
    if not 0 < epsilon < 1:
        raise InvalidRange(f"epsilon must be in (0, 1), got {epsilon}")
    verdict = validate_for_ratios(instance)
    if not verdict:
        raise InvalidInstance("; ".join(verdict.reasons))
    limits = limits or Limits()
    eps_internal = epsilon / EPS_SHRINK
    n, cams = instance.n, instance.cameras
    start = time.perf_counter()

    search = _RatioSearch(instance, eps_internal, limits, trace)
    top = RatioCall(tuple(range(2 * n)), tuple(range(n)), cams[n] - cams[n - 1], cams[-1] - cams[0])
    pairs, _ = search.solve(top)
    exhausted = search.exhausted
    if trace is not None:
        trace.max_depth = max(trace.max_depth, search.max_depth)
    if pairs is None:
        # nothing complete before the cap: fall back to the shift pairing
        pairs = [(i, n + i) for i in range(n)]
    pairing = CameraPairing(tuple(sorted(pairs)))
    return SolveReport(
        algorithm="qptas",
        objective=Objective.RATIOS,
        epsilon=epsilon,
        assignment=assign_ratios(pairing, instance),
        certified=not exhausted,
        counters={
            "candidates": search.examined,
            "calls": search.calls,
            "recursion_depth": search.max_depth,
            "budget_exceeded": exhausted,
        },
        config={"eps_internal": eps_internal, "max_candidates": limits.max_candidates},
        wall_ms=1000.0 * (time.perf_counter() - start),
    )
