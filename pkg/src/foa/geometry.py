"""Planar geometry kernels for collinear cameras and targets.

Cameras sit on the horizontal line y = 0 and are identified by their
x-coordinate.  Targets are arbitrary points; objectives only depend on the
target depth |y| so targets below the line can be reflected upwards.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import DegenerateGeometry, InvalidInstance, InvalidRange


class Point(NamedTuple):
    x: float
    y: float


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Instance:
    """Cameras on a line plus planar targets.

    ``cameras`` are x-coordinates and are expected to be strictly increasing;
    that (and target depth) is checked by :func:`validate_for_angles` and
    :func:`validate_for_ratios`, not here, so malformed inputs can still be
    represented and reported on.
    """

    cameras: tuple[float, ...]
    targets: tuple[Point, ...]

    def __post_init__(self):
        cams = tuple(float(c) for c in self.cameras)
        tgts = tuple(Point(float(t[0]), float(t[1])) for t in self.targets)
        if len(cams) != 2 * len(tgts):
            raise InvalidInstance(
                f"need exactly two cameras per target, got {len(cams)} cameras "
                f"and {len(tgts)} targets"
            )
        if not all(math.isfinite(v) for v in cams) or not all(
            math.isfinite(t.x) and math.isfinite(t.y) for t in tgts
        ):
            raise InvalidInstance("coordinates must be finite")
        object.__setattr__(self, "cameras", cams)
        object.__setattr__(self, "targets", tgts)

    @property
    def n(self) -> int:
        return len(self.targets)

    @property
    def midpoint(self) -> float:
        """M, the midpoint between the n-th and (n+1)-th camera."""
        n = self.n
        return 0.5 * (self.cameras[n - 1] + self.cameras[n])

    @property
    def left_reach(self) -> float:
        """a = M - c_1."""
        return self.midpoint - self.cameras[0]

    @property
    def right_reach(self) -> float:
        """d = c_2n - M."""
        return self.cameras[-1] - self.midpoint

    def depths(self) -> list[float]:
        return [abs(t.y) for t in self.targets]

    def mirrored(self) -> "Instance":
        """Reflect the instance about x = M.

        Camera index i of the result corresponds to camera 2n - 1 - i of
        ``self`` (0-based).
        """
        m2 = 2.0 * self.midpoint
        cams = tuple(m2 - c for c in reversed(self.cameras))
        tgts = tuple(Point(m2 - t.x, t.y) for t in self.targets)
        return Instance(cams, tgts)


@dataclass(frozen=True)
class Bucket:
    lo: float
    hi: float
    side: Side

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidRange(f"empty bucket [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def near_distance(self, midpoint: float) -> float:
        """Distance from the endpoint closest to M to M."""
        if self.side is Side.RIGHT:
            return self.lo - midpoint
        return midpoint - self.hi


@dataclass(frozen=True)
class ConformingPartition:
    buckets: tuple[Bucket, ...]
    epsilon: float
    midpoint: float

    def __len__(self):
        return len(self.buckets)

    def __iter__(self):
        return iter(self.buckets)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    offending_targets: tuple[int, ...] = ()
    reasons: tuple[str, ...] = field(default=())

    def __bool__(self):
        return self.ok


def tracking_angle(cam_a: float, cam_b: float, target: Point) -> float:
    """Angle at ``target`` subtended by the two cameras, in radians."""
    if cam_a == cam_b:
        raise DegenerateGeometry("cameras coincide")
    if target.y == 0:
        raise DegenerateGeometry("target lies on the camera line")
    ax, ay = cam_a - target.x, -target.y
    bx, by = cam_b - target.x, -target.y
    return math.atan2(abs(ax * by - ay * bx), ax * bx + ay * by)


def aspect_ratio(cam_a: float, cam_b: float, target: Point) -> float:
    """Target depth divided by the baseline length."""
    if cam_a == cam_b:
        raise DegenerateGeometry("cameras coincide")
    return abs(target.y) / abs(cam_b - cam_a)


def project_targets(instance: Instance) -> Instance:
    """Reflect targets below the camera line to the upper half-plane."""
    return Instance(
        instance.cameras, tuple(Point(t.x, abs(t.y)) for t in instance.targets)
    )


def _camera_problems(instance: Instance) -> list[str]:
    cams = instance.cameras
    problems = []
    if instance.n == 0:
        problems.append("instance has no targets")
    for i in range(len(cams) - 1):
        if not cams[i] < cams[i + 1]:
            problems.append(
                f"cameras must be strictly increasing: c{i + 1}={cams[i]!r}, "
                f"c{i + 2}={cams[i + 1]!r}"
            )
    return problems


def validate_for_angles(instance: Instance) -> Verdict:
    """Check the angle-objective preconditions.

    Every target must lie strictly outside the circle with diameter
    [c_1, c_2n]; that circle contains the Thales circle of every camera pair,
    so this is equivalent to all tracking angles being below 90 degrees.
    Targets exactly on the circle are rejected.
    """
    reasons = _camera_problems(instance)
    if reasons:
        return Verdict(False, (), tuple(reasons))
    center = 0.5 * (instance.cameras[0] + instance.cameras[-1])
    radius = 0.5 * (instance.cameras[-1] - instance.cameras[0])
    bad = []
    for k, t in enumerate(instance.targets):
        if t.y <= 0:
            bad.append(k)
            reasons.append(f"target {k + 1} is not above the camera line")
        elif (t.x - center) ** 2 + t.y**2 <= radius**2:
            bad.append(k)
            reasons.append(f"target {k + 1} is not strictly outside the circle on [c1, c2n]")
    return Verdict(not bad, tuple(bad), tuple(reasons))


def validate_for_ratios(instance: Instance) -> Verdict:
    reasons = _camera_problems(instance)
    bad = [k for k, t in enumerate(instance.targets) if t.y < 0]
    reasons += [f"target {k + 1} lies below the camera line" for k in bad]
    return Verdict(not reasons, tuple(bad), tuple(reasons))


def _per_doubling(epsilon: float) -> int:
    if not 0 < epsilon <= 1:
        raise InvalidRange(f"epsilon must be in (0, 1], got {epsilon}")
    # guard against 1/eps**2 landing a hair above an integer
    return max(1, math.ceil(1.0 / epsilon**2 - 1e-9))


def _split(lo: float, hi: float, count: int) -> list[tuple[float, float]]:
    step = (hi - lo) / count
    cuts = [lo + k * step for k in range(count)] + [hi]
    return [(cuts[k], cuts[k + 1]) for k in range(count)]


def conforming_partition(
    midpoint: float, gamma1: float, gamma2: float, epsilon: float, side: Side
) -> ConformingPartition:
    """Partition [M+gamma1, M+gamma2] (or its mirror left of M) into buckets.

    Each doubling interval [M + 2^i gamma1, M + 2^(i+1) gamma1] is cut into
    ceil(1/eps^2) equal buckets, the last interval clamped at gamma2, so every
    bucket's distance to M is at least its length / eps^2.  Buckets are
    returned in increasing x order.
    """
    if gamma1 <= 0 or gamma2 <= gamma1:
        raise InvalidRange(f"need 0 < gamma1 < gamma2, got {gamma1}, {gamma2}")
    side = Side(side)
    per = _per_doubling(epsilon)
    offsets: list[tuple[float, float]] = []
    start = gamma1
    while start < gamma2:
        stop = min(2.0 * start, gamma2)
        offsets.extend(_split(start, stop, per))
        start = stop
    if side is Side.RIGHT:
        buckets = [Bucket(midpoint + a, midpoint + b, side) for a, b in offsets]
    else:
        buckets = [Bucket(midpoint - b, midpoint - a, side) for a, b in reversed(offsets)]
    return ConformingPartition(tuple(buckets), epsilon, midpoint)


def ratio_discretization(
    midpoint: float, beta: float, n: int, epsilon: float
) -> tuple[list[Bucket], list[Bucket]]:
    """Bucket [M - 2n*beta, M] and [M, M + 2n*beta] for the ratio recursion.

    Sweeping outward from M, interval i (i = -1, 0, 1, ...) has length
    2^i * beta / n, the last one clamped at distance 2n*beta; each interval
    is cut into ceil(2/eps) equal buckets.  Both lists are in increasing x
    order.
    """
    if beta <= 0:
        raise InvalidRange(f"beta must be positive, got {beta}")
    if n < 1:
        raise InvalidRange(f"n must be at least 1, got {n}")
    if not 0 < epsilon <= 1:
        raise InvalidRange(f"epsilon must be in (0, 1], got {epsilon}")
    per = math.ceil(2.0 / epsilon - 1e-9)
    reach = 2.0 * n * beta
    offsets: list[tuple[float, float]] = []
    near, i = 0.0, -1
    while near < reach:
        far = min(reach, near + 2.0**i * beta / n)
        offsets.extend(_split(near, far, per))
        near, i = far, i + 1
    left = [Bucket(midpoint - b, midpoint - a, Side.LEFT) for a, b in reversed(offsets)]
    right = [Bucket(midpoint + a, midpoint + b, Side.RIGHT) for a, b in offsets]
    return left, right


def _ray_hits_line(origin: Point, angle: float, p: Point, q: Point) -> Point:
    dx, dy = math.cos(angle), math.sin(angle)
    ex, ey = q.x - p.x, q.y - p.y
    denom = dx * ey - dy * ex
    if denom == 0:
        raise DegenerateGeometry("ray is parallel to segment")
    s = ((p.x - origin.x) * ey - (p.y - origin.y) * ex) / denom
    return Point(origin.x + s * dx, origin.y + s * dy)


def split_ratio(x: Point, y: Point, t: Point, epsilon: float) -> tuple[Point, Point, float]:
    """Cut segment xy by the rays from t at angle eps*theta from each side.

    With theta the angle xty, ``z`` satisfies angle(x t z) = eps*theta and
    ``z_prime`` satisfies angle(y t z') = eps*theta.  Returns
    ``(z, z_prime, |x z'| / |x z|)``.
    """
    x, y, t = Point(*x), Point(*y), Point(*t)
    cross = (x.x - t.x) * (y.y - t.y) - (x.y - t.y) * (y.x - t.x)
    if cross == 0:
        raise DegenerateGeometry("x, y, t are collinear")
    ang_x = math.atan2(x.y - t.y, x.x - t.x)
    ang_y = math.atan2(y.y - t.y, y.x - t.x)
    theta = math.atan2(abs(cross), (x.x - t.x) * (y.x - t.x) + (x.y - t.y) * (y.y - t.y))
    # rotation sense that carries t->x onto t->y
    turn = 1.0 if cross > 0 else -1.0
    z = _ray_hits_line(t, ang_x + turn * epsilon * theta, x, y)
    z_prime = _ray_hits_line(t, ang_y - turn * epsilon * theta, x, y)
    ratio = math.dist(x, z_prime) / math.dist(x, z)
    return z, z_prime, ratio


def circle_radius(cameras: Sequence[float]) -> float:
    """Radius of the circle with diameter [c_1, c_2n]."""
    return 0.5 * (cameras[-1] - cameras[0])
