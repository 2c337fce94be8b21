"""JSON instance and report files."""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Any

from .errors import InvalidInstance
from .geometry import Instance, Point, aspect_ratio, project_targets, tracking_angle
from .pairing import Objective
from .report import SolveReport

INSTANCE_VERSION = "foa-instance/1"
REPORT_VERSION = "foa-report/1"


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    return {
        "version": INSTANCE_VERSION,
        "cameras": list(instance.cameras),
        "targets": [[t.x, t.y] for t in instance.targets],
    }


def instance_from_dict(data: dict[str, Any]) -> Instance:
    """Parse an instance document, sort the cameras and reflect targets upward."""
    if not isinstance(data, dict):
        raise InvalidInstance("instance document must be a JSON object")
    if data.get("version") != INSTANCE_VERSION:
        raise InvalidInstance(f"unsupported instance version {data.get('version')!r}")
    try:
        cameras = [float(c) for c in data["cameras"]]
        targets = [Point(float(x), float(y)) for x, y in data["targets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInstance(f"malformed instance: {exc}") from exc
    if len(cameras) % 2:
        raise InvalidInstance(f"odd number of cameras ({len(cameras)})")
    cameras.sort()
    if any(a == b for a, b in zip(cameras, cameras[1:])):
        raise InvalidInstance("duplicate camera positions")
    return project_targets(Instance(tuple(cameras), tuple(targets)))


def dumps(data: Any) -> str:
    # repr-based float output round-trips doubles exactly
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def load_instance(path: str | Path) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"{path}: not valid JSON ({exc})") from exc
    return instance_from_dict(data)


def save_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps(instance_to_dict(instance)))


def instance_digest(instance: Instance) -> str:
    return hashlib.sha256(dumps(instance_to_dict(instance)).encode()).hexdigest()


def report_to_dict(report: SolveReport, instance: Instance) -> dict[str, Any]:
    """Report document; everything except ``timing`` is deterministic."""
    pairs = [[a + 1, b + 1, t + 1] for a, b, t in report.assignment.triples()]
    return {
        "version": REPORT_VERSION,
        "instance": {"n": instance.n, "sha256": instance_digest(instance)},
        "algorithm": report.algorithm,
        "objective": Objective(report.objective).value,
        "epsilon": report.epsilon,
        "value": report.value,
        "pairs": pairs,
        "certified": report.certified,
        "counters": dict(report.counters),
        "config": dict(report.config),
        "timing": {"wall_ms": report.wall_ms},
    }


def deterministic_payload(report_doc: dict[str, Any]) -> str:
    return dumps({k: v for k, v in report_doc.items() if k != "timing"})


def recompute_value(report_doc: dict[str, Any], instance: Instance) -> float:
    """Re-evaluate a report's pairs against ``instance`` from scratch.

    Raises InvalidInstance if the pairs do not form a valid assignment.
    """
    n = instance.n
    pairs = report_doc["pairs"]
    cams_used = [c for a, b, _ in pairs for c in (a, b)]
    targets_used = [t for _, _, t in pairs]
    if sorted(cams_used) != list(range(1, 2 * n + 1)) or sorted(targets_used) != list(range(1, n + 1)):
        raise InvalidInstance("report pairs are not a perfect assignment of the instance")
    cost = tracking_angle if Objective(report_doc["objective"]) is Objective.ANGLES else aspect_ratio
    cams = instance.cameras
    return math.fsum(cost(cams[a - 1], cams[b - 1], instance.targets[t - 1]) for a, b, t in pairs)
