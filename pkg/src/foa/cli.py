"""Command line interface: ``foa validate|generate|solve|compare|bench``.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 budget
exceeded (the non-certified result is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import FoaError, InvalidInstance
from .generate import Profile, generate
from .oracle import ALL_OVERLAPPING_CAP
from .pairing import Objective
from .report import DEFAULT_MAX_CANDIDATES, Limits
from .serialization import dumps, instance_to_dict, load_instance, report_to_dict
from .solvers import Algorithm, solve, validate

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

BENCH_HEADER = [
    "n", "seed", "algorithm", "objective", "epsilon", "value",
    "ratio_to_exact", "wall_ms", "candidates", "certified",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": {"type": kind, "message": message, "exit_code": code}}) + "\n")
    return code


def _int_range(text: str, inclusive: bool) -> range:
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":", 1))
        else:
            lo, hi = (int(text), int(text)) if inclusive else (0, int(text))
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected INT or LO:HI") from None
    return range(lo, hi + 1) if inclusive else range(lo, hi)


def cmd_validate(args) -> int:
    instance = load_instance(args.file)
    verdict = validate(instance, args.objective)
    doc = {
        "verdict": "ACCEPT" if verdict else "REJECT",
        "objective": args.objective,
        "offending_targets": [k + 1 for k in verdict.offending_targets],
        "reasons": list(verdict.reasons),
    }
    _emit(dumps(doc), None)
    return EXIT_OK if verdict else EXIT_INVALID


def cmd_generate(args) -> int:
    instance = generate(args.n, args.seed, Profile(args.profile), args.margin)
    _emit(dumps(instance_to_dict(instance)), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = load_instance(args.file)
    if args.algorithm == "qptas" and args.epsilon is None:
        raise UsageError("--epsilon is required for --algorithm qptas")
    report = solve(instance, args.objective, args.algorithm, args.epsilon, Limits(args.max_candidates))
    _emit(dumps(report_to_dict(report, instance)), args.out)
    return EXIT_BUDGET if report.budget_exceeded else EXIT_OK


def _run_all(instance, objective, epsilon, limits, rows, extra=None):
    """Run exact (when small enough), qptas and heuristic; append one row each."""
    exact = None
    algorithms = [Algorithm.QPTAS, Algorithm.HEURISTIC]
    if instance.n <= ALL_OVERLAPPING_CAP:
        algorithms.insert(0, Algorithm.EXACT)
    budget_hit = False
    for alg in algorithms:
        report = solve(instance, objective, alg, epsilon if alg is Algorithm.QPTAS else None, limits)
        if alg is Algorithm.EXACT:
            exact = report.value
        budget_hit |= report.budget_exceeded
        rows.append({
            **(extra or {}),
            "algorithm": alg.value,
            "objective": objective.value,
            "epsilon": epsilon if alg is Algorithm.QPTAS else None,
            "value": report.value,
            "ratio_to_exact": None if exact is None else report.value / exact,
            "wall_ms": round(report.wall_ms, 3),
            "candidates": report.counters.get("candidates"),
            "certified": report.certified,
        })
    return budget_hit


def cmd_compare(args) -> int:
    instance = load_instance(args.file)
    objectives = list(Objective) if args.objective == "both" else [Objective(args.objective)]
    rows, skipped = [], []
    budget_hit = False
    for objective in objectives:
        verdict = validate(instance, objective)
        if not verdict:
            skipped.append({"objective": objective.value, "reasons": list(verdict.reasons)})
            continue
        budget_hit |= _run_all(instance, objective, args.epsilon, Limits(args.max_candidates), rows)
    if not rows:
        return _error("InvalidInstance", "instance is invalid for every requested objective", EXIT_INVALID)
    _emit(dumps({"n": instance.n, "epsilon": args.epsilon, "rows": rows, "skipped": skipped}), args.out)
    width = max(len(r["algorithm"]) for r in rows)
    for r in rows:
        ratio = "-" if r["ratio_to_exact"] is None else f"{r['ratio_to_exact']:.6f}"
        sys.stderr.write(f"{r['objective']:<7} {r['algorithm']:<{width}} {r['value']:.12g}  ratio={ratio}\n")
    return EXIT_BUDGET if budget_hit else EXIT_OK


def cmd_bench(args) -> int:
    objectives = list(Objective) if args.objective == "both" else [Objective(args.objective)]
    limits = Limits(args.max_candidates)
    rows: list[dict] = []
    budget_hit = False
    for n in _int_range(args.n_range, inclusive=True):
        for seed in _int_range(args.seeds, inclusive=False):
            instance = generate(n, seed, Profile(args.profile), args.margin)
            for objective in objectives:
                budget_hit |= _run_all(instance, objective, args.epsilon, limits, rows, {"n": n, "seed": seed})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_HEADER, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: ("" if r[k] is None else r[k]) for k in BENCH_HEADER})
    _emit(buf.getvalue(), args.out)
    return EXIT_BUDGET if budget_hit else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="foa", description="Camera-pair to target assignment solvers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check an instance file against an objective's preconditions")
    p.add_argument("file")
    p.add_argument("--objective", choices=[o.value for o in Objective], required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="write a seeded random angle-valid instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", choices=[pr.value for pr in Profile], default=Profile.UNIFORM.value)
    p.add_argument("--margin", type=float, default=1.5, help="Thales margin, must exceed 1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve one instance and write a JSON report")
    p.add_argument("file")
    p.add_argument("--objective", choices=[o.value for o in Objective], required=True)
    p.add_argument("--algorithm", choices=[a.value for a in Algorithm], default=Algorithm.QPTAS.value)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="run every algorithm on one instance")
    p.add_argument("file")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--objective", choices=["angles", "ratios", "both"], default="both")
    p.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="CSV of all algorithms over generated instances")
    p.add_argument("--n-range", default="1:4", help="inclusive LO:HI")
    p.add_argument("--seeds", default="5", help="COUNT (seeds 0..COUNT-1) or LO:HI (half-open)")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--objective", choices=["angles", "ratios", "both"], default="both")
    p.add_argument("--profile", choices=[pr.value for pr in Profile], default=Profile.UNIFORM.value)
    p.add_argument("--margin", type=float, default=1.5)
    p.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _error("UsageError", str(exc), EXIT_USAGE)
    except (InvalidInstance, FileNotFoundError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_INVALID)
    except (FoaError, ValueError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
