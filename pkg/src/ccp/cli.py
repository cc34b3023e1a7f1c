"""Command line front end.

Reports are canonical JSON (sorted keys, two-space indent, trailing
newline) on stdout or --out, always embedding the exact certificates;
wall time goes to stderr so identical inputs produce byte-identical
reports.  Exit codes: 2 malformed input, 3 budget exhausted, 4 general
position violated, 5 precondition failed, 1 any other library error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from .errors import CcpError, ParseError, PreconditionError, exit_code_for
from .instance import perturb_to_general_position
from .io import (
    canonical_json,
    dumps_point_set,
    instance_digest,
    instance_to_obj,
    load_instance,
    load_point_set,
)
from .oracle import enumerate_colorful_solutions
from .rat import parse_rat, rat_str
from .reductions import centerpoint, simplicial_depth_point, solve_tverberg
from .solvers import METHODS, solve_instance
from .twocolor import find_split
from .walk import DEFAULT_BUDGET


def _point_set_digest(points) -> str:
    text = dumps_point_set(points)
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def _emit(report: dict, out_path) -> None:
    text = canonical_json(report)
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _trace_writer(enabled: bool):
    if not enabled:
        return None

    def write(record: dict) -> None:
        sys.stderr.write(json.dumps(record, sort_keys=True, default=str) + "\n")

    return write


def _check_c_exponent(value: int) -> int:
    if value < 3:
        raise PreconditionError("--c-exponent must be at least 3")
    return value


def _rat_list(values) -> list:
    return [rat_str(v) for v in values]


def _cmd_solve(args) -> dict:
    inst = load_instance(args.instance)
    outcome = solve_instance(
        inst,
        method=args.method,
        c_exponent=_check_c_exponent(args.c_exponent),
        budget=args.budget,
        best=args.best,
        trace=_trace_writer(args.trace),
    )
    choice = outcome.choice
    return {
        "command": "solve",
        "method": outcome.method,
        "instance_digest": instance_digest(inst),
        "dim": inst.dim,
        "choice": {
            "point_indices": [i + 1 for i in choice.point_indices],
            "coefficients": _rat_list(choice.coefficients),
            "points": [_rat_list(p) for p in choice.points(inst)],
        },
        "target": _rat_list(inst.b),
        "stats": dict(outcome.details, steps=outcome.steps),
    }


def _cmd_two_color(args) -> dict:
    inst = load_instance(args.instance)
    if inst.n_colors != 2:
        raise PreconditionError(
            "two-color expects an instance with exactly 2 color classes"
        )
    split = find_split(
        inst.colors[0],
        inst.colors[1],
        inst.b,
        args.k,
        c_exponent=_check_c_exponent(args.c_exponent),
    )
    return {
        "command": "two-color",
        "k": split.k,
        "instance_digest": instance_digest(inst),
        "indices1": [i + 1 for i in split.indices1],
        "indices2": [i + 1 for i in split.indices2],
        "coefficients1": _rat_list(split.coefficients1),
        "coefficients2": _rat_list(split.coefficients2),
        "iterations": split.iterations,
        "iteration_cap": split.iteration_cap,
        "fast_path": split.fast_path,
        "target": _rat_list(inst.b),
    }


def _tverberg_obj(res, points) -> dict:
    return {
        "m": res.m,
        "parts": [[i + 1 for i in part] for part in res.parts],
        "coefficients": [_rat_list(c) for c in res.coefficients],
        "point": _rat_list(res.point),
        "points_digest": _point_set_digest(points),
        "n_points": len(points),
    }


def _cmd_tverberg(args) -> dict:
    points = load_point_set(args.points)
    res = solve_tverberg(points, method=args.method)
    report = {"command": "tverberg"}
    report.update(_tverberg_obj(res, points))
    return report


def _cmd_centerpoint(args) -> dict:
    points = load_point_set(args.points)
    res = centerpoint(points, method=args.method)
    return {
        "command": "centerpoint",
        "point": _rat_list(res.point),
        "depth_bound": res.depth_bound,
        "partition": _tverberg_obj(res.partition, points),
    }


def _cmd_simdepth(args) -> dict:
    points = load_point_set(args.points)
    res = simplicial_depth_point(points, method=args.method)
    return {
        "command": "simdepth",
        "point": _rat_list(res.point),
        "depth_bound": res.depth_bound,
        "witnesses": [
            {
                "point_indices": [i + 1 for i in idx],
                "coefficients": _rat_list(coeffs),
            }
            for idx, coeffs in res.witnesses
        ],
        "partition": _tverberg_obj(res.partition, points),
    }


def _cmd_perturb(args) -> dict:
    inst = load_instance(args.instance)
    ground, pmap = perturb_to_general_position(inst)
    return {
        "command": "perturb",
        "fast_path": pmap.fast_path,
        "instance_digest": instance_digest(inst),
        "instance": instance_to_obj(ground),
        "provenance": [
            [i + 1 for i in color] for color in pmap.provenance
        ],
    }


def _cmd_enumerate(args) -> dict:
    inst = load_instance(args.instance)
    solutions = enumerate_colorful_solutions(inst, threads=args.threads)
    return {
        "command": "enumerate",
        "instance_digest": instance_digest(inst),
        "count": len(solutions),
        "solutions": [[i + 1 for i in s] for s in solutions],
    }


def _load_report(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError("cannot read report: %s" % e) from e
    if not isinstance(report, dict) or "command" not in report:
        raise ParseError("report must be a JSON object with a command field")
    return report


def _verify_sum(points, coeffs, target) -> bool:
    if len(points) != len(coeffs):
        return False
    if any(c < 0 for c in coeffs):
        return False
    total = [parse_rat("0")] * len(target)
    for p, c in zip(points, coeffs):
        for t in range(len(target)):
            total[t] = total[t] + c * p[t]
    return tuple(total) == tuple(target)


def _cmd_verify(args) -> dict:
    report = _load_report(args.report)
    command = report["command"]
    failures = []
    try:
        if command == "solve":
            inst = load_instance(args.data)
            if report.get("instance_digest") != instance_digest(inst):
                failures.append("instance digest mismatch")
            idx = [i - 1 for i in report["choice"]["point_indices"]]
            coeffs = [parse_rat(c) for c in report["choice"]["coefficients"]]
            if len(idx) != inst.n_colors:
                failures.append("wrong number of chosen points")
            else:
                points = [inst.colors[ci][pi] for ci, pi in enumerate(idx)]
                if not _verify_sum(points, coeffs, inst.b):
                    failures.append("certificate sum does not hit b")
        elif command == "two-color":
            inst = load_instance(args.data)
            if inst.n_colors != 2:
                raise PreconditionError("two-color data needs 2 color classes")
            if report.get("instance_digest") != instance_digest(inst):
                failures.append("instance digest mismatch")
            idx1 = [i - 1 for i in report["indices1"]]
            idx2 = [i - 1 for i in report["indices2"]]
            c1 = [parse_rat(c) for c in report["coefficients1"]]
            c2 = [parse_rat(c) for c in report["coefficients2"]]
            if len(idx1) != report["k"]:
                failures.append("k does not match the first class count")
            if len(idx1) + len(idx2) != inst.dim:
                failures.append("split sizes do not add up to d")
            points = [inst.colors[0][i] for i in idx1] + [
                inst.colors[1][i] for i in idx2
            ]
            if not _verify_sum(points, c1 + c2, inst.b):
                failures.append("certificate sum does not hit b")
        elif command in ("tverberg", "centerpoint", "simdepth"):
            points = load_point_set(args.data)
            part_obj = report if command == "tverberg" else report["partition"]
            if part_obj.get("points_digest") != _point_set_digest(points):
                failures.append("point set digest mismatch")
            target = [parse_rat(x) for x in part_obj["point"]]
            seen = []
            for part, coeffs in zip(
                part_obj["parts"], part_obj["coefficients"]
            ):
                idx = [i - 1 for i in part]
                seen.extend(idx)
                cs = [parse_rat(c) for c in coeffs]
                if sum(cs, parse_rat("0")) != 1:
                    failures.append("part weights must sum to 1")
                if not _verify_sum([points[i] for i in idx], cs, target):
                    failures.append("a part misses the common point")
            if sorted(seen) != list(range(len(points))):
                failures.append("parts do not partition the point set")
            if command == "simdepth":
                for w in report["witnesses"]:
                    idx = [i - 1 for i in w["point_indices"]]
                    cs = [parse_rat(c) for c in w["coefficients"]]
                    if sum(cs, parse_rat("0")) != 1:
                        failures.append("witness weights must sum to 1")
                    if not _verify_sum([points[i] for i in idx], cs, target):
                        failures.append("witness simplex misses the point")
        else:
            raise ParseError("unknown report command %r" % command)
    except (KeyError, IndexError, TypeError) as e:
        raise ParseError("malformed report: %r" % e) from e
    return {
        "command": "verify",
        "verified_command": command,
        "ok": not failures,
        "failures": failures,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccp",
        description="exact colorful Caratheodory solvers and reductions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("solve", help="one point per color, cone containing b")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--method", choices=METHODS, default="ppad")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--c-exponent", type=int, default=12, dest="c_exponent")
    p.add_argument("--best", action="store_true",
                   help="best-improvement swaps for the pls method")
    p.add_argument("--trace", action="store_true",
                   help="stream per-step records to stderr")
    add_common(p)
    p.set_defaults(run=_cmd_solve)

    p = sub.add_parser("two-color", help="exact (k, d-k) split of two classes")
    p.add_argument("instance", help="instance JSON file with 2 color classes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c-exponent", type=int, default=12, dest="c_exponent")
    add_common(p)
    p.set_defaults(run=_cmd_two_color)

    p = sub.add_parser("tverberg", help="partition with intersecting hulls")
    p.add_argument("points", help="point set file, one point per line")
    p.add_argument("--method", choices=METHODS, default="pls")
    add_common(p)
    p.set_defaults(run=_cmd_tverberg)

    p = sub.add_parser("centerpoint", help="point of provable Tukey depth")
    p.add_argument("points", help="point set file, one point per line")
    p.add_argument("--method", choices=METHODS, default="pls")
    add_common(p)
    p.set_defaults(run=_cmd_centerpoint)

    p = sub.add_parser("simdepth", help="point inside provably many simplices")
    p.add_argument("points", help="point set file, one point per line")
    p.add_argument("--method", choices=METHODS, default="pls")
    add_common(p)
    p.set_defaults(run=_cmd_simdepth)

    p = sub.add_parser("perturb", help="general-position pipeline, exact output")
    p.add_argument("instance", help="instance JSON file")
    add_common(p)
    p.set_defaults(run=_cmd_perturb)

    p = sub.add_parser("enumerate", help="every colorful solution, brute force")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--threads", type=int, default=1,
                   help="worker hint; the exact scan is sequential")
    add_common(p)
    p.set_defaults(run=_cmd_enumerate)

    p = sub.add_parser("verify", help="replay a report's certificates")
    p.add_argument("report", help="report JSON produced by another command")
    p.add_argument("data", help="the instance or point set it talks about")
    add_common(p)
    p.set_defaults(run=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        report = args.run(args)
    except CcpError as e:
        sys.stderr.write("error: %s\n" % e)
        return exit_code_for(e)
    finally:
        elapsed = time.monotonic() - started
        sys.stderr.write("wall time: %.3fs\n" % elapsed)
    _emit(report, args.out)
    if report.get("command") == "verify" and not report["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
