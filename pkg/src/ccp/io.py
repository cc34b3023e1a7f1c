"""On-disk formats: instance files, point-set files, canonical JSON.

Instance files are JSON with rational coordinates as canonical "num/den"
strings (bare integers allowed).  Round-trips are bit-exact.  Point-set
files are plain text, one point per line, whitespace-separated
coordinates; blank lines and '#' comments are skipped.  Reports are
canonical JSON: sorted keys, fixed separators, trailing newline, so that
identical runs produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from typing import Sequence

from .errors import ParseError
from .instance import CcpInstance
from .linalg import Vector
from .rat import parse_rat, rat, rat_str


def _coord(value):
    if isinstance(value, bool):
        raise ParseError("booleans are not coordinates")
    if isinstance(value, int):
        return rat(value)
    if isinstance(value, str):
        try:
            return parse_rat(value)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError("coordinate must be an integer or a rational string")


def _point(obj, dim: int) -> Vector:
    if not isinstance(obj, list) or len(obj) != dim:
        raise ParseError("point must be a list of %d coordinates" % dim)
    return tuple(_coord(x) for x in obj)


def instance_from_obj(obj) -> CcpInstance:
    if not isinstance(obj, dict):
        raise ParseError("instance must be a JSON object")
    unknown = set(obj) - {"dim", "b", "colors"}
    if unknown:
        raise ParseError("unknown instance fields: %s" % sorted(unknown))
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("dim must be a positive integer")
    if "b" not in obj or "colors" not in obj:
        raise ParseError("instance needs dim, b, and colors")
    b = _point(obj["b"], dim)
    colors_obj = obj["colors"]
    if not isinstance(colors_obj, list) or not colors_obj:
        raise ParseError("colors must be a nonempty list of point lists")
    colors = []
    for ci, color_obj in enumerate(colors_obj):
        if not isinstance(color_obj, list) or not color_obj:
            raise ParseError("color %d must be a nonempty point list" % (ci + 1))
        colors.append(tuple(_point(p, dim) for p in color_obj))
    return CcpInstance(dim=dim, b=b, colors=tuple(colors))


def instance_to_obj(inst: CcpInstance) -> dict:
    return {
        "dim": inst.dim,
        "b": [rat_str(x) for x in inst.b],
        "colors": [
            [[rat_str(x) for x in p] for p in color] for color in inst.colors
        ],
    }


def loads_instance(text: str) -> CcpInstance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc) from None
    return instance_from_obj(obj)


def load_instance(path: str) -> CcpInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_instance(fh.read())


def dumps_instance(inst: CcpInstance) -> str:
    return canonical_json(instance_to_obj(inst))


def save_instance(path: str, inst: CcpInstance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(inst))


def instance_digest(inst: CcpInstance) -> str:
    """sha256 over the canonical serialization; pins reports to inputs."""
    return hashlib.sha256(dumps_instance(inst).encode("utf-8")).hexdigest()


def parse_point_set(text: str) -> tuple:
    points = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            p = tuple(parse_rat(tok) for tok in line.split())
        except ValueError as exc:
            raise ParseError("line %d: %s" % (lineno, exc)) from None
        if dim is None:
            dim = len(p)
        elif len(p) != dim:
            raise ParseError(
                "line %d: expected %d coordinates, got %d"
                % (lineno, dim, len(p))
            )
        points.append(p)
    if not points:
        raise ParseError("point set is empty")
    return tuple(points)


def load_point_set(path: str) -> tuple:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_point_set(fh.read())


def dumps_point_set(points: Sequence[Vector]) -> str:
    return "".join(
        " ".join(rat_str(x) for x in p) + "\n" for p in points
    )


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, LF newline."""
    return (
        json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": "))
        + "\n"
    )
