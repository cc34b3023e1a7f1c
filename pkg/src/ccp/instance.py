"""Colorful instances and the exact general-position pipeline.

An instance is d color classes of points in Q^d plus a target vector b;
it is valid when every color class ray-embraces b.  Solvers that walk
the parameterized LP complex need more: an integer instance whose color
classes have exactly d points (P1) and where no d-1 of the d^2 points
span b linearly (P2).  perturb_to_general_position establishes P1 and P2
by symbolic perturbation with exact rationals, and the returned map can
translate any solution of the perturbed instance back to one of the
original, re-certified against the original b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import PreconditionError, TheoremViolationError
from .linalg import Vector, in_linear_span, norm1, vec
from .lp import find_feasible_basis, mat_from_columns, ray_embrace
from .rat import Rat, ZERO, is_integer, rat, rat_ceil, rat_str

_P2_SUBSET_LIMIT = 2_000_000


@dataclass(frozen=True)
class CcpInstance:
    dim: int
    b: Vector
    colors: tuple

    def __post_init__(self):
        assert self.dim >= 1
        assert len(self.b) == self.dim, "b must live in Q^dim"
        for color in self.colors:
            for p in color:
                assert len(p) == self.dim, "point dimension mismatch"

    @property
    def n_colors(self) -> int:
        return len(self.colors)

    def point(self, ci: int, pi: int) -> Vector:
        return self.colors[ci][pi]

    def all_points(self):
        """All points as (color index, point index, point), color-major."""
        for ci, color in enumerate(self.colors):
            for pi, p in enumerate(color):
                yield ci, pi, p


def make_instance(dim: int, b, colors) -> CcpInstance:
    return CcpInstance(
        dim=dim,
        b=vec(b),
        colors=tuple(tuple(vec(p) for p in color) for color in colors),
    )


@dataclass(frozen=True)
class ColorfulChoice:
    """One point per color with conic coefficients certifying the embrace.

    point_indices[i] selects a point inside color i; coefficients[i] is
    its weight in the nonnegative combination that hits b exactly.
    """

    point_indices: tuple
    coefficients: tuple

    def points(self, inst: CcpInstance):
        return tuple(
            inst.colors[ci][pi] for ci, pi in enumerate(self.point_indices)
        )


def choice_is_certified(inst: CcpInstance, choice: ColorfulChoice) -> bool:
    """Exact check that the stored coefficients witness the embrace."""
    if len(choice.point_indices) != inst.n_colors:
        return False
    if any(a < 0 for a in choice.coefficients):
        return False
    total = tuple([ZERO] * inst.dim)
    for ci, (pi, a) in enumerate(
        zip(choice.point_indices, choice.coefficients)
    ):
        if not 0 <= pi < len(inst.colors[ci]):
            return False
        p = inst.colors[ci][pi]
        total = tuple(t + a * x for t, x in zip(total, p))
    return total == inst.b


def validate(inst: CcpInstance) -> list[str]:
    """Semantic validation; empty list means the instance is valid.

    Messages use 1-based color indices to match the on-disk format.
    """
    problems = []
    if all(x == 0 for x in inst.b):
        problems.append("b is the zero vector")
    if inst.n_colors == 0:
        problems.append("no color classes")
    for ci, color in enumerate(inst.colors):
        if not color:
            problems.append("color %d is empty" % (ci + 1,))
        elif ray_embrace(color, inst.b) is None:
            problems.append("color %d does not ray-embrace b" % (ci + 1,))
    return problems


def assert_valid(inst: CcpInstance) -> None:
    problems = validate(inst)
    if problems:
        raise PreconditionError("; ".join(problems))


def is_square_colorful(inst: CcpInstance) -> bool:
    """d color classes in dimension d: the shape the cone solvers need."""
    return inst.n_colors == inst.dim


def satisfies_P1(inst: CcpInstance) -> bool:
    """P1: integer instance, every color exactly d points, all embracing b."""
    if not is_square_colorful(inst):
        return False
    if not all(is_integer(x) for x in inst.b):
        return False
    for color in inst.colors:
        if len(color) != inst.dim:
            return False
        for p in color:
            if not all(is_integer(x) for x in p):
                return False
    return all(
        ray_embrace(color, inst.b) is not None for color in inst.colors
    )


def find_P2_violation(
    points: Sequence[Vector], b: Vector, subset_limit: int = _P2_SUBSET_LIMIT
) -> Optional[tuple]:
    """First (d-1)-subset of the points whose linear span contains b.

    None means P2 holds over the given points.  The check is an
    exhaustive scan over C(n, d-1) subsets; subset_limit guards against
    accidentally requesting an astronomically large scan.
    """
    d = len(b)
    n = len(points)
    if d == 1:
        return None
    total = math.comb(n, d - 1)
    if total > subset_limit:
        raise PreconditionError(
            "P2 scan over %d subsets exceeds the limit %d"
            % (total, subset_limit)
        )
    for subset in combinations(range(n), d - 1):
        if in_linear_span([points[j] for j in subset], b) is not None:
            return subset
    return None


def satisfies_P2(inst: CcpInstance, subset_limit: int = _P2_SUBSET_LIMIT) -> bool:
    flat = [p for _, _, p in inst.all_points()]
    return find_P2_violation(flat, inst.b, subset_limit) is None


def coordinate_bound(inst: CcpInstance) -> int:
    """m: the largest absolute coordinate value in A and b (at least 1).

    Only meaningful for integer instances, which is asserted.
    """
    m = 1
    for _, _, p in inst.all_points():
        for x in p:
            v = abs(int(x)) if is_integer(x) else None
            assert v is not None, "coordinate bound needs an integer instance"
            m = max(m, v)
    for x in inst.b:
        assert is_integer(x)
        m = max(m, abs(int(x)))
    return m


def modulus_bound(inst: CcpInstance) -> int:
    """N = d! * m^d: bounds |det| of every d x d column submatrix."""
    d = inst.dim
    return math.factorial(d) * coordinate_bound(inst) ** d


@dataclass(frozen=True)
class PerturbationMap:
    """Provenance of a perturbed instance.

    provenance[ci][t] is the index, within original color ci, of the
    point that ground column t of color ci descends from.  fast_path
    records that the input already satisfied P1 and P2 and was returned
    unchanged.
    """

    original: CcpInstance
    provenance: tuple
    fast_path: bool


def rescale_to_integers(inst: CcpInstance) -> CcpInstance:
    """Integer instance with the same conic geometry.

    Each point is scaled by the lcm of its coordinate denominators; b is
    scaled likewise and then by the smallest positive integer making
    ||b||_1 at least every point's l1 norm.  Scaling points or b by
    positive factors changes no embrace relation.
    """
    new_colors = []
    for color in inst.colors:
        new_color = []
        for p in color:
            l = 1
            for x in p:
                l = math.lcm(l, x.denominator)
            new_color.append(tuple(x * l for x in p))
        new_colors.append(tuple(new_color))
    l_b = 1
    for x in inst.b:
        l_b = math.lcm(l_b, x.denominator)
    b = tuple(x * l_b for x in inst.b)
    max_norm = ZERO
    for color in new_colors:
        for p in color:
            m = norm1(p)
            if m > max_norm:
                max_norm = m
    nb = norm1(b)
    assert nb > 0, "rescale needs a nonzero b"
    if nb < max_norm:
        s = rat_ceil(max_norm / nb)
        b = tuple(x * s for x in b)
    return CcpInstance(dim=inst.dim, b=b, colors=tuple(new_colors))


def sphere_replace(inst: CcpInstance, eps: Rat) -> tuple[CcpInstance, tuple]:
    """Replace every point p by the 2d axis points p +- eps e_i.

    Returns the enlarged instance and, per color, the originating point
    index of each new point (axis-major, + before -).
    """
    assert eps > 0
    d = inst.dim
    new_colors = []
    origins = []
    for color in inst.colors:
        new_color = []
        origin = []
        for pi, p in enumerate(color):
            for axis in range(d):
                for sgn in (1, -1):
                    q = list(p)
                    q[axis] = q[axis] + sgn * eps
                    new_color.append(tuple(q))
                    origin.append(pi)
        new_colors.append(tuple(new_color))
        origins.append(tuple(origin))
    out = CcpInstance(dim=d, b=inst.b, colors=tuple(new_colors))
    return out, tuple(origins)


def perturb_b(inst: CcpInstance, eps: Rat) -> CcpInstance:
    """Push b off every low-dimensional span: b += (eps^d, ..., eps^(d*d))."""
    assert eps > 0
    d = inst.dim
    b = tuple(
        x + eps ** (d * (i + 1)) for i, x in enumerate(inst.b)
    )
    return CcpInstance(dim=d, b=b, colors=inst.colors)


def caratheodory_reduce(points: Sequence[Vector], b: Vector) -> tuple:
    """Indices of d points whose cone still contains b.

    The LP feasible basis is exactly such a subset.  Requires the points
    to span Q^d (true after sphere_replace) and to embrace b.
    """
    d = len(b)
    basis, _ = find_feasible_basis(mat_from_columns(tuple(points)), b)
    if len(basis) != d:
        raise PreconditionError(
            "caratheodory_reduce needs full-dimensional spanning points"
        )
    return tuple(sorted(basis))


def clear_denominators(inst: CcpInstance, factor: int) -> CcpInstance:
    """Scale every point and b by one positive integer factor."""
    assert factor >= 1
    return CcpInstance(
        dim=inst.dim,
        b=tuple(x * factor for x in inst.b),
        colors=tuple(
            tuple(tuple(x * factor for x in p) for p in color)
            for color in inst.colors
        ),
    )


def perturb_to_general_position(
    inst: CcpInstance, subset_limit: int = _P2_SUBSET_LIMIT
) -> tuple[CcpInstance, PerturbationMap]:
    """Establish P1 and P2 with exactly d points per color.

    Returns the instance unchanged when it already has that shape and
    both properties hold.

    Pipeline: rescale to integers, replace points by eps0-spheres, push
    b along the eps0 moment curve, reduce every color back to d points,
    clear denominators by the single factor eps0^(-d^2), then verify P1
    and P2 on the output (failure would be an internal error, so it
    raises TheoremViolationError).
    """
    if not is_square_colorful(inst):
        raise PreconditionError(
            "cone solvers need exactly d color classes in dimension d"
        )
    problems = validate(inst)
    if problems:
        raise PreconditionError("; ".join(problems))
    square_sizes = all(len(color) == inst.dim for color in inst.colors)
    if square_sizes and satisfies_P1(inst) and satisfies_P2(inst, subset_limit):
        identity = tuple(
            tuple(range(len(color))) for color in inst.colors
        )
        return inst, PerturbationMap(
            original=inst, provenance=identity, fast_path=True
        )
    d = inst.dim
    scaled = rescale_to_integers(inst)
    N = modulus_bound(scaled)
    eps0 = rat(1, N * N)
    spread, origins = sphere_replace(scaled, eps0)
    spread = perturb_b(spread, eps0)
    reduced_colors = []
    provenance = []
    for ci, color in enumerate(spread.colors):
        keep = caratheodory_reduce(color, spread.b)
        reduced_colors.append(tuple(color[t] for t in keep))
        provenance.append(tuple(origins[ci][t] for t in keep))
    reduced = CcpInstance(
        dim=d, b=spread.b, colors=tuple(reduced_colors)
    )
    ground = clear_denominators(reduced, N ** (2 * d * d))
    if not satisfies_P1(ground):
        raise TheoremViolationError("perturbation output failed P1")
    if not satisfies_P2(ground, subset_limit):
        raise TheoremViolationError("perturbation output failed P2")
    return ground, PerturbationMap(
        original=inst, provenance=tuple(provenance), fast_path=False
    )


def map_solution_back(
    pmap: PerturbationMap, choice: ColorfulChoice
) -> ColorfulChoice:
    """Translate a perturbed-instance choice to the original instance.

    Each chosen ground point is replaced by its originating point; the
    resulting colorful choice embraces the original b (that is the
    perturbation's replacement guarantee) and is re-certified here from
    scratch.  Failure is an internal error, not a property of the input.
    """
    orig = pmap.original
    indices = tuple(
        pmap.provenance[ci][pi]
        for ci, pi in enumerate(choice.point_indices)
    )
    points = tuple(
        orig.colors[ci][pi] for ci, pi in enumerate(indices)
    )
    coeffs = ray_embrace(points, orig.b)
    if coeffs is None:
        raise TheoremViolationError(
            "mapped-back choice lost the embrace certificate"
        )
    return ColorfulChoice(point_indices=indices, coefficients=tuple(coeffs))


def instance_summary(inst: CcpInstance) -> str:
    sizes = ",".join(str(len(c)) for c in inst.colors)
    return "dim=%d colors=[%s] b=(%s)" % (
        inst.dim,
        sizes,
        ", ".join(rat_str(x) for x in inst.b),
    )
