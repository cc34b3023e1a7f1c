"""Classical consequences: Tverberg partitions, centerpoints, depth points.

The bridge is the tensor trick: each input point is lifted to affine
coordinates and tensored with m fixed vectors that sum to zero, giving
one color class per point that embraces the origin.  A colorful choice
for the lifted cone problem assigns every point to one of m groups, and
the block identities of the tensor layout force the groups' weighted
sums to coincide, which is exactly a Tverberg partition with an explicit
common point.  Centerpoints and simplicial-depth points follow with
their classical counting arguments; every numeric output carries exact
convex-combination certificates, and the theorem-level facts (equal
block sums, nonempty parts) are asserted rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError, TheoremViolationError
from .instance import make_instance
from .linalg import vec
from .lp import find_feasible_basis, mat_from_columns, ray_embrace
from .rat import ONE, ZERO, rat
from .solvers import solve_instance


def tensor(u, v) -> tuple:
    """Kronecker product laid out with the u index varying fastest."""
    u = vec(u)
    v = vec(v)
    return tuple(u[i] * v[j] for j in range(len(v)) for i in range(len(u)))


def sarkaria_vectors(m: int) -> tuple:
    """m vectors in Q^(m-1) summing to zero: unit vectors and all-minus-one."""
    assert m >= 2
    out = []
    for i in range(m - 1):
        out.append(tuple(ONE if t == i else ZERO for t in range(m - 1)))
    out.append(tuple(-ONE for _ in range(m - 1)))
    return tuple(out)


def lift_affine(p) -> tuple:
    """Append the affine coordinate 1."""
    return tuple(vec(p)) + (ONE,)


def _check_points(points):
    pts = tuple(vec(p) for p in points)
    if not pts:
        raise PreconditionError("need at least one point")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise PreconditionError("points must share a dimension")
    return pts, d


@dataclass(frozen=True)
class TverbergResult:
    m: int
    parts: tuple  # m tuples of original point indices, disjoint, covering
    coefficients: tuple  # aligned with parts; convex weights per part
    point: tuple  # the common point, in every part's convex hull


def build_tverberg_instance(points, m: int):
    """The lifted cone instance whose colorful choices are m-partitions.

    One color per point: its affine lift tensored with each of the m
    zero-sum vectors, lifted once more so that conic certificates are
    automatically convex.  The target is the origin in the tensor space,
    affinely lifted.
    """
    pts, d = _check_points(points)
    n = len(pts)
    assert n == (m - 1) * (d + 1) + 1
    qs = sarkaria_vectors(m)
    colors = []
    for p in pts:
        bar = lift_affine(p)
        colors.append(tuple(lift_affine(tensor(bar, q)) for q in qs))
    dim = (d + 1) * (m - 1) + 1
    b = tuple(ZERO for _ in range(dim - 1)) + (ONE,)
    return make_instance(dim, b, colors)


def solve_tverberg(points, method: str = "pls", **solver_kw) -> TverbergResult:
    """Partition into ceil(n / (d+1)) parts with a common hull point.

    The construction consumes the first (m-1)(d+1)+1 points; the few
    left over join the first part with coefficient zero, which can only
    grow that part's hull.
    """
    pts, d = _check_points(points)
    n = len(pts)
    m = -(-n // (d + 1))
    if m == 1:
        coeffs = (ONE,) + tuple(ZERO for _ in range(n - 1))
        return TverbergResult(
            m=1,
            parts=(tuple(range(n)),),
            coefficients=(coeffs,),
            point=pts[0],
        )
    n_used = (m - 1) * (d + 1) + 1
    assert n_used <= n
    inst = build_tverberg_instance(pts[:n_used], m)
    outcome = solve_instance(inst, method=method, **solver_kw)
    assignment = outcome.choice.point_indices
    lam = outcome.choice.coefficients

    groups = [[] for _ in range(m)]
    for i, j in enumerate(assignment):
        groups[j].append(i)
    block_sums = []
    for j in range(m):
        total = [ZERO] * (d + 1)
        for i in groups[j]:
            bar = lift_affine(pts[i])
            for t in range(d + 1):
                total[t] = total[t] + lam[i] * bar[t]
        block_sums.append(tuple(total))
    if any(v != block_sums[0] for v in block_sums[1:]):
        raise TheoremViolationError("tensor block sums disagree across parts")
    common = block_sums[0]
    if common[d] != rat(1, m):
        raise TheoremViolationError("part weights do not sum to 1/m")
    if any(not g for g in groups):
        raise TheoremViolationError("a Tverberg part came out empty")

    point = tuple(x * m for x in common[:d])
    parts = []
    coefficients = []
    for j in range(m):
        members = list(groups[j])
        weights = [lam[i] * m for i in members]
        if j == 0:
            for i in range(n_used, n):
                members.append(i)
                weights.append(ZERO)
        order = sorted(range(len(members)), key=lambda t: members[t])
        parts.append(tuple(members[t] for t in order))
        coefficients.append(tuple(weights[t] for t in order))
    result = TverbergResult(
        m=m,
        parts=tuple(parts),
        coefficients=tuple(coefficients),
        point=point,
    )
    _assert_tverberg(result, pts)
    return result


def _assert_tverberg(res: TverbergResult, pts) -> None:
    d = len(pts[0])
    seen = sorted(i for part in res.parts for i in part)
    assert seen == list(range(len(pts))), "parts must partition the points"
    for part, weights in zip(res.parts, res.coefficients):
        assert len(part) == len(weights)
        assert all(w >= 0 for w in weights)
        assert sum(weights, ZERO) == ONE
        for t in range(d):
            s = sum((w * pts[i][t] for i, w in zip(part, weights)), ZERO)
            assert s == res.point[t], "part misses the common point"


def common_intersection_point(points, res: TverbergResult) -> tuple:
    """Recompute the common point from each part and check they agree."""
    pts, d = _check_points(points)
    values = []
    for part, weights in zip(res.parts, res.coefficients):
        v = tuple(
            sum((w * pts[i][t] for i, w in zip(part, weights)), ZERO)
            for t in range(d)
        )
        values.append(v)
    if any(v != values[0] for v in values[1:]):
        raise TheoremViolationError("parts disagree on the common point")
    return values[0]


@dataclass(frozen=True)
class CenterpointResult:
    point: tuple
    depth_bound: int  # closed halfspaces through the point cover >= this many
    partition: TverbergResult


def centerpoint(points, method: str = "pls", **solver_kw) -> CenterpointResult:
    """A point of Tukey depth at least ceil(n / (d+1)).

    Any closed halfspace containing the common Tverberg point must meet
    every part's hull, hence contain at least one point per part.
    """
    res = solve_tverberg(points, method=method, **solver_kw)
    return CenterpointResult(
        point=res.point, depth_bound=res.m, partition=res
    )


@dataclass(frozen=True)
class SimplicialDepthResult:
    point: tuple
    depth_bound: int
    witnesses: tuple  # ((d+1) point indices, convex coefficients) pairs
    partition: TverbergResult


def simplicial_depth_bound(m: int, d: int) -> int:
    """ceil(m^(d+1) / (d+1)^(d+1)), never above the witness count."""
    num = m ** (d + 1)
    den = (d + 1) ** (d + 1)
    return -(-num // den)


def simplicial_depth_point(
    points, method: str = "pls", **solver_kw
) -> SimplicialDepthResult:
    """A point inside many point simplices, with explicit witnesses.

    For every (d+1)-subset of the Tverberg parts, a colorful convex
    choice picks one point per part whose simplex contains the common
    point.  When there are fewer than d+1 parts, a single witness comes
    from reducing the first part's certificate and padding with zero
    weights.
    """
    pts, d = _check_points(points)
    if len(pts) < d + 1:
        raise PreconditionError("simplicial depth needs at least d+1 points")
    res = solve_tverberg(points, method=method, **solver_kw)
    m = res.m
    target = lift_affine(res.point)
    witnesses = []
    if m >= d + 1:
        for subset in combinations(range(m), d + 1):
            colors = tuple(
                tuple(lift_affine(pts[i]) for i in res.parts[j])
                for j in subset
            )
            inst = make_instance(d + 1, target, colors)
            outcome = solve_instance(inst, method=method, **solver_kw)
            idx = tuple(
                res.parts[j][pi]
                for j, pi in zip(subset, outcome.choice.point_indices)
            )
            witnesses.append((idx, tuple(outcome.choice.coefficients)))
    else:
        part, weights = res.parts[0], res.coefficients[0]
        support = [
            (i, w) for i, w in zip(part, weights) if w > 0
        ]
        lifted = [lift_affine(pts[i]) for i, _ in support]
        keep = caratheodory_reduce_or_all(lifted, target)
        chosen = [support[t][0] for t in keep]
        coeffs = ray_embrace([lift_affine(pts[i]) for i in chosen], target)
        assert coeffs is not None
        pad = [i for i in range(len(pts)) if i not in chosen]
        while len(chosen) < d + 1:
            chosen.append(pad.pop())
            coeffs = tuple(coeffs) + (ZERO,)
        witnesses.append((tuple(chosen), tuple(coeffs)))
    bound = simplicial_depth_bound(m, d)
    if len(witnesses) < bound:
        raise TheoremViolationError(
            "fewer witness simplices than the counting bound"
        )
    for idx, coeffs in witnesses:
        assert len(idx) == d + 1 and len(set(idx)) == d + 1
        assert all(c >= 0 for c in coeffs)
        assert sum(coeffs, ZERO) == ONE
        for t in range(d):
            s = sum((c * pts[i][t] for i, c in zip(idx, coeffs)), ZERO)
            assert s == res.point[t]
    return SimplicialDepthResult(
        point=res.point,
        depth_bound=bound,
        witnesses=tuple(witnesses),
        partition=res,
    )


def caratheodory_reduce_or_all(points, b) -> tuple:
    """Indices of at most dim(b) points still embracing b.

    Unlike the strict reducer this tolerates point sets that do not span
    the whole space: it works inside the span of the set.
    """
    basis, _ = find_feasible_basis(mat_from_columns(tuple(points)), tuple(b))
    return tuple(sorted(basis))
