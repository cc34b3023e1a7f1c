"""Brute-force references the fast code is measured against.

Everything here trades time for obviousness: exhaustive scans over
choices, subsets, partitions, and directions, all in exact rationals.
Tests freeze values produced by these oracles and the acceptance suite
replays solver outputs through them.
"""

from __future__ import annotations

from functools import cmp_to_key
from itertools import combinations, product

from .errors import PreconditionError
from .instance import CcpInstance
from .linalg import dot, in_linear_span, nullspace, vec, vsub
from .localsearch import nearest_point_in_cone
from .lp import StandardLP, column, feasible_point, ray_embrace
from .rat import ONE, ZERO


def enumerate_colorful_solutions(inst: CcpInstance, threads: int = 1) -> list:
    """Every colorful choice whose cone contains b, as sorted index tuples.

    threads is accepted as an interface hint and validated; the exact
    scan itself runs sequentially.
    """
    assert threads >= 1
    out = []
    ranges = [range(len(color)) for color in inst.colors]
    for indices in product(*ranges):
        points = tuple(
            inst.colors[ci][pi] for ci, pi in enumerate(indices)
        )
        if ray_embrace(points, inst.b) is not None:
            out.append(tuple(indices))
    return sorted(out)


def bruteforce_lp(lp: StandardLP) -> tuple:
    """LP status and optimal value by exhaustive subset enumeration.

    Feasibility: some independent column subset carries b with
    nonnegative weights.  Unboundedness: some circuit's kernel vector is
    nonnegative with negative cost.  The optimal value is the minimum
    over basic feasible solutions.  Returns ("optimal", value),
    ("infeasible", None), or ("unbounded", None).
    """
    m, n = lp.nrows, lp.ncols
    best = None
    feasible = all(x == 0 for x in lp.b)
    if feasible:
        best = ZERO
    for size in range(1, m + 1):
        for T in combinations(range(n), size):
            cols = [column(lp.A, j) for j in T]
            coeffs = in_linear_span(cols, lp.b)
            if coeffs is None:
                continue
            if in_linear_span(cols[:-1], cols[-1]) is not None:
                # dependent; every vertex also shows up on an independent
                # subset, so skipping loses nothing
                continue
            if any(c < 0 for c in coeffs):
                continue
            feasible = True
            value = sum(
                (lp.c[j] * c for j, c in zip(T, coeffs)), ZERO
            )
            if best is None or value < best:
                best = value
    if not feasible:
        return ("infeasible", None)
    for size in range(1, m + 2):
        for T in combinations(range(n), size):
            cols = tuple(column(lp.A, j) for j in T)
            kernel = nullspace(tuple(zip(*cols)), width=size)
            if len(kernel) != 1:
                continue
            r = kernel[0]
            if all(x >= 0 for x in r):
                ray = r
            elif all(x <= 0 for x in r):
                ray = tuple(-x for x in r)
            else:
                continue
            cost = sum((lp.c[j] * x for j, x in zip(T, ray)), ZERO)
            if cost < 0:
                return ("unbounded", None)
    return ("optimal", best)


def _angular_cmp(u, v) -> int:
    def half(w):
        x, y = w
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    cross = u[0] * v[1] - u[1] * v[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def tukey_depth(points, x) -> int:
    """Exact Tukey depth for dimension 1 or 2.

    Dimension 2 scans the critical directions (perpendiculars of the
    point offsets) plus a representative inside every open arc between
    angularly consecutive ones; the count of points in a closed
    halfplane is constant on each arc, so the scan is exhaustive.
    """
    pts = [vec(p) for p in points]
    x = vec(x)
    d = len(x)
    if d == 1:
        lo = sum(1 for p in pts if p[0] <= x[0])
        hi = sum(1 for p in pts if p[0] >= x[0])
        return min(lo, hi)
    if d != 2:
        raise PreconditionError("exact depth scan supports dimensions 1 and 2")
    offsets = [vsub(p, x) for p in pts]
    crit = []
    for o in offsets:
        if o[0] == 0 and o[1] == 0:
            continue
        crit.append((-o[1], o[0]))
        crit.append((o[1], -o[0]))
    if not crit:
        return len(pts)
    crit.sort(key=cmp_to_key(_angular_cmp))
    dirs = []
    for u in crit:
        if dirs and _angular_cmp(dirs[-1], u) == 0:
            continue
        dirs.append(u)
    candidates = list(dirs)
    for i, u in enumerate(dirs):
        v = dirs[(i + 1) % len(dirs)]
        mid = (u[0] + v[0], u[1] + v[1])
        if mid[0] == 0 and mid[1] == 0:
            continue  # opposite directions; the gap is covered by criticals
        candidates.append(mid)
    best = None
    for u in candidates:
        cnt = sum(1 for o in offsets if dot(o, u) >= 0)
        if best is None or cnt < best:
            best = cnt
    return best


def _hull_contains(points, x) -> bool:
    lifted = [tuple(vec(p)) + (ONE,) for p in points]
    target = tuple(vec(x)) + (ONE,)
    return ray_embrace(lifted, target) is not None


def simplicial_depth_count(points, x) -> int:
    """Number of (d+1)-point subsets whose closed hull contains x."""
    pts = [vec(p) for p in points]
    x = vec(x)
    d = len(x)
    count = 0
    for T in combinations(range(len(pts)), d + 1):
        if _hull_contains([pts[i] for i in T], x):
            count += 1
    return count


def _set_partitions(n: int, m: int):
    """All partitions of range(n) into exactly m nonempty parts."""

    def rec(i, parts):
        if i == n:
            if len(parts) == m:
                yield tuple(tuple(p) for p in parts)
            return
        for p in parts:
            p.append(i)
            yield from rec(i + 1, parts)
            p.pop()
        if len(parts) < m:
            parts.append([i])
            yield from rec(i + 1, parts)
            parts.pop()

    yield from rec(0, [])


def _parts_intersect(points, parts) -> bool:
    """Shared convex-hull point across all parts, decided by one LP."""
    d = len(points[0])
    m = len(parts)
    sizes = [len(p) for p in parts]
    n_vars = sum(sizes)
    offsets = []
    acc = 0
    for s in sizes:
        offsets.append(acc)
        acc += s
    rows = []
    rhs = []
    for j in range(1, m):
        for t in range(d):
            row = [ZERO] * n_vars
            for a, i in enumerate(parts[0]):
                row[offsets[0] + a] = points[i][t]
            for a, i in enumerate(parts[j]):
                row[offsets[j] + a] = row[offsets[j] + a] - points[i][t]
            rows.append(tuple(row))
            rhs.append(ZERO)
    for j in range(m):
        row = [ZERO] * n_vars
        for a in range(sizes[j]):
            row[offsets[j] + a] = ONE
        rows.append(tuple(row))
        rhs.append(ONE)
    return feasible_point(tuple(rows), tuple(rhs)) is not None


def tverberg_partitions_bruteforce(points, m: int) -> list:
    """All m-part partitions whose convex hulls share a point."""
    pts = [vec(p) for p in points]
    out = []
    for parts in _set_partitions(len(pts), m):
        if _parts_intersect(pts, parts):
            out.append(parts)
    return out


def min_distance_bruteforce(inst: CcpInstance):
    """Minimum potential over every colorful choice, with a witness."""
    best = None
    best_indices = None
    ranges = [range(len(color)) for color in inst.colors]
    for indices in product(*ranges):
        points = tuple(
            inst.colors[ci][pi] for ci, pi in enumerate(indices)
        )
        d2 = nearest_point_in_cone(points, inst.b).dist2
        if best is None or d2 < best:
            best, best_indices = d2, tuple(indices)
    return best, best_indices
