"""Local search over colorful choices with an exact distance potential.

The potential of a choice is the squared distance from the target to the
cone spanned by the chosen points, computed exactly by enumerating
support subsets and checking the projection optimality conditions.
Neighbors swap a single point within one color.  Any strict local
minimum must sit at potential zero, where the projection coefficients
are the certificate; a positive local minimum would contradict the
underlying existence theorem and raises instead of returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional

from .errors import BudgetExceededError, TheoremViolationError
from .instance import (
    CcpInstance,
    ColorfulChoice,
    assert_valid,
    choice_is_certified,
)
from .linalg import dot, gram_matrix, try_solve_square, vsub
from .rat import ZERO, Rat

DEFAULT_BUDGET = 2**40


@dataclass(frozen=True)
class ConeProjection:
    point: tuple
    coefficients: tuple  # one per generator, zeros off the support
    dist2: Rat


def nearest_point_in_cone(points, b) -> ConeProjection:
    """Exact Euclidean projection of b onto pos(points).

    Scans independent support subsets in deterministic order (by size,
    then lexicographic) and returns the first one whose least-squares
    solution has nonnegative weights and separates every generator.
    Those conditions pin down the unique projection, so the first hit is
    the answer.
    """
    points = tuple(tuple(p) for p in points)
    d = len(b)
    n = len(points)
    max_size = min(n, d)
    for size in range(max_size + 1):
        for T in combinations(range(n), size):
            sub = [points[i] for i in T]
            if size == 0:
                alpha = ()
            else:
                G = gram_matrix(sub)
                rhs = tuple(dot(p, b) for p in sub)
                alpha = try_solve_square(G, rhs)
                if alpha is None:
                    continue
                if any(a < 0 for a in alpha):
                    continue
            x = tuple(
                sum((alpha[t] * sub[t][i] for t in range(size)), ZERO)
                for i in range(d)
            )
            residual = vsub(b, x)
            if any(dot(p, residual) > 0 for p in points):
                continue
            full = [ZERO] * n
            for t, i in enumerate(T):
                full[i] = alpha[t]
            return ConeProjection(
                point=x, coefficients=tuple(full), dist2=dot(residual, residual)
            )
    raise AssertionError("projection scan cannot exhaust without a hit")


def choice_points(inst: CcpInstance, indices) -> tuple:
    return tuple(inst.colors[ci][indices[ci]] for ci in range(inst.n_colors))


def potential(inst: CcpInstance, indices) -> Rat:
    return nearest_point_in_cone(choice_points(inst, indices), inst.b).dist2


def improving_swap(
    inst: CcpInstance, indices, current: Rat, best: bool = False
):
    """A single-color swap that strictly lowers the potential, or None.

    Default is first improvement in color-then-index order; best=True
    scans everything and keeps the largest drop (ties to the earliest).
    """
    found = None
    found_value = current
    for ci in range(inst.n_colors):
        for t in range(len(inst.colors[ci])):
            if t == indices[ci]:
                continue
            cand = indices[:ci] + (t,) + indices[ci + 1 :]
            value = potential(inst, cand)
            if value < found_value:
                if not best:
                    return cand, value
                found, found_value = cand, value
    if found is None:
        return None
    return found, found_value


@dataclass(frozen=True)
class LocalSearchResult:
    choice: ColorfulChoice
    steps: int
    start: tuple
    final_potential: Rat


def run_local_search(
    inst: CcpInstance,
    start: Optional[tuple] = None,
    budget: int = DEFAULT_BUDGET,
    best: bool = False,
    trace: Optional[Callable[[dict], None]] = None,
) -> LocalSearchResult:
    """Descend to a potential-zero choice and certify it.

    The standard start picks the first point of every color.  Each step
    must strictly decrease the exact potential; a local optimum with
    positive potential raises TheoremViolationError.
    """
    assert_valid(inst)
    if start is None:
        start = (0,) * inst.n_colors
    start = tuple(start)
    assert len(start) == inst.n_colors
    for ci, t in enumerate(start):
        assert 0 <= t < len(inst.colors[ci]), "start index out of range"
    indices = start
    value = potential(inst, indices)
    steps = 0
    while True:
        if trace is not None:
            trace({"step": steps, "indices": list(indices), "potential": value})
        if value == 0:
            proj = nearest_point_in_cone(choice_points(inst, indices), inst.b)
            assert proj.dist2 == 0
            choice = ColorfulChoice(
                point_indices=indices, coefficients=proj.coefficients
            )
            if not choice_is_certified(inst, choice):
                raise TheoremViolationError(
                    "zero-potential choice failed certification"
                )
            return LocalSearchResult(choice, steps, start, value)
        move = improving_swap(inst, indices, value, best=best)
        if move is None:
            raise TheoremViolationError(
                "local minimum with positive potential; the distance "
                "argument guarantees none exists"
            )
        if steps >= budget:
            raise BudgetExceededError(
                "local search exceeded its budget of %d swaps" % budget
            )
        new_indices, new_value = move
        assert new_value < value, "swaps must strictly decrease the potential"
        indices, value = new_indices, new_value
        steps += 1
