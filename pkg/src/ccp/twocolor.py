"""Exact (k, d-k) splits between two embracing color classes.

Given two size-d classes that each ray-embrace b and a count k, there is
a choice of exactly k points from the first class and d-k from the
second whose cone still contains b.  The search runs the parameterized
LP along the segment between the first two cube corners: corner one is
supported purely by class one, corner two purely by class two, and
adjacent cells along the segment change the class-one count by at most
one, so bisection on the crossing parameter t pins down a cell whose
vertex basis has count exactly k.

Degenerate inputs are handled by padding with singleton copies of b and
running the full general-position pipeline; well-separated integer
inputs take a fast path that pads with fixed integer simplex points
instead, skipping the perturbation entirely.  Both paths re-certify the
final split against the original, unscaled b.

The bisection carries a certified iteration cap derived from the bit
size of the segment breakpoints; exceeding it means the nondegeneracy
assumptions failed and raises rather than looping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .encoding import _feasible_d_subsets
from .errors import (
    GeneralPositionError,
    PreconditionError,
    TheoremViolationError,
)
from .instance import (
    CcpInstance,
    find_P2_violation,
    make_instance,
    perturb_to_general_position,
    rescale_to_integers,
)
from .linalg import vec
from .lp import ray_embrace
from .paramspace import (
    DerivedConstants,
    color_of_column,
    derive_constants,
    optimal_face_at,
    proj_cube_top,
)
from .rat import ONE, ZERO, rat


@dataclass(frozen=True)
class SplitResult:
    k: int
    indices1: tuple
    indices2: tuple
    coefficients1: tuple
    coefficients2: tuple
    iterations: int
    iteration_cap: int
    fast_path: bool


@dataclass(frozen=True)
class MidpointVerdict:
    kind: str  # "found" | "high" | "low"
    basis: Optional[tuple]
    counts: tuple


def iteration_cap(consts: DerivedConstants) -> int:
    """Bisection bound from the bit size of segment breakpoints.

    Every breakpoint along the segment is a root of an affine form whose
    integer coefficients (after clearing the cost denominators, a factor
    of D = N^(c d^3)) are below Gamma = 8 d^3 N^5 D.  Distinct
    breakpoints therefore differ by at least Gamma^(-2), and halving
    [0, 1] lands strictly inside the target cell's parameter interval
    within 2 log2(Gamma) iterations plus slack.
    """
    d = consts.dim
    gamma_bits = (8 * d**3).bit_length() + (
        5 + consts.c_exponent * d**3
    ) * consts.N.bit_length()
    return 2 * gamma_bits + 8


def _count_first(d: int, columns) -> int:
    return sum(1 for j in columns if color_of_column(d, j) == 0)


def classify_midpoint(
    ground: CcpInstance, consts: DerivedConstants, support: tuple, k: int
) -> MidpointVerdict:
    """Decide found / move left / move right from one support.

    A d-column support is a vertex cell: compare its class-one count
    with k directly.  A (d+1)-column support is an edge whose two
    endpoint bases are enumerated; their counts differ by at most one,
    which is audited, so either one matches k or both sit on the same
    side of it.
    """
    d = consts.dim
    if any(color_of_column(d, j) >= 2 for j in support):
        raise GeneralPositionError("support leaked into a padding class")
    if len(support) == d:
        cnt = _count_first(d, support)
        if cnt == k:
            return MidpointVerdict("found", tuple(support), (cnt,))
        return MidpointVerdict("high" if cnt > k else "low", None, (cnt,))
    if len(support) == d + 1:
        bases = _feasible_d_subsets(ground, support)
        if len(bases) != 2:
            raise GeneralPositionError(
                "edge support carries %d feasible bases, expected 2"
                % len(bases)
            )
        counts = tuple(_count_first(d, B) for B in bases)
        if abs(counts[0] - counts[1]) > 1:
            raise GeneralPositionError(
                "adjacent vertex bases differ by more than one class swap"
            )
        for B, cnt in zip(bases, counts):
            if cnt == k:
                return MidpointVerdict("found", B, counts)
        if min(counts) > k:
            return MidpointVerdict("high", None, counts)
        if max(counts) < k:
            return MidpointVerdict("low", None, counts)
        raise GeneralPositionError("edge counts straddle k without hitting it")
    raise GeneralPositionError(
        "segment support has %d columns, expected d or d+1" % len(support)
    )


def _structured_padding(d: int, b) -> tuple:
    """Fixed integer class embracing b: unit vectors plus the remainder."""
    pads = []
    for j in range(d - 1):
        pads.append(tuple(ONE if i == j else ZERO for i in range(d)))
    rest = tuple(
        b[i] - sum((p[i] for p in pads), ZERO) for i in range(d)
    )
    pads.append(rest)
    return tuple(pads)


def _segment_point(d: int, t):
    """The cube-top projection of ((1-t) e1 + t e2)."""
    raw = tuple(
        (ONE - t) if i == 0 else (t if i == 1 else ZERO) for i in range(d)
    )
    return proj_cube_top(raw)


def _endpoint_audit(ground, consts, which: int) -> None:
    d = consts.dim
    mu = tuple(ONE if i == which else ZERO for i in range(d))
    _, support = optimal_face_at(ground, consts, mu)
    block = tuple(range(which * d, (which + 1) * d))
    if support != block:
        raise GeneralPositionError(
            "segment endpoint %d is not supported by its own class" % (which + 1)
        )


def find_split(C1, C2, b, k: int, c_exponent: int = 12) -> SplitResult:
    """A certified split: k points of C1, d-k of C2, cone containing b.

    Indices may repeat when the degenerate fallback path collapses
    several perturbed copies onto one original point; the certificate
    coefficients are always re-derived against the original b.
    """
    b = vec(b)
    d = len(b)
    C1 = tuple(vec(p) for p in C1)
    C2 = tuple(vec(p) for p in C2)
    if d < 2:
        raise PreconditionError("splits need dimension at least 2")
    if len(C1) != d or len(C2) != d:
        raise PreconditionError("both classes must have exactly d points")
    if any(len(p) != d for p in C1 + C2):
        raise PreconditionError("point dimension mismatch")
    if not 1 <= k <= d - 1:
        raise PreconditionError("k must satisfy 1 <= k <= d-1")
    if ray_embrace(C1, b) is None:
        raise PreconditionError("class 1 does not ray-embrace b")
    if ray_embrace(C2, b) is None:
        raise PreconditionError("class 2 does not ray-embrace b")

    scaled = rescale_to_integers(make_instance(d, b, (C1, C2)))
    sC1, sC2 = scaled.colors
    fast = (
        find_P2_violation(tuple(sC1) + tuple(sC2), scaled.b) is None
    )
    if fast:
        pad = _structured_padding(d, scaled.b)
        ground = make_instance(
            d, scaled.b, (sC1, sC2) + (pad,) * (d - 2)
        )
        pmap = None
    else:
        literal = make_instance(
            d, b, (C1, C2) + ((tuple(b),),) * (d - 2)
        )
        ground, pmap = perturb_to_general_position(literal)
    consts = derive_constants(ground, c_exponent=c_exponent)
    _endpoint_audit(ground, consts, 0)
    _endpoint_audit(ground, consts, 1)
    cap = iteration_cap(consts)

    t_lo, t_hi = rat(0), rat(1)
    iterations = 0
    verdict = None
    while True:
        if iterations >= cap:
            raise GeneralPositionError(
                "bisection exceeded its certified cap of %d iterations" % cap
            )
        iterations += 1
        t = (t_lo + t_hi) / 2
        mu = _segment_point(d, t)
        _, support = optimal_face_at(ground, consts, mu)
        verdict = classify_midpoint(ground, consts, support, k)
        if verdict.kind == "found":
            break
        if verdict.kind == "high":
            t_lo = t
        else:
            t_hi = t

    basis = verdict.basis
    cols1 = sorted(j for j in basis if color_of_column(d, j) == 0)
    cols2 = sorted(j for j in basis if color_of_column(d, j) == 1)
    assert len(cols1) == k and len(cols2) == d - k
    if pmap is None:
        indices1 = tuple(j for j in cols1)
        indices2 = tuple(j - d for j in cols2)
    else:
        indices1 = tuple(pmap.provenance[0][j] for j in cols1)
        indices2 = tuple(pmap.provenance[1][j - d] for j in cols2)
    chosen = [C1[i] for i in indices1] + [C2[i] for i in indices2]
    coeffs = ray_embrace(chosen, b)
    if coeffs is None:
        raise TheoremViolationError(
            "split basis lost its embrace certificate on the original b"
        )
    return SplitResult(
        k=k,
        indices1=indices1,
        indices2=indices2,
        coefficients1=tuple(coeffs[:k]),
        coefficients2=tuple(coeffs[k:]),
        iterations=iterations,
        iteration_cap=cap,
        fast_path=fast,
    )
