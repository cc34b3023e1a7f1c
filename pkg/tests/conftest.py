"""Shared fixtures: a seeded RNG and instance generators.

Set CCP_SEED to reproduce a run; the default keeps CI deterministic.
Each test gets its own generator seeded from the global seed plus the
test id, so inserting a test never reshuffles another test's stream.
"""

from __future__ import annotations

import os
import random
import zlib

import pytest

from ccp.instance import (
    CcpInstance,
    find_P2_violation,
    make_instance,
    rescale_to_integers,
    satisfies_P1,
    satisfies_P2,
)
from ccp.lp import ray_embrace
from ccp.rat import ZERO, rat

SEED = int(os.environ.get("CCP_SEED", "20260818"))


@pytest.fixture
def rng(request):
    tag = zlib.crc32(request.node.nodeid.encode("utf-8"))
    return random.Random((SEED << 32) ^ tag)


def random_point(rng, d, lo=-3, hi=3):
    return tuple(rat(rng.randint(lo, hi)) for _ in range(d))


def random_rational_point(rng, d, num=9, den=9):
    return tuple(
        rat(rng.randint(-num, num), rng.randint(1, den)) for _ in range(d)
    )


def is_zero_vec(p) -> bool:
    return all(x == ZERO for x in p)


def random_embracing_color(rng, d, size, b, lo=-3, hi=3):
    """Rejection-sample distinct nonzero points whose cone contains b."""
    while True:
        pts = tuple(random_point(rng, d, lo, hi) for _ in range(size))
        if len(set(pts)) != size:
            continue
        if any(is_zero_vec(p) for p in pts):
            continue
        if ray_embrace(pts, b) is not None:
            return pts


def built_embracing_color(rng, d, size, b, lo=-3, hi=3, rational=False):
    """A color whose last point is solved for, so the embrace is built in.

    The first size-1 points are random; the last is b minus a random
    small nonnegative combination of them, which certifies b with
    coefficients (lambda_1, ..., lambda_{size-1}, 1).
    """
    while True:
        if rational:
            head = [random_rational_point(rng, d) for _ in range(size - 1)]
        else:
            head = [random_point(rng, d, lo, hi) for _ in range(size - 1)]
        lams = [rat(rng.randint(0, 2)) for _ in range(size - 1)]
        last = tuple(
            b[t] - sum((l * p[t] for l, p in zip(lams, head)), ZERO)
            for t in range(d)
        )
        pts = tuple(head) + (last,)
        if len(set(pts)) != size or any(is_zero_vec(p) for p in pts):
            continue
        return pts


def random_square_instance(rng, d, lo=-3, hi=3):
    """d colors of d integer points each, rejected until P1 and P2 hold."""
    while True:
        b = random_point(rng, d, lo, hi)
        if is_zero_vec(b):
            continue
        colors = tuple(
            random_embracing_color(rng, d, d, b, lo, hi) for _ in range(d)
        )
        inst = make_instance(d, b, colors)
        if satisfies_P1(inst) and satisfies_P2(inst):
            return inst


def random_pls_instance(rng, d, lo=-3, hi=3):
    """d colors of d points, embrace by construction, no position cleanup."""
    while True:
        b = random_point(rng, d, lo, hi)
        if is_zero_vec(b):
            continue
        colors = tuple(
            built_embracing_color(rng, d, d, b, lo, hi) for _ in range(d)
        )
        return make_instance(d, b, colors)


def random_rational_instance(rng, d, degenerate=None):
    """Rational-coordinate instance for the perturbation pipeline.

    degenerate=True plants a duplicated point or a copy of b inside a
    color, so the pipeline's slow path has something to repair; None
    flips a coin.
    """
    if degenerate is None:
        degenerate = rng.random() < 0.5
    while True:
        b = random_rational_point(rng, d)
        if is_zero_vec(b):
            continue
        colors = []
        for _ in range(d):
            size = rng.randint(d, d + 1)
            colors.append(
                built_embracing_color(rng, d, size, b, rational=True)
            )
        if degenerate:
            ci = rng.randrange(d)
            color = list(colors[ci])
            if rng.random() < 0.5:
                color[rng.randrange(len(color))] = tuple(b)
            else:
                color[rng.randrange(len(color))] = color[0]
            colors[ci] = tuple(color)
        inst = CcpInstance(dim=d, b=b, colors=tuple(colors))
        if any(
            ray_embrace(color, b) is None for color in inst.colors
        ):
            continue
        return inst


def random_two_color_pair(rng, d, lo=-3, hi=3):
    """(C1, C2, b) with b = sum(C1) = sum(C2) and the restricted position
    property that the split search's fast path needs."""
    while True:
        C1 = tuple(random_point(rng, d, lo, hi) for _ in range(d))
        if len(set(C1)) != d or any(is_zero_vec(p) for p in C1):
            continue
        b = tuple(sum((p[t] for p in C1), ZERO) for t in range(d))
        if is_zero_vec(b):
            continue
        head = [random_point(rng, d, lo, hi) for _ in range(d - 1)]
        last = tuple(
            b[t] - sum((p[t] for p in head), ZERO) for t in range(d)
        )
        C2 = tuple(head) + (last,)
        if len(set(C1 + C2)) != 2 * d or any(is_zero_vec(p) for p in C2):
            continue
        scaled = rescale_to_integers(make_instance(d, b, (C1, C2)))
        spts = tuple(scaled.colors[0]) + tuple(scaled.colors[1])
        if find_P2_violation(spts, scaled.b) is not None:
            continue
        return C1, C2, b
