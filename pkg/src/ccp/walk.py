"""Path-following over the labeled subdivision simplices.

The graph's level-k vertices are valid chains whose entry labels cover
the first k-1 colors; the source is the unique level-1 chain at the
first cube corner.  A fully labeled chain reaches the next level through
a lift, a chain with a duplicated label has exactly two label-preserving
facets, and every other facet is resolved by drop or flip.  Orientation
determinants over the witness points turn the undirected degree-1/2
structure into a directed path; following it from the source must end in
a fully labeled level-d chain, whose top support is a colorful feasible
basis.

All structural facts the argument relies on are asserted at every node:
tuple validity, label coverage, expected degree, antisymmetry of the
orientation across each traversed edge, opposite signs at degree-2
nodes, and nonnegativity (in fact positivity) of the final coefficients.
A violation raises GeneralPositionError or TheoremViolationError rather
than returning a bad certificate.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Callable, Optional

from .encoding import (
    SimplexEncoding,
    encoding_to_obj,
    entry_labels,
    drop_simplex,
    facet_flip,
    lift_simplex,
    make_entry,
    relint_witnesses,
    verify_tuple,
)
from .errors import (
    BudgetExceededError,
    GeneralPositionError,
    TheoremViolationError,
)
from .instance import CcpInstance, ColorfulChoice, choice_is_certified
from .linalg import det, solve_square, submatrix_columns
from .paramspace import (
    DerivedConstants,
    color_of_column,
    instance_matrix,
    optimal_face_at,
    reduced_cost_form,
)
from .rat import ONE, ZERO, rat, sign

DEFAULT_BUDGET = 2**40


@dataclass(frozen=True)
class Edge:
    kind: str  # "flip" | "drop" | "lift"
    position: Optional[int]
    target: SimplexEncoding


@dataclass(frozen=True)
class WalkResult:
    choice: ColorfulChoice
    basis: tuple
    steps: int
    nodes_visited: int
    inverted: bool
    final: SimplexEncoding


def w_vector(d: int, i: int) -> tuple:
    """Fixed filler vertex i (1-based, 2 <= i <= d) on the simplex hull.

    Coordinates 2, ..., 2, 1-2(i-1), 0, ..., 0 with the middle entry at
    position i; the entries sum to 1.
    """
    assert 2 <= i <= d
    coords = []
    for j in range(1, d + 1):
        if j < i:
            coords.append(rat(2))
        elif j == i:
            coords.append(rat(1 - 2 * (i - 1)))
        else:
            coords.append(ZERO)
    assert sum(coords, ZERO) == ONE
    return tuple(coords)


def standard_source(inst: CcpInstance, consts: DerivedConstants) -> SimplexEncoding:
    """The unique level-1 chain: the vertex cell at the first cube corner."""
    d = consts.dim
    mu = tuple(ONE if i == 0 else ZERO for i in range(d))
    basis, support = optimal_face_at(inst, consts, mu)
    block = tuple(range(d))
    if basis != block or support != block:
        raise GeneralPositionError(
            "source corner is not supported by exactly the first color block"
        )
    entry = make_entry(basis, range(1, d), (0,))
    enc = SimplexEncoding(entries=(entry,))
    assert verify_tuple(inst, consts, enc)
    return enc


def _resolve_facet(inst, consts, enc, pos, form) -> Optional[Edge]:
    k = enc.level
    if pos == k - 1:
        dropped = drop_simplex(enc, consts.dim)
        if dropped is not None:
            return Edge("drop", pos, dropped)
        if k == 1:
            return None
    return Edge("flip", pos, facet_flip(inst, consts, enc, pos, form))


def node_edges(inst, consts, enc, form, labels) -> list:
    """The label-preserving edges at a node, in deterministic order."""
    k = enc.level
    d = consts.dim
    label_set = set(labels)
    if not label_set <= set(range(k)):
        raise GeneralPositionError(
            "support label outside the active colors at level %d" % k
        )
    if not set(range(k - 1)) <= label_set:
        raise TheoremViolationError("walk reached a chain missing a low label")
    edges = []
    if label_set == set(range(k)):
        p = labels.index(k - 1)
        e = _resolve_facet(inst, consts, enc, p, form)
        if e is not None:
            edges.append(e)
        if k < d:
            edges.append(Edge("lift", None, lift_simplex(enc, d)))
    else:
        dup = next(l for l in labels if labels.count(l) == 2)
        positions = [i for i, l in enumerate(labels) if l == dup]
        assert len(positions) == 2
        for p in positions:
            e = _resolve_facet(inst, consts, enc, p, form)
            if e is None:
                raise GeneralPositionError(
                    "duplicated-label facet has no neighbor at level %d" % k
                )
            edges.append(e)
    return edges


def edge_orientation_sign(
    d: int, enc: SimplexEncoding, labels, witnesses, edge: Edge
) -> int:
    """Sign of the oriented facet determinant for an edge at this node.

    Columns: the vertex off the shared facet first, then the facet
    vertices (real witnesses and fixed fillers together) sorted by
    label.  Rows: all-ones, then the first d-1 coordinates.
    """
    k = enc.level
    if edge.kind == "flip":
        flip_col = witnesses[edge.position]
        facet = [
            (labels[i], witnesses[i]) for i in range(k) if i != edge.position
        ]
        fillers = range(k + 1, d + 1)
    elif edge.kind == "drop":
        flip_col = witnesses[k - 1]
        facet = [(labels[i], witnesses[i]) for i in range(k - 1)]
        fillers = range(k + 1, d + 1)
    else:
        assert edge.kind == "lift"
        flip_col = w_vector(d, k + 1)
        facet = [(labels[i], witnesses[i]) for i in range(k)]
        fillers = range(k + 2, d + 1)
    facet = facet + [(i - 1, w_vector(d, i)) for i in fillers]
    seen = [l for l, _ in facet]
    assert len(set(seen)) == len(seen) == d - 1
    facet.sort(key=lambda it: it[0])
    cols = [flip_col] + [v for _, v in facet]
    matrix = tuple(
        tuple(ONE for _ in range(d)) if r == 0 else tuple(c[r - 1] for c in cols)
        for r in range(d)
    )
    s = sign(det(matrix))
    if s == 0:
        raise GeneralPositionError("degenerate orientation determinant")
    return s


def encoding_digest(enc: SimplexEncoding) -> str:
    payload = json.dumps(encoding_to_obj(enc), sort_keys=True)
    return hashlib.sha256(payload.encode("ascii")).hexdigest()[:16]


def _extract_choice(inst: CcpInstance, enc: SimplexEncoding) -> tuple:
    """Colorful basis and certified choice from a fully labeled top."""
    d = inst.dim
    S = enc.top.S
    colors = [color_of_column(d, j) for j in S]
    if sorted(colors) != list(range(d)):
        raise TheoremViolationError("final support is not colorful")
    A = instance_matrix(inst)
    x = solve_square(submatrix_columns(A, S), inst.b)
    if any(v <= 0 for v in x):
        raise GeneralPositionError("final basic solution is not strictly positive")
    indices = [0] * d
    coeffs = [ZERO] * d
    for j, v in zip(S, x):
        ci = color_of_column(d, j)
        indices[ci] = j - ci * d
        coeffs[ci] = v
    choice = ColorfulChoice(
        point_indices=tuple(indices), coefficients=tuple(coeffs)
    )
    if not choice_is_certified(inst, choice):
        raise TheoremViolationError("extracted choice failed certification")
    return S, choice


def run_standard_walk(
    inst: CcpInstance,
    consts: DerivedConstants,
    budget: int = DEFAULT_BUDGET,
    trace: Optional[Callable[[dict], None]] = None,
) -> WalkResult:
    """Follow the directed path from the standard source to a solution.

    Every node is re-verified and every orientation identity is checked
    as the walk goes; the budget bounds the number of traversed edges.
    """
    d = consts.dim
    node = standard_source(inst, consts)
    prev: Optional[SimplexEncoding] = None
    prev_sign = 0
    inverted = False
    inv = 1
    steps = 0
    seen = {node}
    while True:
        form = reduced_cost_form(inst, consts, node.top.S)
        if not verify_tuple(inst, consts, node, form):
            raise TheoremViolationError("walk visited an invalid chain")
        labels = entry_labels(consts, node)
        k = node.level
        solved = k == d and set(labels) == set(range(d))
        edges = node_edges(inst, consts, node, form, labels)
        witnesses = relint_witnesses(inst, consts, node, form)
        signs = [edge_orientation_sign(d, node, labels, witnesses, e) for e in edges]
        if trace is not None:
            trace(
                {
                    "step": steps,
                    "level": k,
                    "labels": [l + 1 for l in labels],
                    "digest": encoding_digest(node),
                    "solved": solved,
                }
            )
        if prev is None:
            if solved:
                # only possible when d == 1, where the source is the answer
                basis, choice = _extract_choice(inst, node)
                return WalkResult(choice, basis, steps, len(seen), inverted, node)
            if len(edges) != 1:
                raise TheoremViolationError(
                    "source must have exactly one edge, found %d" % len(edges)
                )
            inv = 1 if signs[0] > 0 else -1
            inverted = inv < 0
        else:
            back = [i for i, e in enumerate(edges) if e.target == prev]
            if len(back) != 1:
                raise TheoremViolationError("walk lost the edge it arrived on")
            if signs[back[0]] != -prev_sign:
                raise TheoremViolationError("orientation antisymmetry failed")
            if solved:
                if len(edges) != 1:
                    raise TheoremViolationError("solution node must have degree 1")
                if inv * signs[0] >= 0:
                    raise TheoremViolationError("solution edge must be incoming")
                basis, choice = _extract_choice(inst, node)
                return WalkResult(choice, basis, steps, len(seen), inverted, node)
            if len(edges) != 2:
                raise TheoremViolationError(
                    "interior node must have degree 2, found %d" % len(edges)
                )
            if signs[0] * signs[1] >= 0:
                raise TheoremViolationError("degree-2 node edges must alternate")
        outgoing = [i for i, s in enumerate(signs) if inv * s > 0]
        if len(outgoing) != 1:
            raise TheoremViolationError("expected exactly one outgoing edge")
        chosen = edges[outgoing[0]]
        if steps >= budget:
            raise BudgetExceededError(
                "walk exceeded its budget of %d steps" % budget
            )
        prev = node
        prev_sign = signs[outgoing[0]]
        node = chosen.target
        steps += 1
        if node in seen:
            raise TheoremViolationError("walk revisited a chain; path is broken")
        seen.add(node)
