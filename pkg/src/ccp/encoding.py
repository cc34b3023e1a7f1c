"""Chain encodings of the subdivision simplices over the parameter cube.

The optimality regions of the parameterized LP cut the top faces of the
cube into a polyhedral complex; each cell carries a unique pair
(support S, cube face (I0, I1)).  A simplex of the barycentric
subdivision at level k is a chain of cells q_0 c q_1 c ... c q_(k-1)
with dim q_i = i, stored bottom first as FaceEntry tuples.  The entry
relations are single tightenings: going down the chain either one
column joins the support or one free cube coordinate gets fixed, so the
constraint systems are nested and nonemptiness of the whole chain is
decided at the bottom, where the system is square.

The three local operations the path-following walk needs are all exact
and LP-free:

* verify_tuple: shape checks, a feasible-basis check for the top, and
  one square solve plus sign checks for the bottom vertex.
* lift/drop: append or remove the top entry (freeing or fixing the next
  cube coordinate); purely combinatorial.
* facet_flip: the unique other simplex sharing the facet that omits one
  chain position.  At interior positions this is the lattice diamond
  (swap the order of the two tightenings).  At the top it is either the
  other endpoint vertex of a polytope edge (enumerate feasible d-subsets
  of the d+1 support columns; exactly two exist) or the other unit cube
  coordinate of the entry below.  At the bottom it is the other endpoint
  of the 1-dimensional cell above, found by square solves over the
  candidate tightenings; general position makes exactly two candidates
  succeed, which is audited.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import GeneralPositionError, TheoremViolationError
from .instance import CcpInstance
from .linalg import dot, nullspace, submatrix_columns, try_solve_square
from .paramspace import (
    DerivedConstants,
    ReducedCostForm,
    instance_matrix,
    label_of_support,
    parameter_region_feasible,
    proj_simplex,
    reduced_cost_form,
)
from .rat import ONE, ZERO


@dataclass(frozen=True, order=True)
class FaceEntry:
    """One cell: support columns S and the cube face fixing I0 to 0, I1 to 1."""

    S: tuple
    I0: tuple
    I1: tuple

    def free_coords(self, d: int) -> tuple:
        fixed = set(self.I0) | set(self.I1)
        return tuple(l for l in range(d) if l not in fixed)


def make_entry(S, I0, I1) -> FaceEntry:
    return FaceEntry(
        S=tuple(sorted(S)), I0=tuple(sorted(I0)), I1=tuple(sorted(I1))
    )


@dataclass(frozen=True, order=True)
class SimplexEncoding:
    """A chain of nested cells, bottom (dimension 0) first."""

    entries: tuple

    @property
    def level(self) -> int:
        return len(self.entries)

    @property
    def top(self) -> FaceEntry:
        return self.entries[-1]

    @property
    def bottom(self) -> FaceEntry:
        return self.entries[0]


def entry_to_obj(e: FaceEntry) -> dict:
    """1-based serialization used by reports and traces."""
    return {
        "S": [j + 1 for j in e.S],
        "I0": [l + 1 for l in e.I0],
        "I1": [l + 1 for l in e.I1],
    }


def encoding_to_obj(enc: SimplexEncoding) -> list:
    return [entry_to_obj(e) for e in enc.entries]


def entry_from_obj(obj: dict) -> FaceEntry:
    return make_entry(
        (j - 1 for j in obj["S"]),
        (l - 1 for l in obj["I0"]),
        (l - 1 for l in obj["I1"]),
    )


def encoding_from_obj(obj: list) -> SimplexEncoding:
    return SimplexEncoding(entries=tuple(entry_from_obj(o) for o in obj))


def _entry_wellformed(d: int, e: FaceEntry) -> bool:
    n = d * d
    if list(e.S) != sorted(set(e.S)) or not e.S:
        return False
    if any(not 0 <= j < n for j in e.S):
        return False
    for part in (e.I0, e.I1):
        if list(part) != sorted(set(part)):
            return False
        if any(not 0 <= l < d for l in part):
            return False
    if set(e.I0) & set(e.I1):
        return False
    return len(e.I1) >= 1


def _step_ok(lo: FaceEntry, hi: FaceEntry) -> bool:
    """One tightening from chain entry hi (dim i+1) down to lo (dim i)."""
    if lo.I0 == hi.I0 and lo.I1 == hi.I1:
        s_lo, s_hi = set(lo.S), set(hi.S)
        return s_hi < s_lo and len(s_lo) == len(s_hi) + 1
    if lo.S != hi.S:
        return False
    s0_lo, s0_hi = set(lo.I0), set(hi.I0)
    s1_lo, s1_hi = set(lo.I1), set(hi.I1)
    if s1_lo == s1_hi and s0_hi < s0_lo and len(s0_lo) == len(s0_hi) + 1:
        (j,) = s0_lo - s0_hi
        return j not in s1_hi
    if s0_lo == s0_hi and s1_hi < s1_lo and len(s1_lo) == len(s1_hi) + 1:
        (j,) = s1_lo - s1_hi
        return j not in s0_hi
    return False


def _step_tag(lo: FaceEntry, hi: FaceEntry) -> tuple:
    """Identity of the constraint tightened between hi and lo."""
    d_s = set(lo.S) - set(hi.S)
    if d_s:
        (a,) = d_s
        return ("col", a)
    d_0 = set(lo.I0) - set(hi.I0)
    if d_0:
        (j,) = d_0
        return ("c0", j)
    (j,) = set(lo.I1) - set(hi.I1)
    return ("c1", j)


def tuple_shape_ok(d: int, enc: SimplexEncoding) -> bool:
    """All combinatorial validity conditions (no geometry)."""
    k = enc.level
    if not 1 <= k <= d:
        return False
    if not all(_entry_wellformed(d, e) for e in enc.entries):
        return False
    top = enc.top
    if top.I0 != tuple(range(k, d)):
        return False
    if len(top.I1) != 1 or len(top.S) != d:
        return False
    for i in range(k - 1):
        if not _step_ok(enc.entries[i], enc.entries[i + 1]):
            return False
    return True


def _feasible_d_subsets(inst: CcpInstance, support) -> list:
    """Sorted d-subsets of the support that are feasible bases."""
    d = inst.dim
    A = instance_matrix(inst)
    out = []
    for T in combinations(sorted(support), d):
        x = try_solve_square(submatrix_columns(A, T), inst.b)
        if x is not None and all(v >= 0 for v in x):
            out.append(tuple(T))
    return out


def is_feasible_ground_basis(inst: CcpInstance, S) -> bool:
    S = tuple(sorted(S))
    if len(S) != inst.dim:
        return False
    A = instance_matrix(inst)
    x = try_solve_square(submatrix_columns(A, S), inst.b)
    return x is not None and all(v >= 0 for v in x)


def verify_tuple(
    inst: CcpInstance,
    consts: DerivedConstants,
    enc: SimplexEncoding,
    form: Optional[ReducedCostForm] = None,
) -> bool:
    """Exact validity of a chain encoding.

    Shape, top-entry basis feasibility, and nonemptiness of the bottom
    cell.  Because every step only tightens one constraint, the bottom
    system implies every higher cell is nonempty as well, so this single
    square check certifies the whole chain.
    """
    d = consts.dim
    if not tuple_shape_ok(d, enc):
        return False
    if not is_feasible_ground_basis(inst, enc.top.S):
        return False
    if form is None or form.B != enc.top.S:
        try:
            form = reduced_cost_form(inst, consts, enc.top.S)
        except Exception:
            return False
    bot = enc.bottom
    mu = parameter_region_feasible(form, d, bot.S, bot.I0, bot.I1)
    return mu is not None


def lift_simplex(enc: SimplexEncoding, d: int) -> SimplexEncoding:
    """Free cube coordinate k: the unique level k+1 simplex over this one."""
    k = enc.level
    assert k < d, "cannot lift past level d"
    top = enc.top
    assert top.I0 == tuple(range(k, d))
    new_top = make_entry(top.S, tuple(range(k + 1, d)), top.I1)
    return SimplexEncoding(entries=enc.entries + (new_top,))


def drop_simplex(enc: SimplexEncoding, d: int) -> Optional[SimplexEncoding]:
    """Remove the top entry if the prefix is itself a valid chain.

    That happens exactly when the last step fixed cube coordinate k-1 to
    zero, which is the inverse of lift_simplex.  No geometry is needed:
    the prefix has the same bottom cell.
    """
    k = enc.level
    if k < 2:
        return None
    top, below = enc.top, enc.entries[k - 2]
    if below.S != top.S or below.I1 != top.I1:
        return None
    if set(below.I0) != set(top.I0) | {k - 1}:
        return None
    prefix = SimplexEncoding(entries=enc.entries[:-1])
    assert tuple_shape_ok(d, prefix)
    return prefix


def _apply_move(base: FaceEntry, move: tuple) -> FaceEntry:
    kind, v = move
    if kind == "col":
        return make_entry(base.S + (v,), base.I0, base.I1)
    if kind == "c0":
        return make_entry(base.S, base.I0 + (v,), base.I1)
    assert kind == "c1"
    return make_entry(base.S, base.I0, base.I1 + (v,))


def _flip_interior(enc: SimplexEncoding, pos: int) -> SimplexEncoding:
    """Diamond flip: swap the order of the two tightenings around pos.

    The face lattice interval between cells two dimensions apart is a
    diamond, so both orders are genuine cells and the other order is the
    unique other simplex sharing this facet.
    """
    lo, cur, hi = enc.entries[pos - 1], enc.entries[pos], enc.entries[pos + 1]
    moves = (
        [("col", a) for a in sorted(set(lo.S) - set(hi.S))]
        + [("c0", j) for j in sorted(set(lo.I0) - set(hi.I0))]
        + [("c1", j) for j in sorted(set(lo.I1) - set(hi.I1))]
    )
    assert len(moves) == 2, "chain entries two apart differ by two moves"
    candidates = [_apply_move(hi, mv) for mv in moves]
    assert cur in candidates, "current entry must be one of the diamond pair"
    other = candidates[1] if candidates[0] == cur else candidates[0]
    assert _step_ok(lo, other) and _step_ok(other, hi)
    entries = enc.entries[:pos] + (other,) + enc.entries[pos + 1 :]
    return SimplexEncoding(entries=entries)


def _flip_top(
    inst: CcpInstance, consts: DerivedConstants, enc: SimplexEncoding
) -> SimplexEncoding:
    """Flip the chain top across the facet that omits it.

    Only called when the facet is not a drop facet.  Two shapes occur:
    the entry below has d+1 support columns (an edge of the polytope;
    the other endpoint basis is the flip) or it has two unit cube
    coordinates (the other one is the flip).
    """
    k = enc.level
    d = consts.dim
    assert k >= 2
    below, cur = enc.entries[k - 2], enc.top
    tail = tuple(range(k, d))
    if below.I0 == tail and len(below.I1) == 1:
        assert len(below.S) == d + 1
        bases = _feasible_d_subsets(inst, below.S)
        if len(bases) != 2:
            raise GeneralPositionError(
                "edge support carries %d feasible bases, expected 2"
                % len(bases)
            )
        if cur.S not in bases:
            raise TheoremViolationError("chain top is not a vertex of its edge")
        other = bases[1] if bases[0] == cur.S else bases[0]
        new_top = make_entry(other, cur.I0, cur.I1)
    elif below.I0 == tail and len(below.I1) == 2:
        assert below.S == cur.S and len(cur.I1) == 1
        (j_cur,) = cur.I1
        (j_other,) = set(below.I1) - {j_cur}
        new_top = make_entry(cur.S, cur.I0, (j_other,))
    else:
        raise TheoremViolationError(
            "flip requested across a facet that only a drop can resolve"
        )
    return SimplexEncoding(entries=enc.entries[:-1] + (new_top,))


def _flip_bottom(
    consts: DerivedConstants,
    enc: SimplexEncoding,
    form: ReducedCostForm,
) -> SimplexEncoding:
    """Flip the bottom vertex to the other endpoint of the cell above.

    Candidates are all single tightenings of entry 1; each is decided by
    a square solve plus sign checks.  Exactly two succeed (the two
    endpoints of the 1-dimensional cell); anything else means general
    position failed.
    """
    d = consts.dim
    e1 = enc.entries[1]
    cur = enc.bottom
    candidates = []
    for a in range(consts.n_columns):
        if a not in e1.S:
            candidates.append(_apply_move(e1, ("col", a)))
    for j in e1.free_coords(d):
        candidates.append(_apply_move(e1, ("c0", j)))
        candidates.append(_apply_move(e1, ("c1", j)))
    passing = [
        c
        for c in candidates
        if parameter_region_feasible(form, d, c.S, c.I0, c.I1) is not None
    ]
    if cur not in passing:
        raise TheoremViolationError("current bottom vertex failed its own system")
    if len(passing) != 2:
        raise GeneralPositionError(
            "cell above the bottom vertex has %d endpoint candidates, expected 2"
            % len(passing)
        )
    other = passing[1] if passing[0] == cur else passing[0]
    return SimplexEncoding(entries=(other,) + enc.entries[1:])


def facet_flip(
    inst: CcpInstance,
    consts: DerivedConstants,
    enc: SimplexEncoding,
    pos: int,
    form: Optional[ReducedCostForm] = None,
) -> SimplexEncoding:
    """The unique other valid chain sharing the facet that omits entry pos.

    Precondition: the facet is not a drop facet (callers try drop_simplex
    first when pos is the top).  Raises GeneralPositionError when the
    audited uniqueness counts fail.
    """
    k = enc.level
    assert k >= 2, "a single-entry chain has no facet neighbors"
    assert 0 <= pos < k
    if pos == k - 1:
        return _flip_top(inst, consts, enc)
    if pos == 0:
        if form is None or form.B != enc.top.S:
            form = reduced_cost_form(inst, consts, enc.top.S)
        return _flip_bottom(consts, enc, form)
    return _flip_interior(enc, pos)


def entry_labels(consts: DerivedConstants, enc: SimplexEncoding) -> tuple:
    """Dominant color of each chain entry's support (0-based)."""
    return tuple(
        label_of_support(consts.dim, e.S) for e in enc.entries
    )


def _equality_row(form: ReducedCostForm, d: int, tag: tuple):
    kind, v = tag
    if kind == "col":
        return form.L[v], -form.K[v]
    unit = tuple(ONE if t == v else ZERO for t in range(d))
    if kind == "c0":
        return unit, ZERO
    assert kind == "c1"
    return unit, ONE


def _inequality_row(form: ReducedCostForm, d: int, tag: tuple):
    """The tag's inequality written as coeffs . mu >= rhs."""
    kind, v = tag
    if kind == "col":
        return form.L[v], -form.K[v]
    if kind == "c0":
        return tuple(ONE if t == v else ZERO for t in range(d)), ZERO
    assert kind == "c1"
    return tuple(-ONE if t == v else ZERO for t in range(d)), -ONE


def bottom_equality_tags(enc: SimplexEncoding, B) -> list:
    """Tags of the bottom cell's equality system relative to basis B."""
    bot = enc.bottom
    tags = [("col", j) for j in bot.S if j not in set(B)]
    tags += [("c0", l) for l in bot.I0]
    tags += [("c1", l) for l in bot.I1]
    return tags


def relint_witnesses(
    inst: CcpInstance,
    consts: DerivedConstants,
    enc: SimplexEncoding,
    form: Optional[ReducedCostForm] = None,
) -> tuple:
    """One point in each chain cell, jointly spanning each cell's hull.

    v_0 is the bottom vertex.  v_i relaxes exactly the constraint the
    chain tightened between entries i and i-1 and rides the resulting
    line to its far end, so v_i lies in q_i but not q_(i-1) and
    aff(v_0..v_i) = aff(q_i).  Witnesses are returned projected to the
    standard simplex, where the orientation determinants live.
    """
    d = consts.dim
    k = enc.level
    if form is None or form.B != enc.top.S:
        form = reduced_cost_form(inst, consts, enc.top.S)
    eq_tags = bottom_equality_tags(enc, form.B)
    assert len(eq_tags) == d, "bottom system of a valid chain is square"
    rows = [_equality_row(form, d, t) for t in eq_tags]
    E = tuple(r[0] for r in rows)
    rhs = tuple(r[1] for r in rows)
    v0 = try_solve_square(E, rhs)
    if v0 is None:
        raise GeneralPositionError("bottom vertex system is singular")
    step_tags = [
        _step_tag(enc.entries[i - 1], enc.entries[i]) for i in range(1, k)
    ]
    pool = []
    top = enc.top
    Sset = set(top.S)
    for j in range(consts.n_columns):
        if j not in Sset:
            pool.append(("col", j))
    for l in top.free_coords(d):
        pool.append(("c0", l))
        pool.append(("c1", l))
    eq_set = set(eq_tags)
    witnesses = [v0]
    for tag in step_tags:
        reduced = [
            _equality_row(form, d, t)[0] for t in eq_tags if t != tag
        ]
        kernel = nullspace(tuple(reduced), width=d)
        if len(kernel) != 1:
            raise GeneralPositionError(
                "relaxed witness line has kernel dimension %d" % len(kernel)
            )
        u = kernel[0]
        coeffs, rhs_t = _inequality_row(form, d, tag)
        slope = dot(coeffs, u)
        if slope == 0:
            raise GeneralPositionError("witness line is parallel to its own face")
        if slope < 0:
            u = tuple(-x for x in u)
        t_max = None
        for other in pool:
            if other in eq_set and other != tag:
                continue
            if other == tag:
                continue
            o_coeffs, o_rhs = _inequality_row(form, d, other)
            margin = dot(o_coeffs, v0) - o_rhs
            o_slope = dot(o_coeffs, u)
            assert margin >= 0, "bottom vertex violates its own region"
            if o_slope < 0:
                bound = margin / -o_slope
                if t_max is None or bound < t_max:
                    t_max = bound
        if t_max is None:
            raise GeneralPositionError("witness line escaped the cube")
        if t_max <= 0:
            raise GeneralPositionError("degenerate witness edge of length 0")
        witnesses.append(tuple(a + t_max * b for a, b in zip(v0, u)))
    return tuple(proj_simplex(w) for w in witnesses)
