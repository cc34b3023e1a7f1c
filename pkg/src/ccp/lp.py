"""Exact linear programming over the rationals.

Standard form throughout: minimize c.x subject to Ax = b, x >= 0.
Pivoting uses Bland's rule, so runs are deterministic and finite.  A
basis is a sorted tuple of column indices whose submatrix is square and
nonsingular.  Optimality of a basis means the extended reduced cost
vector (zero on the basis by construction) is nonnegative everywhere;
the maximal optimal face is read off as the zero set of that vector.

Every terminal state carries an exactly checkable certificate: optimal
bases carry reduced costs, unbounded runs carry an improving ray, and
infeasible runs carry a Farkas vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import LpInfeasibleError, LpUnboundedError, PreconditionError, SingularMatrixError
from .linalg import (
    Matrix,
    Vector,
    column,
    dot,
    is_zero_vector,
    mat_from_columns,
    mat_vec,
    submatrix_columns,
    solve_square,
    transpose,
    try_solve_square,
)
from .rat import ONE, ZERO

_PIVOT_GUARD = 10_000_000


@dataclass(frozen=True)
class StandardLP:
    A: Matrix
    b: Vector
    c: Vector

    def __post_init__(self):
        m = len(self.A)
        assert len(self.b) == m, "rhs length must match row count"
        if m:
            n = len(self.A[0])
            assert all(len(row) == n for row in self.A), "ragged matrix"
            assert len(self.c) == n, "cost length must match column count"

    @property
    def nrows(self) -> int:
        return len(self.A)

    @property
    def ncols(self) -> int:
        return len(self.c)


def make_lp(A, b, c) -> StandardLP:
    return StandardLP(tuple(tuple(row) for row in A), tuple(b), tuple(c))


@dataclass(frozen=True)
class LpResult:
    """Terminal state of simplex_solve with its certificate.

    kept_rows lists the row indices actually pivoted on; rows outside it
    were exact linear consequences of the kept ones.  basis and value are
    None unless status is "optimal"; ray is the improving direction for
    "unbounded"; farkas is (y, y.b) for "infeasible" with y.A <= 0 and
    y.b > 0.
    """

    status: str
    basis: Optional[tuple] = None
    x: Optional[Vector] = None
    value: Optional[object] = None
    kept_rows: Optional[tuple] = None
    ray: Optional[Vector] = None
    farkas: Optional[tuple] = None


def basis_solution(lp: StandardLP, B: Sequence[int]) -> Vector:
    """Full-length basic solution for basis B (zeros off the basis)."""
    B = tuple(B)
    AB = submatrix_columns(lp.A, B)
    xB = solve_square(AB, lp.b)
    x = [ZERO] * lp.ncols
    for j, v in zip(B, xB):
        x[j] = v
    return tuple(x)


def is_feasible_basis(lp: StandardLP, B: Sequence[int]) -> bool:
    B = tuple(B)
    if len(B) != lp.nrows or len(set(B)) != len(B):
        return False
    if any(j < 0 or j >= lp.ncols for j in B):
        return False
    xB = try_solve_square(submatrix_columns(lp.A, B), lp.b)
    if xB is None:
        return False
    return all(v >= 0 for v in xB)


def reduced_costs(lp: StandardLP, B: Sequence[int]) -> Vector:
    """Extended reduced cost vector: c_j - y.A_j with y = A_B^-T c_B.

    Entries on the basis are exactly zero.
    """
    B = tuple(B)
    AB = submatrix_columns(lp.A, B)
    y = solve_square(transpose(AB), tuple(lp.c[j] for j in B))
    Bset = set(B)
    r = []
    for j in range(lp.ncols):
        if j in Bset:
            r.append(ZERO)
        else:
            r.append(lp.c[j] - dot(y, column(lp.A, j)))
    return tuple(r)


def maximal_optimal_face(lp: StandardLP, B: Sequence[int]) -> tuple:
    """Support of the maximal optimal face, from an optimal basis.

    Precondition: B is feasible and optimal.  The support is the zero
    set of the extended reduced cost vector; under the nondegeneracy the
    perturbed instances guarantee, this is exact.
    """
    r = reduced_costs(lp, B)
    assert all(v >= 0 for v in r), "maximal_optimal_face needs an optimal basis"
    return tuple(j for j, v in enumerate(r) if v == 0)


def simplex_phase2(lp: StandardLP, B: Sequence[int]):
    """Minimize from a feasible basis with Bland's rule.

    Returns ("optimal", basis, x, value) or ("unbounded", ray) where the
    ray r satisfies A r = 0, r >= 0, c.r < 0.
    """
    m, n = lp.nrows, lp.ncols
    B = sorted(B)
    assert len(B) == m, "phase-2 basis must have one column per row"
    pivots = 0
    while True:
        AB = submatrix_columns(lp.A, B)
        xB = solve_square(AB, lp.b)
        assert all(v >= 0 for v in xB), "phase-2 basis lost feasibility"
        y = solve_square(transpose(AB), tuple(lp.c[j] for j in B))
        Bset = set(B)
        entering = -1
        for j in range(n):
            if j not in Bset and lp.c[j] - dot(y, column(lp.A, j)) < 0:
                entering = j
                break
        if entering < 0:
            x = [ZERO] * n
            for j, v in zip(B, xB):
                x[j] = v
            x = tuple(x)
            return "optimal", tuple(B), x, dot(lp.c, x)
        dB = solve_square(AB, column(lp.A, entering))
        leave_pos = -1
        theta = None
        for i in range(m):
            if dB[i] > 0:
                ratio = xB[i] / dB[i]
                if (
                    theta is None
                    or ratio < theta
                    or (ratio == theta and B[i] < B[leave_pos])
                ):
                    theta = ratio
                    leave_pos = i
        if leave_pos < 0:
            ray = [ZERO] * n
            ray[entering] = ONE
            for i in range(m):
                ray[B[i]] = -dB[i]
            return "unbounded", tuple(ray)
        B[leave_pos] = entering
        B.sort()
        pivots += 1
        assert pivots < _PIVOT_GUARD, "simplex pivot guard tripped"


def _phase1(lp: StandardLP):
    """Feasibility via artificial variables.

    Returns (basis, x, artificial_rows, y_farkas).  On feasibility,
    basis covers all rows, may still contain artificial columns (index
    >= ncols) exactly for redundant rows, x is the original-column
    solution, and y_farkas is None.  On infeasibility, basis/x are None
    and y_farkas is the Farkas certificate in original row coordinates.
    """
    m, n = lp.nrows, lp.ncols
    flip = [b_i < 0 for b_i in lp.b]
    A_f = tuple(
        tuple(-a for a in row) if f else row for row, f in zip(lp.A, flip)
    )
    b_f = tuple(-v if f else v for v, f in zip(lp.b, flip))
    ident = []
    for i in range(m):
        ident.append(tuple(ONE if r == i else ZERO for r in range(m)))
    A_ext = tuple(
        row + tuple(col[i] for col in ident) for i, row in enumerate(A_f)
    )
    c_ext = tuple([ZERO] * n + [ONE] * m)
    ext = StandardLP(A_ext, b_f, c_ext)
    outcome = simplex_phase2(ext, tuple(range(n, n + m)))
    assert outcome[0] == "optimal", "phase-1 objective is bounded below by 0"
    _, B, x_ext, value = outcome
    if value > 0:
        AB = submatrix_columns(ext.A, B)
        y = solve_square(transpose(AB), tuple(ext.c[j] for j in B))
        y_orig = tuple(-v if f else v for v, f in zip(y, flip))
        return None, None, None, y_orig
    B = list(B)
    for a in [v for v in B if v >= n]:
        e = B.index(a)
        AB = submatrix_columns(ext.A, B)
        unit = tuple(ONE if i == e else ZERO for i in range(m))
        z = solve_square(transpose(AB), unit)
        for j in range(n):
            if j not in B and dot(z, column(ext.A, j)) != 0:
                B[e] = j
                break
    artificial_rows = tuple(sorted(a - n for a in B if a >= n))
    return tuple(sorted(B)), tuple(x_ext[:n]), artificial_rows, None


def feasible_point(A: Matrix, b: Vector) -> Optional[Vector]:
    """Some x >= 0 with Ax = b, or None.  Tolerates dependent rows."""
    if not A:
        return ()
    lp = StandardLP(tuple(A), tuple(b), tuple([ZERO] * len(A[0])))
    basis, x, _, _ = _phase1(lp)
    if basis is None:
        return None
    assert mat_vec(A, x) == tuple(b)
    return x


def find_feasible_basis(A: Matrix, b: Vector) -> tuple[tuple, Vector]:
    """Feasible basis over the original columns, with its solution.

    The basis size equals the number of independent rows; callers that
    require one column per row should assert the length.  Raises
    LpInfeasibleError when no nonnegative solution exists.
    """
    lp = StandardLP(tuple(A), tuple(b), tuple([ZERO] * len(A[0])))
    basis, x, artificial_rows, _ = _phase1(lp)
    if basis is None:
        raise LpInfeasibleError("no nonnegative solution")
    n = lp.ncols
    clean = tuple(j for j in basis if j < n)
    assert len(clean) + len(artificial_rows) == lp.nrows
    return clean, x


def ray_embrace(points: Sequence[Vector], b: Vector) -> Optional[Vector]:
    """Nonnegative combination of the points equal to b, or None.

    This is the package's one-line certificate primitive: a vector b is
    ray-embraced by a point set iff it lies in their conic hull.
    """
    if not points:
        return () if is_zero_vector(b) else None
    return feasible_point(mat_from_columns(points), b)


def simplex_solve(lp: StandardLP) -> LpResult:
    """Two-phase simplex with certificates.

    Dependent rows are detected in phase 1 and dropped (they are exact
    consequences of the kept rows once feasibility is established); the
    reported basis refers to the kept rows.
    """
    basis, x0, artificial_rows, farkas_y = _phase1(lp)
    if basis is None:
        fy = farkas_y
        assert all(dot(fy, column(lp.A, j)) <= 0 for j in range(lp.ncols))
        gap = dot(fy, lp.b)
        assert gap > 0
        return LpResult(status="infeasible", farkas=(fy, gap))
    kept = tuple(i for i in range(lp.nrows) if i not in set(artificial_rows))
    if artificial_rows:
        A_red = tuple(lp.A[i] for i in kept)
        b_red = tuple(lp.b[i] for i in kept)
        red = StandardLP(A_red, b_red, lp.c)
        inner = simplex_solve(red)
        assert inner.status != "infeasible"
        if inner.status == "unbounded":
            assert is_zero_vector(mat_vec(lp.A, inner.ray))
            return LpResult(status="unbounded", ray=inner.ray, kept_rows=kept)
        assert mat_vec(lp.A, inner.x) == lp.b, "dropped rows were not redundant"
        return LpResult(
            status="optimal",
            basis=inner.basis,
            x=inner.x,
            value=inner.value,
            kept_rows=kept,
        )
    outcome = simplex_phase2(lp, basis)
    if outcome[0] == "unbounded":
        ray = outcome[1]
        assert is_zero_vector(mat_vec(lp.A, ray))
        assert all(v >= 0 for v in ray) and dot(lp.c, ray) < 0
        return LpResult(status="unbounded", ray=ray, kept_rows=kept)
    _, B, x, value = outcome
    return LpResult(
        status="optimal", basis=B, x=x, value=value, kept_rows=kept
    )


def affine_feasible(
    n_vars: int,
    equalities: Sequence[tuple],
    inequalities: Sequence[tuple],
) -> Optional[Vector]:
    """Witness for {a.x = rhs} and {a.x >= rhs} systems, or None.

    Variables are free-signed; the reduction splits x = u - v and adds
    one surplus variable per inequality, then runs phase 1.
    """
    rows = []
    rhs = []
    n_ineq = len(inequalities)
    for coeffs, beta in equalities:
        assert len(coeffs) == n_vars
        rows.append(
            tuple(coeffs)
            + tuple(-a for a in coeffs)
            + tuple([ZERO] * n_ineq)
        )
        rhs.append(beta)
    for k, (coeffs, beta) in enumerate(inequalities):
        assert len(coeffs) == n_vars
        slack = [ZERO] * n_ineq
        slack[k] = -ONE
        rows.append(tuple(coeffs) + tuple(-a for a in coeffs) + tuple(slack))
        rhs.append(beta)
    if not rows:
        return tuple([ZERO] * n_vars)
    sol = feasible_point(tuple(rows), tuple(rhs))
    if sol is None:
        return None
    return tuple(sol[i] - sol[n_vars + i] for i in range(n_vars))
