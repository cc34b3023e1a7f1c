"""The cost-parameterized LP over the cube of color weights.

A P1/P2 instance yields the standard-form LP min c_mu.x, Ax = b, x >= 0
whose d^2 columns are the colored points.  The cost of column j with
color i is

    c_j(mu) = 1 + (1 - mu_i) d N^2 + eps^(j+1)        (0-based j)

where N = d! m^d bounds every basis determinant and eps = N^(-c_exp * d)
is small enough that the eps-powers only break ties.  The weight vector
mu ranges over the top faces of the cube (max coordinate 1).  Colors
with weight 0 are priced out of every optimal support; that exclusion,
and the strict positivity of basic solutions, are audited at runtime and
raise GeneralPositionError when violated.

Reduced costs of a fixed basis are affine in mu, which turns questions
about optimality regions into small exact linear systems; those feed the
simplex-chain encodings and the two-color search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import GeneralPositionError, PreconditionError
from .instance import CcpInstance, coordinate_bound, is_square_colorful
from .linalg import (
    Matrix,
    Vector,
    column,
    det,
    dot,
    mat_from_columns,
    norm1,
    norminf,
    solve_square,
    submatrix_columns,
    transpose,
    try_solve_square,
)
from .lp import StandardLP, affine_feasible, maximal_optimal_face, simplex_solve
from .rat import ONE, Rat, ZERO, is_integer, rat


@dataclass(frozen=True)
class DerivedConstants:
    """Instance-wide magnitudes for the cost perturbation."""

    dim: int
    m: int
    N: int
    c_exponent: int

    def __post_init__(self):
        assert self.c_exponent >= 3, "cost exponent must be at least 3"

    @property
    def n_columns(self) -> int:
        return self.dim * self.dim

    def eps_power(self, j: int) -> Rat:
        """eps^j as an exact rational, eps = N^(-c_exponent * dim)."""
        return rat(1, self.N ** (self.c_exponent * self.dim * j))

    @property
    def eps(self) -> Rat:
        return self.eps_power(1)


def derive_constants(inst: CcpInstance, c_exponent: int = 12) -> DerivedConstants:
    if not is_square_colorful(inst):
        raise PreconditionError("derived constants need d colors in Q^d")
    for color in inst.colors:
        if len(color) != inst.dim:
            raise PreconditionError("derived constants need d points per color")
    m = coordinate_bound(inst)
    N = math.factorial(inst.dim) * m ** inst.dim
    consts = DerivedConstants(
        dim=inst.dim, m=m, N=N, c_exponent=c_exponent
    )
    assert consts.eps <= rat(1, N ** 3)
    return consts


def color_of_column(d: int, j: int) -> int:
    assert 0 <= j < d * d
    return j // d


def color_block(d: int, i: int) -> range:
    assert 0 <= i < d
    return range(i * d, (i + 1) * d)


def ground_points(inst: CcpInstance) -> tuple:
    """All d^2 points in column order (color-major)."""
    out = []
    for color in inst.colors:
        out.extend(color)
    return tuple(out)


def instance_matrix(inst: CcpInstance) -> Matrix:
    return mat_from_columns(ground_points(inst))


def parameter_point(items) -> Vector:
    mu = tuple(rat(x) if isinstance(x, int) else x for x in items)
    for x in mu:
        assert 0 <= x <= 1, "parameter coordinates live in [0, 1]"
    return mu


def in_parameter_domain(mu: Vector) -> bool:
    return all(0 <= x <= 1 for x in mu) and norminf(mu) == 1


def proj_simplex(mu: Vector) -> Vector:
    """Divide by the l1 norm: the simplex representative of a ray."""
    s = norm1(mu)
    assert s > 0
    assert all(x >= 0 for x in mu)
    return tuple(x / s for x in mu)


def proj_cube_top(mu: Vector) -> Vector:
    """Divide by the max coordinate: the cube-top representative."""
    s = norminf(mu)
    assert s > 0
    assert all(x >= 0 for x in mu)
    return tuple(x / s for x in mu)


def cube_face_dim(d: int, I0: Sequence[int], I1: Sequence[int]) -> int:
    return d - len(I0) - len(I1)


def check_cube_face(d: int, I0: Sequence[int], I1: Sequence[int]) -> bool:
    s0, s1 = set(I0), set(I1)
    if s0 & s1 or not s1:
        return False
    return all(0 <= l < d for l in s0 | s1)


def label_of_support(d: int, S: Sequence[int]) -> int:
    """Color with the most columns in S; ties go to the smallest color."""
    assert S, "label of an empty support is undefined"
    counts = [0] * d
    for j in S:
        counts[color_of_column(d, j)] += 1
    best = 0
    for i in range(1, d):
        if counts[i] > counts[best]:
            best = i
    return best


def cost_vector(consts: DerivedConstants, mu: Vector) -> Vector:
    """The literal perturbed costs at mu (exact, unscaled)."""
    d = consts.dim
    assert len(mu) == d
    dN2 = d * consts.N * consts.N
    out = []
    for j in range(consts.n_columns):
        i = color_of_column(d, j)
        out.append(ONE + (ONE - mu[i]) * dN2 + consts.eps_power(j + 1))
    return tuple(out)


def scaled_cost_vector(consts: DerivedConstants, mu: Vector) -> Vector:
    """cost_vector times one positive integer: all entries integral.

    The scale is lcm(denominators of mu) * N^(c d^3); positive scaling
    changes no reduced-cost sign and no optimal face, but keeps the
    simplex pivoting on integers instead of gcd-heavy rationals.
    """
    d = consts.dim
    assert len(mu) == d
    l_mu = 1
    for x in mu:
        l_mu = math.lcm(l_mu, x.denominator)
    top = consts.N ** (consts.c_exponent * d * consts.n_columns)
    scale = l_mu * top
    dN2 = d * consts.N * consts.N
    out = []
    for j in range(consts.n_columns):
        i = color_of_column(d, j)
        entry = (
            rat(scale)
            + dN2 * (scale - scale * mu[i])
            + rat(
                l_mu
                * consts.N
                ** (consts.c_exponent * d * (consts.n_columns - j - 1))
            )
        )
        assert is_integer(entry)
        out.append(entry)
    return tuple(out)


def build_parameterized_lp(
    inst: CcpInstance, consts: DerivedConstants, mu: Vector
) -> StandardLP:
    return StandardLP(
        A=instance_matrix(inst),
        b=inst.b,
        c=scaled_cost_vector(consts, mu),
    )


def optimal_face_at(
    inst: CcpInstance, consts: DerivedConstants, mu: Vector
) -> tuple[tuple, tuple]:
    """Optimal basis and maximal optimal face support at parameter mu.

    Audits, raising GeneralPositionError on failure: the LP must be
    solvable with a strictly positive basic solution (P2), and colors
    with mu_i = 0 must be absent from the support (the pricing
    guarantee).
    """
    assert in_parameter_domain(mu), "mu must lie on the top faces of the cube"
    lp = build_parameterized_lp(inst, consts, mu)
    res = simplex_solve(lp)
    assert res.status == "optimal", "parameterized LP is feasible and bounded"
    if res.kept_rows is not None and len(res.kept_rows) != inst.dim:
        raise GeneralPositionError("instance matrix has dependent rows")
    for j in res.basis:
        xj = res.x[j]
        if xj <= 0:
            raise GeneralPositionError(
                "degenerate vertex: basis column %d at weight 0" % j
            )
    support = maximal_optimal_face(lp, res.basis)
    d = inst.dim
    for i in range(d):
        if mu[i] == 0:
            block = set(color_block(d, i))
            if block & set(support):
                raise GeneralPositionError(
                    "support uses color %d priced at weight 0" % (i + 1)
                )
    return res.basis, support


@dataclass(frozen=True)
class ReducedCostForm:
    """Reduced costs of basis B as integer affine forms in mu.

    r_j(mu) = K[j] + L[j] . mu, jointly scaled by one positive integer
    so all coefficients are integral.  Basis columns have the zero form.
    """

    B: tuple
    K: tuple
    L: tuple

    def evaluate(self, j: int, mu: Vector):
        return self.K[j] + dot(self.L[j], mu)


def reduced_cost_form(
    inst: CcpInstance, consts: DerivedConstants, B: Sequence[int]
) -> ReducedCostForm:
    d = consts.dim
    n = consts.n_columns
    B = tuple(sorted(B))
    assert len(B) == d
    A = instance_matrix(inst)
    AB = submatrix_columns(A, B)
    ABt = transpose(AB)
    detB = det(AB)
    if detB == 0:
        raise PreconditionError("reduced_cost_form needs a nonsingular basis")
    dN2 = d * consts.N * consts.N
    base = [
        ONE + rat(dN2) + consts.eps_power(j + 1) for j in range(n)
    ]
    y0 = solve_square(ABt, tuple(base[j] for j in B))
    y_side = []
    for i in range(d):
        v = tuple(
            rat(-dN2) if color_of_column(d, j) == i else ZERO for j in B
        )
        y_side.append(solve_square(ABt, v))
    scale = abs(detB) * consts.N ** (consts.c_exponent * d * n)
    Bset = set(B)
    K = []
    L = []
    for j in range(n):
        if j in Bset:
            K.append(ZERO)
            L.append(tuple([ZERO] * d))
            continue
        Aj = column(A, j)
        kj = (base[j] - dot(y0, Aj)) * scale
        lj = []
        for i in range(d):
            coeff = -dot(y_side[i], Aj)
            if color_of_column(d, j) == i:
                coeff = coeff - dN2
            lj.append(coeff * scale)
        assert is_integer(kj) and all(is_integer(x) for x in lj)
        K.append(kj)
        L.append(tuple(lj))
    return ReducedCostForm(B=B, K=tuple(K), L=tuple(L))


def region_constraints(
    form: ReducedCostForm,
    d: int,
    S: Sequence[int],
    I0: Sequence[int],
    I1: Sequence[int],
) -> tuple[list, list]:
    """The region of parameters where basis form.B stays optimal with
    support exactly covering S, intersected with the cube face (I0, I1).

    Returns (equalities, inequalities), each a list of (coeffs, rhs)
    meaning coeffs.mu = rhs or coeffs.mu >= rhs.
    """
    n = len(form.K)
    Sset = set(S)
    assert set(form.B) <= Sset
    equalities = []
    inequalities = []
    for j in sorted(Sset - set(form.B)):
        equalities.append((form.L[j], -form.K[j]))
    for j in range(n):
        if j not in Sset:
            inequalities.append((form.L[j], -form.K[j]))
    fixed = set(I0) | set(I1)
    for l in sorted(I0):
        e = tuple(ONE if t == l else ZERO for t in range(d))
        equalities.append((e, ZERO))
    for l in sorted(I1):
        e = tuple(ONE if t == l else ZERO for t in range(d))
        equalities.append((e, ONE))
    for l in range(d):
        if l not in fixed:
            e = tuple(ONE if t == l else ZERO for t in range(d))
            ne = tuple(-ONE if t == l else ZERO for t in range(d))
            inequalities.append((e, ZERO))
            inequalities.append((ne, -ONE))
    return equalities, inequalities


def parameter_region_feasible(
    form: ReducedCostForm,
    d: int,
    S: Sequence[int],
    I0: Sequence[int],
    I1: Sequence[int],
) -> Optional[Vector]:
    """A parameter point in the region, or None when it is empty.

    When the equalities alone pin down a unique candidate (the common
    case at chain bottoms), one square solve plus sign checks replaces
    the phase-1 LP.
    """
    equalities, inequalities = region_constraints(form, d, S, I0, I1)
    if len(equalities) == d:
        E = tuple(coeffs for coeffs, _ in equalities)
        rhs = tuple(beta for _, beta in equalities)
        mu = try_solve_square(E, rhs)
        if mu is None:
            return None
        for coeffs, beta in inequalities:
            if dot(coeffs, mu) < beta:
                return None
        return mu
    return affine_feasible(d, equalities, inequalities)
