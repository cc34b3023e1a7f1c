"""Dense exact linear algebra on rational vectors and matrices.

Vectors are tuples of rationals, matrices are row-major tuples of row
tuples.  Everything is exact; there is no floating point anywhere in the
package.  The matrices involved are tiny (at most d^2 columns for ambient
dimension d), so the implementations favor clarity over asymptotics,
except for the determinant which uses fraction-free Bareiss elimination
because orientation determinants carry very wide entries.
"""

from __future__ import annotations

from math import gcd
from typing import Optional, Sequence

from .errors import SingularMatrixError
from .rat import ONE, ZERO, Rat, denom, numer, rat

Vector = tuple
Matrix = tuple


def vec(items) -> Vector:
    out = []
    for x in items:
        if isinstance(x, float):
            raise TypeError("floats are banned from exact code")
        out.append(rat(x))
    return tuple(out)


def vadd(u: Vector, v: Vector) -> Vector:
    assert len(u) == len(v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    assert len(u) == len(v)
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def dot(u: Vector, v: Vector):
    assert len(u) == len(v)
    total = ZERO
    for a, b in zip(u, v):
        total = total + a * b
    return total


def norm1(u: Vector):
    total = ZERO
    for a in u:
        total = total + (a if a >= 0 else -a)
    return total


def norminf(u: Vector):
    best = ZERO
    for a in u:
        m = a if a >= 0 else -a
        if m > best:
            best = m
    return best


def is_zero_vector(u: Vector) -> bool:
    return all(a == 0 for a in u)


def mat(rows) -> Matrix:
    out = tuple(vec(row) for row in rows)
    if out:
        width = len(out[0])
        assert all(len(row) == width for row in out), "ragged matrix"
    return out


def identity(n: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def transpose(A: Matrix) -> Matrix:
    if not A:
        return ()
    return tuple(zip(*A))


def mat_vec(A: Matrix, x: Vector) -> Vector:
    return tuple(dot(row, x) for row in A)


def mat_from_columns(cols: Sequence[Vector]) -> Matrix:
    return transpose(tuple(cols))


def column(A: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in A)


def submatrix_columns(A: Matrix, cols: Sequence[int]) -> Matrix:
    return tuple(tuple(row[j] for j in cols) for row in A)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def lcm_denominators(u: Vector) -> int:
    l = 1
    for x in u:
        l = _lcm(l, denom(x))
    return l


def scale_to_integers(u: Vector) -> tuple[Vector, int]:
    """Smallest positive integer multiple with all-integer entries.

    Returns (scaled vector, multiplier).
    """
    l = lcm_denominators(u)
    return tuple(x * l for x in u), l


def det(A: Matrix):
    """Exact determinant via fraction-free Bareiss elimination.

    Rows are first cleared to integers (the determinant scales linearly
    per row), then the integer Bareiss recurrence runs with exact
    divisions.  Row swaps flip the sign.
    """
    n = len(A)
    for row in A:
        assert len(row) == n, "determinant needs a square matrix"
    if n == 0:
        return ONE
    scale = 1
    M = []
    for row in A:
        l = lcm_denominators(row)
        scale *= l
        M.append([numer(x * l) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = M[k][k]
        for i in range(k + 1, n):
            row_i = M[i]
            row_k = M[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return rat(sign * M[n - 1][n - 1], scale)


def _echelon(rows: list[list], width: int) -> tuple[list[list], list[int]]:
    """In-place row echelon form; returns (rows, pivot column indices)."""
    pivots: list[int] = []
    r = 0
    for col in range(width):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(A: Matrix) -> int:
    if not A:
        return 0
    rows = [list(row) for row in A]
    _, pivots = _echelon(rows, len(A[0]))
    return len(pivots)


def solve_square(A: Matrix, b: Vector) -> Vector:
    """Solve Ax = b for square nonsingular A; raises SingularMatrixError."""
    x = try_solve_square(A, b)
    if x is None:
        raise SingularMatrixError("singular %dx%d system" % (len(A), len(A)))
    return x


def try_solve_square(A: Matrix, b: Vector) -> Optional[Vector]:
    n = len(A)
    assert len(b) == n
    for row in A:
        assert len(row) == n
    rows = [list(row) + [rhs] for row, rhs in zip(A, b)]
    rows, pivots = _echelon(rows, n)
    if len(pivots) < n:
        return None
    x = [ZERO] * n
    for r, col in enumerate(pivots):
        x[col] = rows[r][n]
    return tuple(x)


def nullspace(A: Matrix, width: Optional[int] = None) -> list[Vector]:
    """Basis of the right kernel of A (possibly empty)."""
    if width is None:
        assert A, "nullspace of an empty matrix needs an explicit width"
        width = len(A[0])
    rows = [list(row) for row in A]
    rows, pivots = _echelon(rows, width)
    pivot_set = set(pivots)
    free_cols = [j for j in range(width) if j not in pivot_set]
    basis = []
    for f in free_cols:
        v = [ZERO] * width
        v[f] = ONE
        for r, col in enumerate(pivots):
            v[col] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def in_linear_span(vectors: Sequence[Vector], target: Vector) -> Optional[Vector]:
    """Coefficients expressing target over the given vectors, or None.

    Free coefficients are set to zero, so the answer is deterministic.
    """
    k = len(vectors)
    d = len(target)
    if k == 0:
        return () if is_zero_vector(target) else None
    for v in vectors:
        assert len(v) == d
    rows = [
        [vectors[j][i] for j in range(k)] + [target[i]] for i in range(d)
    ]
    rows, pivots = _echelon(rows, k + 1)
    if k in pivots:
        return None
    coeffs = [ZERO] * k
    for r, col in enumerate(pivots):
        coeffs[col] = rows[r][k]
    return tuple(coeffs)


def gram_matrix(vectors: Sequence[Vector]) -> Matrix:
    return tuple(
        tuple(dot(u, v) for v in vectors) for u in vectors
    )
