"""Exact rational linear algebra: RREF, rank, kernels, and U v = [1].

The forward pass is fraction-free (Bareiss): rows are first scaled to
integers, elimination keeps every intermediate entry an exact minor of
the input, and divisions are exact.  Normalisation to reduced row
echelon form happens only at the end, over Fraction.  This keeps
intermediate growth bounded for the matrix sizes that occur here
(m <= 16) and avoids any floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Matrix = list[list[Fraction]]


def _integer_rows(mat) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (row space unchanged)."""
    out = []
    for row in mat:
        if all(type(x) is int for x in row):
            out.append(list(row))
            continue
        fr = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * scale) for x in fr])
    return out


def _echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.  Returns (rows, pivot columns).

    Bareiss two-step elimination: every entry stays an exact integer
    minor of the input, and the division by the previous pivot is exact.
    """
    m = len(rows)
    if m == 0:
        return [], []
    ncols = len(rows[0])
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    prev = 1
    rk = 0
    for col in range(ncols):
        pr = None
        for i in range(rk, m):
            if rows[i][col]:
                pr = i
                break
        if pr is None:
            continue
        if pr != rk:
            rows[rk], rows[pr] = rows[pr], rows[rk]
        piv = rows[rk][col]
        top = rows[rk]
        for i in range(rk + 1, m):
            ri = rows[i]
            c = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = (piv * ri[j] - c * top[j]) // prev
            ri[col] = 0
        prev = piv
        pivots.append(col)
        rk += 1
        if rk == m:
            break
    return rows, pivots


def _jordan(rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free Gauss-Jordan elimination.

    Returns (matrix, pivot columns, d) where d is the value every pivot
    entry ends up equal to; pivot rows divided by d are the reduced row
    echelon form.  All intermediate entries are exact integer minors
    (one-step Bareiss applied above and below the pivot), so the
    division by the previous pivot is exact.
    """
    m = len(rows)
    if m == 0:
        return [], [], 1
    ncols = len(rows[0])
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    prev = 1
    rk = 0
    for col in range(ncols):
        pr = None
        for i in range(rk, m):
            if rows[i][col]:
                pr = i
                break
        if pr is None:
            continue
        if pr != rk:
            rows[rk], rows[pr] = rows[pr], rows[rk]
        piv = rows[rk][col]
        top = rows[rk]
        for i in range(m):
            if i == rk:
                continue
            ri = rows[i]
            c = ri[col]
            for j in range(ncols):
                if j != col:
                    ri[j] = (piv * ri[j] - c * top[j]) // prev
            ri[col] = 0
        prev = piv
        pivots.append(col)
        rk += 1
        if rk == m:
            break
    return rows, pivots, prev


def rank(mat) -> int:
    """Exact rank of a rational matrix."""
    if not mat:
        return 0
    _, pivots = _echelon(_integer_rows(mat))
    return len(pivots)


def rref(mat) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form over Fraction.

    Returns (R, rank, pivot_columns) with R the same shape as the input.
    """
    if not mat:
        return [], 0, []
    ncols = len(mat[0])
    ech, pivots = _echelon(_integer_rows(mat))
    rk = len(pivots)
    reduced: Matrix = [[Fraction(x) for x in ech[r]] for r in range(rk)]
    for r in range(rk - 1, -1, -1):
        pc = pivots[r]
        pv = reduced[r][pc]
        reduced[r] = [x / pv for x in reduced[r]]
        row_r = reduced[r]
        for r2 in range(r):
            f = reduced[r2][pc]
            if f:
                reduced[r2] = [a - f * b for a, b in zip(reduced[r2], row_r)]
    zero = [Fraction(0)] * ncols
    return reduced + [zero[:] for _ in range(len(mat) - rk)], rk, pivots


@dataclass(frozen=True)
class AffineSolutionSet:
    """General solution of U v = [1]: particular vector plus kernel basis.

    v0 solves U v0 = [1] with every free coordinate set to zero;
    kernel is the standard free-variable basis of Ker(U); and
    fixed_coordinates are the 0-based positions where every kernel
    basis vector vanishes, i.e. where the whole solution set takes the
    value v0[i].
    """

    v0: tuple[Fraction, ...]
    kernel: tuple[tuple[Fraction, ...], ...]
    fixed_coordinates: frozenset[int]

    @property
    def dimension(self) -> int:
        return len(self.kernel)


def gram_solve(u) -> tuple[int, AffineSolutionSet | None]:
    """One elimination pass giving (rank of U, general solution of U v = [1]).

    The solution part is None when [1] is outside the column space.
    Only the columns actually needed (the right-hand side and one per
    free variable) are back-substituted, which keeps the rational work
    proportional to the nullity.
    """
    m = len(u)
    if m == 0:
        raise ValueError("empty system")
    aug = [list(row) + [1] for row in u]
    red, pivots, denom = _jordan(_integer_rows(aug))
    rank_u = sum(1 for p in pivots if p < m)
    if m in pivots:
        return rank_u, None
    rk = len(pivots)
    v0 = [Fraction(0)] * m
    for r in range(rk):
        v0[pivots[r]] = Fraction(red[r][m], denom)
    free = [c for c in range(m) if c not in pivots]
    kernel = []
    fixed_rows = [True] * rk
    for f in free:
        vec = [Fraction(0)] * m
        vec[f] = Fraction(1)
        for r in range(rk):
            entry = red[r][f]
            if entry:
                vec[pivots[r]] = Fraction(-entry, denom)
                fixed_rows[r] = False
        kernel.append(tuple(vec))
    fixed = frozenset(pivots[r] for r in range(rk) if fixed_rows[r])
    return rank_u, AffineSolutionSet(tuple(v0), tuple(kernel), fixed)


def solve_affine(u) -> AffineSolutionSet | None:
    """Solve U v = [1] exactly; None when the system is inconsistent."""
    return gram_solve(u)[1]


def kernel_basis(mat) -> list[tuple[Fraction, ...]]:
    """Standard free-variable basis of the right kernel."""
    if not mat:
        return []
    ncols = len(mat[0])
    reduced, rk, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][f]
        basis.append(tuple(vec))
    return basis


def kernel_equal(y_rows, u) -> bool:
    """Ker(Y^T) == Ker(U) for U = Y Y^T (a structural identity; checked).

    Verified by rank equality plus the inclusion Ker(U) <= Ker(Y^T):
    every kernel basis vector w of U must satisfy sum_r w_r * y_r = 0.
    """
    if rank(y_rows) != rank(u):
        return False
    n = len(y_rows[0]) if y_rows else 0
    for w in kernel_basis(u):
        for c in range(n):
            if sum(w[r] * y_rows[r][c] for r in range(len(y_rows))) != 0:
                return False
    return True


def scale_primitive(vec) -> tuple[int, ...]:
    """Smallest positive integer vector proportional to a rational one."""
    fr = [Fraction(x) for x in vec]
    mult = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * mult) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)
