"""Ricci eigenvalues, the soliton constant, and the linear pruning rules.

For an ordered-type table the Ricci endomorphism is diagonal in the
eigenvector basis and its eigenvalues are -1/2 * Y^T v where v is the
vector of squared structure constants.  A metric is a nilsoliton with
constant beta exactly when y . Ric = beta for every root vector y; the
derivation is then D = Ric - beta * Id and must be a positive multiple
of (1, 2, ..., n) for the ordered type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .index_sets import IndexSet
from .jacobi import BracketTable
from .linalg import AffineSolutionSet, rank


@dataclass(frozen=True)
class RicciData:
    """Ricci eigenvalues, soliton constant and derivation eigenvalues."""

    ricci: tuple[Fraction, ...]
    beta: Fraction
    derivation: tuple[Fraction, ...]


def ricci_from_v(y_rows, v) -> tuple[Fraction, ...]:
    """Exact -1/2 * Y^T v; v holds the squared structure constants."""
    if len(y_rows) != len(v):
        raise ValueError("v must have one entry per root vector")
    n = len(y_rows[0]) if y_rows else 0
    acc = [Fraction(0)] * n
    for row, vr in zip(y_rows, v):
        vr = Fraction(vr)
        if not vr:
            continue
        for c, y in enumerate(row):
            if y:
                acc[c] += vr * y
    half = Fraction(1, 2)
    return tuple(-half * s for s in acc)


def soliton_data(index_set: IndexSet, v) -> RicciData | None:
    """Ricci data for squared constants v, or None if no single constant
    beta satisfies y . Ric = beta on every triple."""
    if not index_set.triples:
        raise ValueError("empty index set")
    n = index_set.n
    acc = [Fraction(0)] * n
    for t, vr in zip(index_set.triples, v):
        vr = Fraction(vr)
        acc[t.i - 1] += vr
        acc[t.j - 1] += vr
        acc[t.k - 1] -= vr
    half = Fraction(1, 2)
    ric = tuple(-half * s for s in acc)
    beta = None
    for t in index_set.triples:
        b = ric[t.i - 1] + ric[t.j - 1] - ric[t.k - 1]
        if beta is None:
            beta = b
        elif b != beta:
            return None
    derivation = tuple(r - beta for r in ric)
    return RicciData(ricci=ric, beta=beta, derivation=derivation)


def is_ordered_type(derivation) -> bool:
    """True iff the eigenvalues are c * (1, 2, ..., n) for a rational c > 0."""
    d = [Fraction(x) for x in derivation]
    if not d:
        return False
    c = d[0]
    if c <= 0:
        return False
    return all(d[i] == c * (i + 1) for i in range(len(d)))


def positivity_prune(solution: AffineSolutionSet) -> str | None:
    """Prune reason if a fixed coordinate of the solution set is <= 0.

    On a fixed coordinate every solution of U v = [1] equals v0 there,
    and a squared structure constant cannot be nonpositive.  Returns
    None to keep, or a human-readable reason to prune.
    """
    for i in sorted(solution.fixed_coordinates):
        if solution.v0[i] <= 0:
            return "fixed coordinate %d equals %s <= 0 on every solution" % (
                i + 1,
                solution.v0[i],
            )
    return None


def strict_positive_feasible(solution: AffineSolutionSet) -> bool | None:
    """Whether the solution set meets the open positive orthant.

    Decided exactly by Fourier-Motzkin elimination for kernel dimension
    <= 2; returns None (undecided) for higher dimensions.
    """
    d = solution.dimension
    if d > 2:
        return None
    ineqs = []  # c0 + sum_r c_r t_r > 0, one per coordinate
    for i in range(len(solution.v0)):
        ineqs.append(
            (solution.v0[i],) + tuple(k[i] for k in solution.kernel)
        )
    return _fm_feasible(ineqs, d) is not None


def positive_point(solution: AffineSolutionSet):
    """A rational v > 0 in the solution set, or None.

    Only attempted for kernel dimension <= 2 (exact elimination).
    """
    d = solution.dimension
    if d > 2:
        return None
    ineqs = [
        (solution.v0[i],) + tuple(k[i] for k in solution.kernel)
        for i in range(len(solution.v0))
    ]
    point = _fm_feasible(ineqs, d)
    if point is None:
        return None
    v = list(solution.v0)
    for r, t in enumerate(point):
        for i in range(len(v)):
            v[i] += t * solution.kernel[r][i]
    return tuple(v)


def _fm_feasible(ineqs, d):
    """Find a rational point of a system of strict inequalities, or None.

    ineqs are tuples (c0, c1, ..., cd) meaning c0 + sum c_r t_r > 0.
    Eliminates the last variable repeatedly (Fourier-Motzkin), then
    back-substitutes midpoints.  d <= 2 in practice.
    """
    if d == 0:
        return () if all(c[0] > 0 for c in ineqs) else None
    lower, upper, rest = [], [], []
    for c in ineqs:
        coef = c[d]
        body = c[:d]
        if coef == 0:
            rest.append(body)
        elif coef > 0:
            # t_d > -(body)/coef
            lower.append(tuple(-x / coef for x in body))
        else:
            upper.append(tuple(-x / coef for x in body))
    projected = list(rest)
    for lo in lower:
        for up in upper:
            # need lo(t) < up(t), i.e. up - lo > 0
            projected.append(tuple(u - l for u, l in zip(up, lo)))
    inner = _fm_feasible(projected, d - 1)
    if inner is None:
        return None
    point = inner

    def value(stub):
        return stub[0] + sum(stub[r + 1] * point[r] for r in range(d - 1))

    los = [value(lo) for lo in lower]
    ups = [value(up) for up in upper]
    if not los and not ups:
        t = Fraction(0)
    elif not ups:
        t = max(los) + 1
    elif not los:
        t = min(ups) - 1
    else:
        lo, up = max(los), min(ups)
        if lo >= up:
            return None
        t = (lo + up) / 2
    return point + (t,)


def invertible_obstruction(
    index_set: IndexSet, u, invertible: bool | None = None
) -> str | None:
    """Prune reason for invertible Gram matrices, else None.

    An index set with invertible U can carry an ordered-type soliton
    only if |Lambda| <= n-1 and U contains no -1 entry.
    """
    m = len(u)
    if invertible is None:
        invertible = rank(u) == m
    if not invertible:
        return None
    if m > index_set.n - 1:
        return "invertible Gram matrix with %d > n-1 = %d triples" % (
            m,
            index_set.n - 1,
        )
    for a in range(m):
        for b in range(m):
            if a != b and u[a][b] == -1:
                return "invertible Gram matrix contains a -1 entry at (%d,%d)" % (
                    a + 1,
                    b + 1,
                )
    return None


def ricci_from_brackets(table: BracketTable) -> tuple[Fraction, ...]:
    """Ricci eigenvalues straight from the bilinear curvature formula.

    ric(X_a, X_a) = -1/2 sum_i |[X_a, X_i]|^2 + 1/2 sum_{i<j} <[X_i,X_j], X_a>^2.
    Cross terms vanish for ordered-type tables, so the eigenvalues are
    exact rationals.  Independent of the root-matrix route.
    """
    n = table.n
    out = []
    for a in range(1, n + 1):
        s_out = Fraction(0)
        for i in range(1, n + 1):
            br = table.bracket(a, i)
            if br is not None:
                s_out += br[1].radicand
        s_in = Fraction(0)
        for t, c in table.coefficients.items():
            if t.k == a:
                s_in += c.radicand
        out.append(Fraction(-1, 2) * s_out + Fraction(1, 2) * s_in)
    return tuple(out)
