"""Root vectors, the root matrix and its Gram matrix.

Each admissible triple (i, j, k) carries the integer root vector
e_i + e_j - e_k.  Stacking the root vectors of an index set in
dictionary order gives the m x n root matrix Y; the Gram matrix is
U = Y Y^T.  For ordered-type index sets U has all diagonal entries 3
and never contains a 2 off the diagonal.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import linalg
from .index_sets import IndexSet, Triple


def root_vector(t: Triple, n: int) -> tuple[int, ...]:
    """The vector e_i + e_j - e_k in Z^n for the triple t."""
    i, j, k = t
    if not (1 <= i < j < k <= n):
        raise ValueError("triple %s is not valid for n=%d" % (t, n))
    v = [0] * n
    v[i - 1] += 1
    v[j - 1] += 1
    v[k - 1] -= 1
    return tuple(v)


def root_matrix(index_set: IndexSet) -> list[tuple[int, ...]]:
    """Rows of the root matrix Y, in dictionary order of the triples."""
    return [root_vector(t, index_set.n) for t in index_set.triples]


def gram(index_set: IndexSet) -> list[list[int]]:
    """The Gram matrix U = Y Y^T as an exact integer matrix."""
    if not index_set.triples:
        raise ValueError("empty index set")
    rows = root_matrix(index_set)
    m = len(rows)
    u = [[0] * m for _ in range(m)]
    for a in range(m):
        ra = rows[a]
        for b in range(a, m):
            rb = rows[b]
            dot = sum(x * y for x, y in zip(ra, rb))
            u[a][b] = dot
            u[b][a] = dot
    return u


def nullity(u: list[list[int]]) -> int:
    """m - rank(U), computed over exact rationals."""
    return len(u) - linalg.rank(u)


def matrix_to_json(mat) -> str:
    """Row-major JSON encoding with entries as exact "p/q" strings."""
    return json.dumps([[str(Fraction(x)) for x in row] for row in mat])


def matrix_from_json(text: str) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in json.loads(text)]
