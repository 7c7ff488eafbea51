import random
from fractions import Fraction

import pytest

from nilsol.index_sets import IndexSet, theta
from nilsol.jacobi import BracketTable
from nilsol.radicals import SignedSqrt


def random_bracket_table(rng: random.Random, n: int, allow_empty=True) -> BracketTable:
    """A random ordered-type table: random support, mixed surd/rational values."""
    full = theta(n)
    while True:
        mask = rng.randrange(1 << len(full))
        if mask or allow_empty:
            break
    coeffs = {}
    for r, t in enumerate(full):
        if not mask >> r & 1:
            continue
        sign = rng.choice([1, -1])
        if rng.random() < 0.5:
            radicand = Fraction(rng.randint(1, 40))
        else:
            radicand = Fraction(rng.randint(1, 12)) ** 2  # rational value
        coeffs[t] = SignedSqrt(sign, radicand)
    return BracketTable(n, coeffs)


DIM6_TRIPLES = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (2, 3, 5), (2, 4, 6)]
DIM6_SQUARES = [22, 36, 22, 30, 30, 25]


def dim6_certificate(signs=None) -> BracketTable:
    """The unique 6-dimensional certificate, optionally with flipped signs."""
    signs = signs or {}
    coeffs = {}
    for t, sq in zip(DIM6_TRIPLES, DIM6_SQUARES):
        coeffs[t] = SignedSqrt(signs.get(t, 1), Fraction(sq))
    return BracketTable(6, coeffs)


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def theta6_set():
    return IndexSet.from_triples(theta(6), 6)
