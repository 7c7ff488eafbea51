from fractions import Fraction

from conftest import dim6_certificate
from nilsol.index_sets import IndexSet, decode, theta
from nilsol.linalg import gram_solve
from nilsol.root_gram import gram, root_matrix
from nilsol.soliton import (
    invertible_obstruction,
    is_ordered_type,
    positivity_prune,
    ricci_from_brackets,
    ricci_from_v,
    soliton_data,
    strict_positive_feasible,
)

F = Fraction
V6 = [22, 36, 22, 30, 30, 25]
RIC6 = (F(-55), F(-77, 2), F(-22), F(-11, 2), F(11), F(55, 2))


def test_ricci_from_v_zero_and_reference(theta6_set):
    y = root_matrix(theta6_set)
    assert ricci_from_v(y, [0] * 6) == (F(0),) * 6
    assert ricci_from_v(y, V6) == RIC6


def test_ricci_kernel_shift_invariance(theta6_set):
    y = root_matrix(theta6_set)
    k = (0, 1, 0, -1, -1, 1)
    shifted = [a + 7 * b for a, b in zip(V6, k)]
    assert ricci_from_v(y, shifted) == RIC6


def test_soliton_data_reference(theta6_set):
    data = soliton_data(theta6_set, V6)
    assert data.ricci == RIC6
    assert data.beta == F(-143, 2)
    assert data.derivation == tuple(F(33, 2) * i for i in range(1, 7))
    assert is_ordered_type(data.derivation)


def test_soliton_data_singleton():
    idx = IndexSet.from_triples([(1, 2, 3)], 6)
    data = soliton_data(idx, [F(1, 3)])
    assert data is not None  # one triple is trivially consistent


def test_soliton_data_inconsistent(theta6_set):
    bad = list(V6)
    bad[0] += 1  # U v is no longer a constant vector
    assert soliton_data(theta6_set, bad) is None


def test_is_ordered_type():
    assert is_ordered_type([F(33, 2) * i for i in range(1, 7)])
    assert not is_ordered_type([1, 2, 3, 4, 5, 7])
    assert not is_ordered_type([0] * 6)
    assert not is_ordered_type([-1, -2, -3])


def test_positivity_prune(theta6_set):
    u = gram(theta6_set)
    _, sol = gram_solve(u)
    assert positivity_prune(sol) is None  # fixed coords are 22/143 > 0
    # invertible systems have every coordinate fixed
    single = gram_solve([[3]])[1]
    assert positivity_prune(single) is None
    from nilsol.linalg import AffineSolutionSet

    forced = AffineSolutionSet((F(-1), F(2)), (), frozenset({0, 1}))
    assert positivity_prune(forced) is not None


def test_strict_positive_feasible(theta6_set):
    _, sol = gram_solve(gram(theta6_set))
    assert strict_positive_feasible(sol) is True
    from nilsol.linalg import AffineSolutionSet

    # v = (t, -t): never both positive
    infeasible = AffineSolutionSet(
        (F(0), F(0)), ((F(1), F(-1)),), frozenset()
    )
    assert strict_positive_feasible(infeasible) is False
    # undecided above kernel dimension 2
    big = AffineSolutionSet(
        (F(0),) * 4,
        ((F(1), 0, 0, 0), (0, F(1), 0, 0), (0, 0, F(1), 0)),
        frozenset(),
    )
    assert strict_positive_feasible(big) is None


def test_invertible_obstruction():
    # contains a -1 entry and is invertible
    idx = IndexSet.from_triples([(1, 2, 3), (3, 4, 7)], 9)
    u = gram(idx)
    assert u[0][1] == -1
    assert invertible_obstruction(idx, u) is not None
    # m > n-1 with invertible Gram matrix
    idx6 = IndexSet.from_triples(theta(6), 6)
    assert invertible_obstruction(idx6, gram(idx6)) is None  # not invertible
    single = IndexSet.from_triples([(1, 2, 3)], 6)
    assert invertible_obstruction(single, gram(single)) is None


def test_ricci_from_brackets_matches_root_route():
    table = dim6_certificate()
    assert ricci_from_brackets(table) == RIC6


def test_ricci_from_brackets_single_bracket():
    from nilsol.jacobi import BracketTable
    from nilsol.radicals import SignedSqrt

    table = BracketTable(3, {(1, 2, 3): SignedSqrt(1, 1)})
    assert ricci_from_brackets(table) == (F(-1, 2), F(-1, 2), F(1, 2))


def test_ricci_oracle_equivalence_random(rng):
    from conftest import random_bracket_table

    for _ in range(1000):
        n = rng.choice([3, 4, 5, 6, 7, 8, 9])
        table = random_bracket_table(rng, n)
        direct = ricci_from_brackets(table)
        if not table.coefficients:
            assert direct == (F(0),) * n
            continue
        idx = table.support()
        v = [table.coefficients[t].radicand for t in idx.triples]
        assert direct == ricci_from_v(root_matrix(idx), v)


def test_ricci_invariance_across_kernel_shifts_random(rng):
    count = 0
    while count < 1000:
        n = rng.choice([6, 7, 8, 9])
        mask = rng.randrange(1, 1 << len(theta(n)))
        idx = decode(mask, n)
        u = gram(idx)
        _, sol = gram_solve(u)
        if sol is None or not sol.kernel:
            continue
        y = root_matrix(idx)
        base = ricci_from_v(y, sol.v0)
        shift = list(sol.v0)
        for k in sol.kernel:
            c = F(rng.randint(-5, 5), rng.randint(1, 4))
            shift = [a + c * b for a, b in zip(shift, k)]
        assert ricci_from_v(y, shift) == base
        count += 1
