from conftest import dim6_certificate, random_bracket_table
from nilsol.index_sets import IndexSet, Triple, theta
from nilsol.jacobi import (
    BracketTable,
    aggregated_system,
    evaluate_equation,
    jacobi_bruteforce,
    jacobi_check_via_system,
    jacobi_system,
)
from nilsol.radicals import SignedSqrt


def test_system_theta6(theta6_set):
    eqs = jacobi_system(theta6_set)
    assert len(eqs) == 1
    (eq,) = eqs
    assert eq.target == 6
    assert eq.generators == (1, 2, 3)
    pairs = {(tuple(t.first), tuple(t.second)): t.coefficient for t in eq.terms}
    # relative sign between the two products is -1: the reference
    # certificate cancels 6*5 against sqrt(30)*sqrt(30)
    assert pairs == {
        ((2, 3, 5), (1, 5, 6)): 1,
        ((1, 3, 4), (2, 4, 6)): -1,
    }


def test_system_theta7_target7():
    idx = IndexSet.from_triples(theta(7), 7)
    eqs = [eq for eq in jacobi_system(idx) if eq.target == 7]
    assert len(eqs) == 1
    (eq,) = eqs
    pairs = {(tuple(t.first), tuple(t.second)): t.coefficient for t in eq.terms}
    assert pairs == {
        ((1, 2, 3), (3, 4, 7)): 1,
        ((2, 4, 6), (1, 6, 7)): -1,
        ((1, 4, 5), (2, 5, 7)): 1,
    }


def test_system_empty_for_singleton():
    idx = IndexSet.from_triples([(1, 2, 3)], 6)
    assert jacobi_system(idx) == []


def test_system_targets_at_least_six(rng):
    for _ in range(100):
        n = rng.choice([6, 7, 8, 9])
        mask = rng.randrange(1 << len(theta(n)))
        idx = IndexSet.from_mask(mask, n)
        for eq in jacobi_system(idx):
            assert eq.target >= 6
            assert eq.target == sum(eq.generators)
            for term in eq.terms:
                assert term.first.k in (term.second.i, term.second.j)
                assert term.second.k == eq.target


def test_terms_have_root_inner_product_minus_one(rng):
    from nilsol.root_gram import root_vector

    for _ in range(100):
        n = rng.choice([7, 8, 9])
        mask = rng.randrange(1 << len(theta(n)))
        idx = IndexSet.from_mask(mask, n)
        for eq in jacobi_system(idx):
            for term in eq.terms:
                a = root_vector(term.first, n)
                b = root_vector(term.second, n)
                assert sum(x * y for x, y in zip(a, b)) == -1


def test_bruteforce_accepts_reference_certificate():
    assert jacobi_bruteforce(dim6_certificate())


def test_bruteforce_rejects_mutation():
    table = dim6_certificate()
    coeffs = dict(table.coefficients)
    coeffs[Triple(2, 4, 6)] = SignedSqrt(1, 36)  # 5 -> 6 breaks 30 - 30 = 0
    assert not jacobi_bruteforce(BracketTable(6, coeffs))


def test_bruteforce_single_bracket_tables():
    table = BracketTable(6, {(1, 2, 3): SignedSqrt(1, 7)})
    assert jacobi_bruteforce(table)


def test_check_via_system_examples():
    assert jacobi_check_via_system(dim6_certificate())
    assert jacobi_check_via_system(BracketTable(6, {}))


def test_equation_render(theta6_set):
    (eq,) = jacobi_system(theta6_set)
    assert eq.render() == "a(2,3,5)*a(1,5,6) - a(1,3,4)*a(2,4,6) = 0"


def test_system_equals_bruteforce_random(rng):
    # oracle equivalence on 1000 random ordered-type tables, n <= 9
    agree_true = 0
    for _ in range(1000):
        n = rng.choice([3, 4, 5, 6, 7, 8, 9])
        table = random_bracket_table(rng, n)
        expected = jacobi_bruteforce(table)
        assert jacobi_check_via_system(table) is expected
        agree_true += expected
    assert agree_true > 0  # some satisfiable tables were exercised


def test_system_equals_bruteforce_gauge_flips(rng):
    # basis sign flips of a valid table stay valid; random flips of single
    # constants inside the constraint give both verdicts
    for _ in range(60):
        signs = {}
        for k in range(1, 7):
            if rng.random() < 0.5:
                continue
            # flipping basis vector X_k flips every coefficient touching k
            for t in theta(6):
                if k in t:
                    signs[tuple(t)] = -signs.get(tuple(t), 1)
        table = dim6_certificate({Triple(*t): s for t, s in signs.items()})
        assert jacobi_bruteforce(table)
        assert jacobi_check_via_system(table)


def test_aggregated_system_subsumes_generators(rng):
    # the aggregated equation for target m carries exactly the union of
    # the generator terms for that m
    for _ in range(100):
        n = rng.choice([8, 9])
        mask = rng.randrange(1 << len(theta(n)))
        idx = IndexSet.from_mask(mask, n)
        gens = jacobi_system(idx)
        aggs = aggregated_system(idx)
        by_target = {}
        for eq in gens:
            by_target.setdefault(eq.target, set()).update(
                frozenset((t.first, t.second)) for t in eq.terms
            )
        assert {eq.target for eq in aggs} == set(by_target)
        for eq in aggs:
            assert {
                frozenset((t.first, t.second)) for t in eq.terms
            } == by_target[eq.target]


def test_aggregated_vanishes_on_valid_tables(rng):
    # every aggregated equation is a sum of true Jacobi constraints
    table = dim6_certificate()
    for eq in aggregated_system(table.support()):
        assert evaluate_equation(eq, table).is_zero()
