from fractions import Fraction

from nilsol.index_sets import decode, theta
from nilsol.linalg import (
    gram_solve,
    kernel_basis,
    kernel_equal,
    rank,
    rref,
    scale_primitive,
    solve_affine,
)
from nilsol.root_gram import gram, root_matrix

F = Fraction


def test_rref_identity_and_zero():
    ident = [[F(1), F(0)], [F(0), F(1)]]
    r, rk, piv = rref(ident)
    assert (r, rk, piv) == (ident, 2, [0, 1])
    zero = [[F(0)] * 3 for _ in range(2)]
    r, rk, piv = rref(zero)
    assert (r, rk, piv) == (zero, 0, [])


def test_rref_dim6_rank(theta6_set):
    _, rk, _ = rref(gram(theta6_set))
    assert rk == 5


def _naive_rref(mat):
    # classic textbook Gauss-Jordan over Fractions, written independently
    rows = [[F(x) for x in row] for row in mat]
    m, n = len(rows), len(rows[0])
    r = 0
    pivots = []
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, r, pivots


def test_rref_matches_naive_oracle(rng):
    for _ in range(400):
        m = rng.randint(1, 6)
        n = rng.randint(1, 7)
        mat = [
            [F(rng.randint(-4, 4), rng.choice([1, 1, 1, 2, 3])) for _ in range(n)]
            for _ in range(m)
        ]
        if m > 1 and rng.random() < 0.5:
            mat[-1] = [a + b for a, b in zip(mat[0], mat[m // 2])]
        assert rref(mat) == _naive_rref(mat)


def test_solve_affine_singleton():
    sol = solve_affine([[3]])
    assert sol.v0 == (F(1, 3),)
    assert sol.kernel == ()
    assert sol.fixed_coordinates == frozenset({0})


def test_solve_affine_dim6(theta6_set):
    u = gram(theta6_set)
    rank_u, sol = gram_solve(u)
    assert rank_u == 5
    assert sol.kernel == ((F(0), F(1), F(0), F(-1), F(-1), F(1)),)
    assert sol.fixed_coordinates == frozenset({0, 2})
    # U v0 = [1] exactly
    for a in range(6):
        assert sum(u[a][b] * sol.v0[b] for b in range(6)) == 1
    # the reference solution (22,36,22,30,30,25)/143 lies in the set:
    ref = [F(x, 143) for x in (22, 36, 22, 30, 30, 25)]
    t = ref[5] - sol.v0[5]
    assert all(ref[i] == sol.v0[i] + t * sol.kernel[0][i] for i in range(6))


def test_solve_affine_infeasible():
    assert solve_affine([[1, -1], [-1, 1]]) is None
    rank_u, sol = gram_solve([[1, -1], [-1, 1]])
    assert rank_u == 1 and sol is None


def test_solution_properties_random_masks(rng):
    for _ in range(300):
        n = rng.choice([6, 7, 8, 9])
        mask = rng.randrange(1, 1 << len(theta(n)))
        idx = decode(mask, n)
        u = gram(idx)
        rank_u, sol = gram_solve(u)
        assert rank_u == rank(u)
        if sol is None:
            continue
        m = len(u)
        for a in range(m):
            assert sum(u[a][b] * sol.v0[b] for b in range(m)) == 1
        for k in sol.kernel:
            for a in range(m):
                assert sum(u[a][b] * k[b] for b in range(m)) == 0
        assert len(sol.kernel) == m - rank_u
        for i in sol.fixed_coordinates:
            assert all(k[i] == 0 for k in sol.kernel)


def test_kernel_equal_exhaustive_dim8():
    for mask in range(1, 1 << 12):
        idx = decode(mask, 8)
        assert kernel_equal(root_matrix(idx), gram(idx))


def test_kernel_basis_matches_solution_kernel(theta6_set):
    u = gram(theta6_set)
    assert kernel_basis(u) == list(gram_solve(u)[1].kernel)


def test_scale_primitive():
    assert scale_primitive([F(22, 143), F(36, 143)]) == (11, 18)
    assert scale_primitive([F(2), F(4), F(6)]) == (1, 2, 3)
