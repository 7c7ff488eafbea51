from fractions import Fraction

from hypothesis import given, strategies as st

from nilsol.radicals import (
    RadicalSum,
    SignedSqrt,
    radical_mul,
    radical_sum_is_zero,
    sqrt_to_radical,
    squarefree_decompose,
)


def test_squarefree_decompose():
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(22) == (22, 1)
    assert squarefree_decompose(36) == (1, 6)
    assert squarefree_decompose(44) == (11, 2)
    assert squarefree_decompose(30) == (30, 1)
    assert squarefree_decompose(2 * 3 * 3 * 5 * 5 * 5) == (10, 15)


def test_sqrt_to_radical_examples():
    assert sqrt_to_radical(SignedSqrt(1, 22)).terms == {22: Fraction(1)}
    assert sqrt_to_radical(SignedSqrt(1, 36)).terms == {1: Fraction(6)}
    assert sqrt_to_radical(SignedSqrt(-1, Fraction(9, 2))).terms == {
        2: Fraction(-3, 2)
    }


def test_radical_mul_examples():
    assert radical_mul(SignedSqrt(1, 30), SignedSqrt(1, 30)).terms == {1: Fraction(30)}
    assert radical_mul(SignedSqrt(1, 22), SignedSqrt(-1, 2)).terms == {
        11: Fraction(-2)
    }
    assert radical_mul(SignedSqrt(1, 17), SignedSqrt.zero()).is_zero()


def test_zero_test_and_cancellation():
    assert radical_sum_is_zero(RadicalSum.zero())
    thirty = radical_mul(SignedSqrt(1, 30), SignedSqrt(1, 30))
    assert radical_sum_is_zero(thirty + RadicalSum({1: -30}))
    assert not radical_sum_is_zero(RadicalSum({2: 1, 3: -1}))


def test_signed_sqrt_normalisation_and_text():
    assert SignedSqrt(1, 0).sign == 0
    assert str(SignedSqrt(0, 0)) == "0"
    assert str(SignedSqrt(1, 22)) == "sqrt(22)"
    assert str(SignedSqrt(-1, 30)) == "-sqrt(30)"
    assert str(SignedSqrt(1, 36)) == "6"
    assert str(SignedSqrt(-1, Fraction(9, 4))) == "-3/2"
    assert str(SignedSqrt(1, Fraction(2, 17))) == "sqrt(2/17)"
    assert SignedSqrt.of_rational(Fraction(-5, 2)) == SignedSqrt(-1, Fraction(25, 4))


# radicands at desk scale: trial division must stay cheap even for
# triple products, so numerators and denominators are kept small
positive_rationals = st.builds(
    Fraction, st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=60)
)


@given(positive_rationals)
def test_sqrt_roundtrip_by_squaring(q):
    rad = sqrt_to_radical(SignedSqrt(1, q))
    ((s, c),) = rad.terms.items()
    assert c * c * s == q
    assert c > 0


@given(positive_rationals, positive_rationals)
def test_mul_commutes(a, b):
    x, y = SignedSqrt(1, a), SignedSqrt(-1, b)
    assert radical_mul(x, y) == radical_mul(y, x)


@given(positive_rationals, positive_rationals, positive_rationals)
def test_mul_associates_via_sums(a, b, c):
    ra = sqrt_to_radical(SignedSqrt(1, a))
    rb = sqrt_to_radical(SignedSqrt(-1, b))
    rc = sqrt_to_radical(SignedSqrt(1, c))
    assert (ra * rb) * rc == ra * (rb * rc)


@given(st.dictionaries(st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11]),
                       st.fractions(min_value=-50, max_value=50), max_size=5))
def test_x_minus_x_is_zero(terms):
    x = RadicalSum(terms)
    assert radical_sum_is_zero(x - x)


def test_radical_sum_rejects_non_squarefree_keys():
    import pytest

    with pytest.raises(ValueError):
        RadicalSum({4: Fraction(1)})
