from fractions import Fraction

import pytest

from conftest import dim6_certificate, random_bracket_table
from nilsol.index_sets import Triple
from nilsol.jacobi import BracketTable
from nilsol.notation import (
    NotationError,
    parse_coefficient,
    parse_vector_notation,
    render_vector_notation,
)
from nilsol.radicals import SignedSqrt


def test_render_reference_certificate():
    assert (
        render_vector_notation(dim6_certificate())
        == "(0,0,sqrt(22).12,6.13,sqrt(22).14+sqrt(30).23,sqrt(30).15+5.24)"
    )


def test_render_abelian_and_single():
    assert render_vector_notation(BracketTable(3, {})) == "(0,0,0)"
    table = BracketTable(3, {(1, 2, 3): SignedSqrt(1, 1)})
    assert render_vector_notation(table) == "(0,0,1.12)"


def test_parse_coefficient_spellings():
    assert parse_coefficient("sqrt(22)") == SignedSqrt(1, 22)
    assert parse_coefficient("√22") == SignedSqrt(1, 22)
    assert parse_coefficient("-sqrt(70)") == SignedSqrt(-1, 70)
    assert parse_coefficient("−45") == SignedSqrt(-1, 45 * 45)
    assert parse_coefficient("sqrt(274/2223)") == SignedSqrt(1, Fraction(274, 2223))
    assert parse_coefficient("6") == SignedSqrt(1, 36)
    assert parse_coefficient("3/2") == SignedSqrt(1, Fraction(9, 4))
    assert parse_coefficient("0") == SignedSqrt.zero()


def test_parse_middle_dot_and_radical_sign():
    table = parse_vector_notation("(0,0,√22·12,6.13,√22.14+√30.23,√30.15+5.24)")
    assert table == dim6_certificate()


def test_parse_negative_summand():
    table = parse_vector_notation("(0,0,0,0,0,0,1.25-sqrt(70).34)", strict=True)
    assert table.coefficient(Triple(3, 4, 7)) == SignedSqrt(-1, 70)


def test_roundtrip_random_tables(rng):
    for _ in range(300):
        n = rng.choice([3, 4, 5, 6, 7, 8, 9])
        table = random_bracket_table(rng, n)
        assert parse_vector_notation(render_vector_notation(table)) == table


def test_strict_mode_rejects_misplaced_summand():
    with pytest.raises(NotationError):
        parse_vector_notation("(0,0,0,1.12)", strict=True)  # 1.12 targets slot 3


def test_lenient_mode_derives_target():
    table = parse_vector_notation("(0,0,0,1.12)", strict=False)
    assert table.coefficient(Triple(1, 2, 3)) == SignedSqrt(1, 1)
    # a transcribed row with a split last slot still parses with n forced
    row = "(0,0,0,0, 1.23, 1.24, 1.25 +1.34, 1.17+ 1.26+ 1.35, 1.18, 1.27 +1.36 +1.45)"
    table = parse_vector_notation(row, strict=False, n=9)
    assert table.n == 9
    assert len(table.coefficients) == 11


def test_parse_errors_carry_position():
    with pytest.raises(NotationError):
        parse_vector_notation("")
    with pytest.raises(NotationError):
        parse_vector_notation("(0,0,wat.12)")
    with pytest.raises(NotationError):
        parse_vector_notation("0,0,1.12")  # no parentheses
    with pytest.raises(NotationError):
        parse_vector_notation("(0,0,1.12,0,1.12)", strict=False)  # duplicate

    err = None
    try:
        parse_vector_notation("(0,0,1.99)")
    except NotationError as exc:
        err = exc
    assert err is not None and err.line == 1
