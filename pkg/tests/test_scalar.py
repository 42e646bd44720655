from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropmorph.errors import NonInvertibleZero, ParseError
from tropmorph.scalar import (INF, NEG_INF, ext, ext_add, ext_scale, format_ext, parse_ext, to_boolean,
                              trop_add, trop_mul, trop_pow)
from tropmorph.errors import IndeterminateSum

rationals = st.fractions(max_denominator=12).filter(lambda q: abs(q) < 1000)
trop_vals = st.one_of(st.just(NEG_INF), rationals)


@pytest.mark.parametrize("a,b,want", [
    (F(3), NEG_INF, F(3)),
    (F(1, 2), F(2, 3), F(2, 3)),
    (NEG_INF, NEG_INF, NEG_INF),
])
def test_trop_add(a, b, want):
    assert trop_add(a, b) == want


@pytest.mark.parametrize("a,b,want", [
    (F(3), F(4), F(7)),
    (F(5), NEG_INF, NEG_INF),
    (F(0), F(1, 3), F(1, 3)),
])
def test_trop_mul(a, b, want):
    assert trop_mul(a, b) == want


def test_trop_pow_examples():
    assert trop_pow(F(3), -1) == -3
    assert trop_pow(NEG_INF, 2) == NEG_INF
    r = trop_pow(F(5, 2), -2)
    assert trop_mul(r, trop_pow(F(5, 2), 2)) == 0
    assert r == -5


def test_bottom_has_no_inverse():
    with pytest.raises(NonInvertibleZero):
        trop_pow(NEG_INF, -1)
    assert trop_pow(NEG_INF, 0) == 0


@given(trop_vals, trop_vals, trop_vals)
def test_semifield_axioms(a, b, c):
    assert trop_add(trop_add(a, b), c) == trop_add(a, trop_add(b, c))
    assert trop_add(a, b) == trop_add(b, a)
    assert trop_mul(trop_mul(a, b), c) == trop_mul(a, trop_mul(b, c))
    assert trop_mul(a, b) == trop_mul(b, a)
    assert trop_mul(a, trop_add(b, c)) == trop_add(trop_mul(a, b), trop_mul(a, c))
    assert trop_add(a, NEG_INF) == a
    assert trop_mul(a, F(0)) == a
    assert trop_add(a, a) == a
    if a != NEG_INF:
        assert trop_mul(a, trop_pow(a, -1)) == 0


@given(trop_vals, trop_vals)
def test_boolean_map_is_a_homomorphism(a, b):
    assert to_boolean(trop_add(a, b)) == trop_add(to_boolean(a), to_boolean(b))
    assert to_boolean(trop_mul(a, b)) == trop_mul(to_boolean(a), to_boolean(b))


def test_boolean_map_is_not_injective():
    assert to_boolean(F(1)) == to_boolean(F(-7, 3)) == 0
    assert to_boolean(NEG_INF) == NEG_INF


@given(st.one_of(rationals, st.sampled_from([INF, NEG_INF])))
def test_text_round_trip(a):
    assert parse_ext(format_ext(a)) == a
    assert format_ext(parse_ext(format_ext(a))) == format_ext(a)


def test_text_forms():
    assert format_ext(F(6, 4)) == "3/2"
    assert format_ext(F(-2)) == "-2"
    assert parse_ext("-inf") == NEG_INF
    assert parse_ext(" 4/6 ") == F(2, 3)
    assert isinstance(parse_ext("4/6"), F)
    for bad in ("0.5", "1/0", "", "infinity", "1e3"):
        with pytest.raises(ParseError):
            parse_ext(bad)


def test_order_is_total():
    vals = [INF, F(1, 3), NEG_INF, F(-2), F(0)]
    assert sorted(vals) == [NEG_INF, F(-2), F(0), F(1, 3), INF]


def test_coercion_rejects_inexact_input():
    assert ext(3) == F(3)
    assert ext("inf") == INF
    with pytest.raises(TypeError):
        ext(0.5)
    with pytest.raises(TypeError):
        ext(True)


def test_extended_addition():
    assert ext_add(F(1), INF) == INF
    assert ext_add(NEG_INF, F(-1)) == NEG_INF
    with pytest.raises(IndeterminateSum):
        ext_add(INF, NEG_INF)
    assert ext_scale(0, INF) == 0
    assert ext_scale(-2, INF) == NEG_INF
