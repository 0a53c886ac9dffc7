import pytest
from hypothesis import given, settings, strategies as st

from phigamma.characters import (
    Character,
    cyclotomic_character,
    finite_order_character,
    primitive_root,
    trivial_character,
    unramified_character,
)
from phigamma.errors import ParseError, ValidationError

P, N = 3, 4
PN = P ** N


def some_characters():
    return st.sampled_from(
        [
            trivial_character(P, N),
            cyclotomic_character(P, N),
            cyclotomic_character(P, N).power(-2),
            unramified_character(P, N, 5),
            finite_order_character(P, N, 1),
            finite_order_character(P, N, 2).mul(cyclotomic_character(P, N)),
        ]
    )


def units():
    return st.integers(-(10**6), 10**6).filter(lambda a: a % P != 0 and a != 0)


def test_cyclotomic_values():
    chi = cyclotomic_character(P, N)
    assert chi.unit_value(7) == 7
    assert chi.unit_value(-1) == PN - 1
    assert chi.frobenius_value() == 1


def test_finite_order_character_has_finite_order():
    eta = finite_order_character(P, N, 1)
    g = primitive_root(P, 1)
    v = eta.unit_value(g)
    assert pow(v, P - 1, PN) == 1
    assert pow(v, (P - 1) // 2, PN) != 1
    # constant on 1 + pZ_p
    assert eta.unit_value(g + P * 11) == v


def test_tame_character_squares():
    eta = finite_order_character(5, 3, 1, index=2)
    assert eta.mul(eta) == finite_order_character(5, 3, 1, index=4)


@settings(max_examples=40)
@given(some_characters(), some_characters(), units(), units())
def test_characters_are_multiplicative(d1, d2, a, b):
    assert d1.unit_value(a) * d1.unit_value(b) % PN == d1.unit_value(a * b)
    prod = d1.mul(d2)
    assert prod.unit_value(a) == d1.unit_value(a) * d2.unit_value(a) % PN
    assert prod.frobenius_value() == d1.frobenius_value() * d2.frobenius_value() % PN


@settings(max_examples=30)
@given(some_characters(), units())
def test_inverse_and_power(d, a):
    assert d.inv().unit_value(a) * d.unit_value(a) % PN == 1
    assert d.power(3).unit_value(a) == pow(d.unit_value(a), 3, PN)
    assert d.power(-2).unit_value(a) == pow(d.unit_value(a), -2, PN)


def test_unit_value_respects_representatives():
    d = finite_order_character(P, N, 2).mul(cyclotomic_character(P, N).power(2))
    m = P ** (N + 2)
    a = 123456787
    assert d.unit_value(a) == d.unit_value(a % m)


def test_rejects_non_units():
    with pytest.raises(ValidationError):
        cyclotomic_character(P, N).unit_value(6)
    with pytest.raises(ValidationError):
        unramified_character(P, N, 6)


def test_gamma_only_characters():
    d = finite_order_character(P, N, 1)
    assert d.value_at_p is None
    assert d.frobenius_value() == 1
    full = d.mul(unramified_character(P, N, 2))
    assert full.value_at_p == 2


def test_serialization_round_trip():
    d = finite_order_character(P, N, 1).mul(cyclotomic_character(P, N).power(-1))
    back = Character.from_json(P, N, d.to_json())
    assert back == d
    with pytest.raises(ParseError):
        Character.from_json(P, N, {"chi_power": 1})
    with pytest.raises(ValidationError):
        Character.from_json(P, N, {"value_at_p": 3, "chi_power": 0, "conductor_exp": 0, "gen_value": 1})
