import pytest
from hypothesis import given, settings, strategies as st

from phigamma.errors import ParseError, ValidationError
from phigamma.laurent import LaurentElement, Precision
from phigamma.powersum import PowerSum

PREC = Precision(3, 4, -10, 40)


def power_sums(prec=PREC, max_terms=5, span=200):
    return st.dictionaries(
        st.integers(-span, span), st.integers(1, prec.pn - 1), max_size=max_terms
    ).map(lambda d: PowerSum(prec, d))


@settings(max_examples=50)
@given(power_sums(), power_sums())
def test_expansion_is_a_ring_map(s, t):
    assert s.mul(t).to_laurent() == s.to_laurent().mul(t.to_laurent())
    assert s.add(t).to_laurent() == s.to_laurent().add(t.to_laurent())


@settings(max_examples=50)
@given(power_sums())
def test_operators_match_windowed_layer(s):
    x = s.to_laurent()
    assert s.frobenius().to_laurent() == x.frobenius()
    assert s.psi().to_laurent() == x.psi()
    assert s.sigma(5).to_laurent() == x.sigma(5)
    assert s.sigma(-1).to_laurent() == x.sigma(-1)
    assert s.derivative().to_laurent() == x.derivative()


@settings(max_examples=50)
@given(power_sums())
def test_psi_after_phi_is_identity(s):
    assert s.frobenius().psi() == s


def test_psi_keeps_divisible_exponents():
    s = PowerSum(PREC, {6: 2, 7: 5, -9: 1})
    assert s.psi().terms == {2: 2, -3: 1}
    assert PowerSum(PREC, {1: 1, 2: 4, -5: 3}).psi().terms == {}


def test_unit_support_detection():
    assert PowerSum(PREC, {1: 1, 5: 2, -7: 1}).has_unit_support()
    assert not PowerSum(PREC, {3: 1}).has_unit_support()


def test_polynomial_round_trip():
    f = LaurentElement(PREC, {0: 2, 3: 1, 5: 7})
    assert PowerSum.from_polynomial(f).to_laurent() == f
    with pytest.raises(ValidationError):
        PowerSum.from_polynomial(LaurentElement(PREC, {-1: 1}))


def test_big_exponents_reduce_on_the_window():
    a = 10**30 + 1
    m = PREC.p ** (PREC.N + 5)
    assert PowerSum.group_element(PREC, a) == PowerSum.group_element(PREC, a % m)


@settings(max_examples=40)
@given(power_sums(), st.sampled_from([2, 5, -1, 7]))
def test_sigma_is_multiplicative(s, b):
    t = PowerSum(PREC, {4: 1, -2: 3})
    assert s.mul(t).sigma(b) == s.sigma(b).mul(t.sigma(b))


def test_sigma_rejects_divisible_index():
    with pytest.raises(ValidationError):
        PowerSum.one(PREC).sigma(3)


def test_serialization_round_trip():
    s = PowerSum(PREC, {-7: 3, 0: 1, 123456: 80})
    data = s.to_json()
    assert data["basis"] == "oneplusx"
    assert PowerSum.from_json(PREC, data) == s
    with pytest.raises(ParseError):
        PowerSum.from_json(PREC, {"terms": [[0, 1]]})
    with pytest.raises(ParseError):
        PowerSum.from_json(PREC, {"basis": "oneplusx", "terms": [[0, "x"]]})
