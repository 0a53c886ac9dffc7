import pytest
from hypothesis import given, settings, strategies as st

from phigamma.characters import (
    cyclotomic_character,
    finite_order_character,
    trivial_character,
    unramified_character,
)
from phigamma.errors import LimitNotStabilized, NotPsiZero, ValidationError
from phigamma.laurent import LaurentElement, Precision
from phigamma.modules import ModuleElement, build_triangular, make_rank_one
from phigamma.operators import (
    convolution,
    m_delta,
    multiplication_bilinear,
    w_delta,
    w_star,
    wedge_pair,
    zeta_substitute,
)
from phigamma.powersum import PowerSum

P, N = 3, 4
PREC = Precision(P, N, -10, 40)
PN = P ** N
TRIV = make_rank_one(PREC, trivial_character(P, N))
DELTA = finite_order_character(P, N, 1).mul(cyclotomic_character(P, N)).mul(
    unramified_character(P, N, 2)
)


def group(e, c=1):
    return PowerSum.group_element(PREC, e, c)


def triv_elt(terms):
    return ModuleElement(TRIV, (PowerSum(PREC, terms),))


def psi_zero_terms():
    # finite combinations supported on units of Z_p
    expo = st.integers(-20, 20).filter(lambda e: e % P != 0)
    coeff = st.integers(1, PN - 1)
    return st.dictionaries(expo, coeff, min_size=1, max_size=4)


def units():
    return st.integers(-50, 50).filter(lambda a: a % P != 0 and a != 0)


# ---- m_delta ----


def test_m_delta_on_group_elements():
    x = triv_elt({7: 1, -4: 3})
    out = m_delta(TRIV, x, DELTA)
    expected = triv_elt(
        {7: DELTA.unit_value(7), -4: 3 * DELTA.unit_value(-4) % PN}
    )
    assert out.to_windowed() == expected.to_windowed()


@settings(max_examples=15, deadline=None)
@given(psi_zero_terms(), units())
def test_m_delta_sigma_equivariance(terms, a):
    x = triv_elt(terms)
    lhs = m_delta(TRIV, TRIV.sigma(x, a), DELTA)
    rhs = TRIV.sigma(m_delta(TRIV, x, DELTA), a).scalar_mul(DELTA.unit_value(a))
    assert lhs.to_windowed() == rhs.to_windowed()


@settings(max_examples=10, deadline=None)
@given(psi_zero_terms())
def test_m_delta_multiplicative_in_delta(terms):
    x = triv_elt(terms)
    d2 = cyclotomic_character(P, N).power(2).mul(unramified_character(P, N, 4))
    lhs = m_delta(TRIV, m_delta(TRIV, x, DELTA), d2, checked=False)
    rhs = m_delta(TRIV, x, DELTA.mul(d2))
    assert lhs.to_windowed() == rhs.to_windowed()


@settings(max_examples=10, deadline=None)
@given(psi_zero_terms())
def test_m_chi_is_the_derivative(terms):
    x = triv_elt(terms)
    chi = cyclotomic_character(P, N)
    lhs = m_delta(TRIV, x, chi)
    rhs = ModuleElement(TRIV, (x.coords[0].derivative(),))
    assert lhs.to_windowed() == rhs.to_windowed()


def test_m_delta_rejects_psi_nonzero_input():
    with pytest.raises(NotPsiZero):
        m_delta(TRIV, triv_elt({P: 1}), DELTA)


def test_limit_raises_below_required_depth():
    with pytest.raises(LimitNotStabilized):
        m_delta(TRIV, triv_elt({1: 1}), DELTA, n_max=2)


# ---- w_star and w_delta ----


def test_w_star_inverts_group_exponents():
    out = w_star(TRIV, triv_elt({2: 1}), checked=False)
    assert out.coords[0].terms == {pow(2, -1, PREC.unit_modulus): 1}


@settings(max_examples=10, deadline=None)
@given(psi_zero_terms())
def test_w_star_is_an_involution(terms):
    x = triv_elt(terms)
    back = w_star(TRIV, w_star(TRIV, x), checked=False)
    assert back.to_windowed() == x.to_windowed()


@settings(max_examples=10, deadline=None)
@given(psi_zero_terms(), units())
def test_w_star_sigma_law(terms, a):
    x = triv_elt(terms)
    inv_a = pow(a, -1, PREC.unit_modulus)
    lhs = w_star(TRIV, TRIV.sigma(x, a))
    rhs = TRIV.sigma(w_star(TRIV, x), inv_a)
    assert lhs.to_windowed() == rhs.to_windowed()


def test_w_delta_is_an_involution_on_modules():
    d1 = cyclotomic_character(P, N).mul(unramified_character(P, N, 2))
    d2 = finite_order_character(P, N, 1).mul(unramified_character(P, N, 5))
    m = build_triangular(PREC, d1, d2, LaurentElement.monomial(PREC, 1))
    x = ModuleElement(m, (group(-1), PowerSum.zero(PREC)))
    x = m.sigma(x, 2).add(m.sigma(x, -4).scalar_mul(5))
    delta = m.det_char.mul(cyclotomic_character(P, N).inv())
    back = w_delta(m, w_delta(m, x, delta), delta, checked=False)
    assert back.to_windowed() == x.to_windowed()


@settings(max_examples=8, deadline=None)
@given(psi_zero_terms(), units())
def test_w_delta_sigma_law(terms, a):
    x = triv_elt(terms)
    lhs = w_delta(TRIV, TRIV.sigma(x, a), DELTA)
    rhs = TRIV.sigma(w_delta(TRIV, x, DELTA), pow(a, -1, PREC.unit_modulus))
    rhs = rhs.scalar_mul(DELTA.unit_value(a))
    assert lhs.to_windowed() == rhs.to_windowed()


# ---- convolution ----


def test_convolution_multiplies_group_elements():
    x = triv_elt({2: 1})
    y = triv_elt({7: 1})
    out = convolution(TRIV, x, TRIV, y, multiplication_bilinear(TRIV), TRIV)
    assert out.to_windowed() == triv_elt({14: 1}).to_windowed()


@settings(max_examples=8, deadline=None)
@given(psi_zero_terms(), psi_zero_terms(), units())
def test_convolution_sigma_equivariance(t1, t2, a):
    x, y = triv_elt(t1), triv_elt(t2)
    conv = lambda u, v: convolution(
        TRIV, u, TRIV, v, multiplication_bilinear(TRIV), TRIV
    )
    lhs = conv(TRIV.sigma(x, a), y)
    rhs = TRIV.sigma(conv(x, y), a)
    assert lhs.to_windowed() == rhs.to_windowed()


def test_wedge_pair_is_antisymmetric():
    d1 = cyclotomic_character(P, N).mul(unramified_character(P, N, 2))
    d2 = finite_order_character(P, N, 1).mul(unramified_character(P, N, 5))
    m = build_triangular(PREC, d1, d2, LaurentElement.monomial(PREC, 1))
    e1 = ModuleElement(m, (group(-1), PowerSum.zero(PREC)))
    x = m.sigma(e1, 2)
    y = m.sigma(e1, -1).add(x.scalar_mul(3))
    lhs = wedge_pair(m, x, y)
    rhs = wedge_pair(m, y, x).neg()
    assert lhs.to_windowed() == rhs.to_windowed()


# ---- change of the variable zeta ----


def test_zeta_substitution_scales_exponents():
    x = triv_elt({1: 2, -4: 3})
    z = zeta_substitute(x, 2)
    assert z.coords[0].terms == {2: 2, -8: 3}
    with pytest.raises(ValidationError):
        zeta_substitute("nope", 2)


@settings(max_examples=6, deadline=None)
@given(psi_zero_terms(), st.sampled_from([2, 4, 5, -1]))
def test_m_delta_zeta_law(terms, a):
    # in the variable (1+X)^a - 1 the operator picks up delta(a)^{-1}
    x = triv_elt(terms)
    lhs = m_delta(TRIV, x, DELTA, zeta=a)
    rhs = m_delta(TRIV, x, DELTA).scalar_mul(pow(DELTA.unit_value(a), -1, PN))
    assert lhs.to_windowed() == rhs.to_windowed()


@settings(max_examples=6, deadline=None)
@given(psi_zero_terms(), st.sampled_from([2, 4, 5, -1]))
def test_w_star_zeta_law(terms, a):
    # the involution in the new variable is [sigma_{a^2}] times the standard one
    x = triv_elt(terms)
    lhs = w_star(TRIV, x, zeta=a)
    base = w_star(TRIV, x)
    rhs = ModuleElement(
        TRIV, (base.coords[0].scale_exponents(a * a % PREC.unit_modulus),)
    )
    assert lhs.to_windowed() == rhs.to_windowed()


@settings(max_examples=5, deadline=None)
@given(psi_zero_terms(), psi_zero_terms(), st.sampled_from([2, 4, -1]))
def test_convolution_zeta_law(t1, t2, a):
    # the convolution in the new variable is [sigma_{1/a}] times the standard one
    x, y = triv_elt(t1), triv_elt(t2)
    lhs = convolution(
        TRIV, x, TRIV, y, multiplication_bilinear(TRIV), TRIV, zeta=a
    )
    base = convolution(TRIV, x, TRIV, y, multiplication_bilinear(TRIV), TRIV)
    inv_a = pow(a, -1, PREC.unit_modulus)
    rhs = ModuleElement(TRIV, (base.coords[0].scale_exponents(inv_a),))
    assert lhs.to_windowed() == rhs.to_windowed()


@settings(max_examples=6, deadline=None)
@given(psi_zero_terms(), st.sampled_from([2, 4, 5]))
def test_operators_commute_with_substitution(terms, a):
    # recomputing in the substituted variable matches substituting the output
    x = triv_elt(terms)
    lhs = m_delta(TRIV, zeta_substitute(x, a), DELTA, zeta=a, checked=False)
    rhs = zeta_substitute(m_delta(TRIV, x, DELTA), a)
    assert lhs.to_windowed() == rhs.to_windowed()
