import random

import pytest
from hypothesis import given, settings, strategies as st

from phigamma.characters import (
    cyclotomic_character,
    finite_order_character,
    unramified_character,
)
from phigamma.errors import RankMismatch
from phigamma.laurent import LaurentElement, Precision
from phigamma.measures import Measure
from phigamma.modules import (
    ModuleElement,
    build_triangular,
    make_rank_one,
)
from phigamma.pairings import (
    amice_coordinates,
    delta_d,
    duality_check,
    epsilon_rank_one,
    epsilon_rank_two,
    iwasawa_pair,
    residue_pair,
    trianguline_factorization_check,
    trianguline_inputs,
    twisted_pair,
)
from phigamma.powersum import PowerSum

P, N = 3, 4
PREC = Precision(P, N, -10, 40)
PN = P ** N


def chi():
    return cyclotomic_character(P, N)


def standard_module(u_exp=1):
    d1 = chi().mul(unramified_character(P, N, 2))
    d2 = finite_order_character(P, N, 1).mul(unramified_character(P, N, 5))
    u = None if u_exp is None else LaurentElement.monomial(PREC, u_exp)
    return build_triangular(PREC, d1, d2, u)


def laurent(coeffs):
    out = LaurentElement.zero(PREC)
    for e, c in coeffs.items():
        out = out.add(LaurentElement.monomial(PREC, e, c))
    return out


def random_psi_zero(module, rng):
    # Lambda-combination of sigma-translates of the canonical psi-null vectors
    gens = trianguline_inputs(module)
    acc = module.zero()
    for g in gens:
        for _ in range(2):
            a = rng.choice([1, 2, 4, 5, 7, -1, -2])
            c = rng.randrange(0, PN)
            acc = acc.add(module.sigma(g, a).scalar_mul(c))
    return acc


# ---- residue pairing ----


def test_residue_pair_is_bilinear():
    m = standard_module()
    x1 = ModuleElement(m, (laurent({-1: 3}), laurent({-3: 1})))
    x2 = ModuleElement(m, (laurent({2: 1}), laurent({0: 2})))
    y = ModuleElement(m, (laurent({1: 2, -2: 1}), laurent({-1: 5})))
    lhs = residue_pair(m, x1.add(x2.scalar_mul(7)), y)
    rhs = (residue_pair(m, x1, y) + 7 * residue_pair(m, x2, y)) % PN
    assert lhs == rhs


def test_residue_pair_gamma_equivariance():
    d1 = chi().power(2).mul(unramified_character(P, N, 2))
    d2 = finite_order_character(P, N, 1).mul(unramified_character(P, N, 5))
    m = build_triangular(PREC, d1, d2, LaurentElement.monomial(PREC, 1))
    dd = delta_d(m)
    x = ModuleElement(m, (laurent({-1: 3, 2: 1}), laurent({-3: 1, 0: 2})))
    y = ModuleElement(m, (laurent({1: 2, -2: 1}), laurent({-1: 5, 3: 1})))
    base = residue_pair(m, x, y)
    assert base == 50
    for a in (2, 5, -4):
        moved = residue_pair(m, m.sigma(x, a), m.sigma(y, a))
        assert moved == base * dd.unit_value(a) % PN


def test_residue_pair_needs_rank_two():
    m = make_rank_one(PREC, chi())
    x = ModuleElement(m, (laurent({-1: 1}),))
    with pytest.raises(RankMismatch):
        residue_pair(m, x, x)


# ---- Iwasawa pairing ----


def test_iwasawa_pair_of_basis_vectors_is_the_unit():
    m = standard_module()
    x, y = trianguline_inputs(m)
    assert iwasawa_pair(m, x, y) == Measure.unit(PREC)


def test_iwasawa_pair_group_translates():
    # [sigma_a] x against [sigma_b] y pairs to [sigma_{ab}]
    m = standard_module()
    x, y = trianguline_inputs(m)
    for a, b in [(2, 5), (4, -1), (-2, 7)]:
        lam = iwasawa_pair(m, m.sigma(x, a), m.sigma(y, b))
        assert lam == Measure.from_group_element(PREC, a * b)


def test_iwasawa_pair_is_bilinear():
    rng = random.Random(11)
    m = standard_module()
    x1 = random_psi_zero(m, rng)
    x2 = random_psi_zero(m, rng)
    y = random_psi_zero(m, rng)
    lhs = iwasawa_pair(m, x1.add(x2.scalar_mul(5)), y)
    rhs = iwasawa_pair(m, x1, y).add(iwasawa_pair(m, x2, y).scalar_mul(5))
    assert lhs == rhs


# ---- epsilon trivializations ----


def test_epsilon_rank_one_on_point_masses():
    delta = chi().mul(unramified_character(P, N, 2))
    lam = Measure.from_group_element(PREC, 5)
    out = epsilon_rank_one(delta, lam, PREC)
    expected = PowerSum.group_element(PREC, -5, delta.unit_value(5))
    assert out.coords[0].to_laurent() == expected.to_laurent()


def test_epsilon_rank_one_amice_round_trip():
    delta = finite_order_character(P, N, 1).mul(chi())
    lam = Measure(PREC, PowerSum(PREC, {1: 2, 5: 1, -2: 4}))
    g = epsilon_rank_one(delta, lam, PREC)
    assert amice_coordinates(delta, g) == lam


@settings(max_examples=5, deadline=None)
@given(st.sampled_from([2, 4, 5, -1]))
def test_epsilon_rank_one_zeta_change(a):
    # epsilon in the variable (1+X)^a - 1 equals epsilon of delta(a)^{-1} [sigma_a] lambda
    delta = finite_order_character(P, N, 1).mul(chi()).mul(
        unramified_character(P, N, 2)
    )
    lam = Measure(PREC, PowerSum(PREC, {1: 2, 5: 1, -2: 4}))
    lhs = epsilon_rank_one(delta, lam, PREC, zeta=a)
    moved = lam.group_scale(a).scalar_mul(pow(delta.unit_value(a), -1, PN))
    rhs = epsilon_rank_one(delta, moved, PREC)
    assert lhs.to_windowed() == rhs.to_windowed()


def test_epsilon_rank_two_zeta_change():
    # epsilon in the new variable is det(a) [sigma_a]^{-2} times the standard one
    m = standard_module()
    x, y = trianguline_inputs(m)
    x, y = m.sigma(x, 2), m.sigma(y, -4)
    base = epsilon_rank_two(m, x, y)
    inv = pow(2, -1, PREC.unit_modulus)
    for a in (2, 5):
        inv_a = pow(a, -1, PREC.unit_modulus)
        lhs = epsilon_rank_two(m, x, y, zeta=a)
        rhs = base.group_scale(inv_a * inv_a % PREC.unit_modulus).scalar_mul(
            m.det_char.unit_value(a)
        )
        assert lhs == rhs


# ---- duality ----


def test_duality_on_basis_vectors():
    for u_exp in (None, 1):
        m = standard_module(u_exp)
        x, y = trianguline_inputs(m)
        ok, lhs, rhs = duality_check(m, x, y)
        assert ok, (lhs, rhs)


def test_duality_on_random_elements():
    rng = random.Random(7)
    for u_exp in (None, 1):
        m = standard_module(u_exp)
        for _ in range(2):
            x = random_psi_zero(m, rng)
            y = random_psi_zero(m, rng)
            ok, lhs, rhs = duality_check(m, x, y)
            assert ok, (lhs.amice.terms, rhs.amice.terms)


# ---- trianguline factorization ----


def test_trianguline_factorization_split_and_nonsplit():
    d1 = chi().mul(unramified_character(P, N, 2))
    d2 = finite_order_character(P, N, 1).mul(unramified_character(P, N, 5))
    for u in (None, LaurentElement.monomial(PREC, 1),
              laurent({1: 2, 3: 1})):
        ok, lam, unit = trianguline_factorization_check(PREC, d1, d2, u)
        assert ok, lam.amice.terms


def test_trianguline_factorization_other_characters():
    d1 = chi().power(2)
    d2 = unramified_character(P, N, 7)
    ok, lam, unit = trianguline_factorization_check(
        PREC, d1, d2, LaurentElement.monomial(PREC, 2)
    )
    assert ok, lam.amice.terms


# ---- twisting ----


def test_twisted_pair_is_the_group_twist():
    rng = random.Random(3)
    m = standard_module()
    delta = finite_order_character(P, N, 1).mul(chi()).mul(
        unramified_character(P, N, 2)
    )
    x = random_psi_zero(m, rng)
    y = random_psi_zero(m, rng)
    base = iwasawa_pair(m, x, y)
    assert twisted_pair(m, delta, x, y) == base.g_twist(delta)
