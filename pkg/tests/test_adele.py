from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tatecft import adele
from tatecft.adele import (
    IDENTITY,
    INF,
    Idele,
    alpha_infty,
    alpha_p,
    format_idele,
    idele_inv,
    idele_mul,
    idele_norm,
    idele_pow,
    parse_idele,
    tau,
)
from tatecft.errors import DomainError
from oracles import trial_factor

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]

nonzero_rat = st.builds(
    Fraction, st.integers(-500, 500).filter(bool), st.integers(1, 500)
)


@st.composite
def ideles(draw):
    comps = draw(st.dictionaries(st.sampled_from(SMALL_PRIMES), nonzero_rat, max_size=4))
    return Idele(draw(nonzero_rat), comps)


def test_mul_examples():
    x = Idele(Fraction(6), {5: Fraction(3, 7)})
    assert x * IDENTITY == x
    sq = alpha_p(3) * alpha_p(3)
    assert sq.real == 9 and sq.component(3) == 9 and sq.component(5) == 1
    assert alpha_p(5) * idele_inv(alpha_p(5)) == IDENTITY


def test_inv_examples():
    assert idele_inv(IDENTITY) == IDENTITY
    inv = idele_inv(alpha_p(7))
    assert inv.real == Fraction(1, 7) and inv.component(7) == Fraction(1, 7)


@given(ideles())
def test_inv_involution(x):
    assert idele_inv(idele_inv(x)) == x
    assert x * idele_inv(x) == IDENTITY


def test_norm_examples():
    assert idele_norm(alpha_p(13)) == 1
    assert idele_norm(Idele(6)) == 6
    assert idele_norm(alpha_infty()) == 1
    assert alpha_infty() ** 2 == IDENTITY
    assert idele_norm(tau(Fraction(-6, 5))) == 1
    assert tau(1) == IDENTITY


@given(ideles(), ideles())
def test_norm_homomorphism(x, y):
    assert idele_norm(x * y) == idele_norm(x) * idele_norm(y)


def test_product_formula_brute_force():
    # |r|_inf * prod_p |r|_p computed place by place, no shortcuts
    for num in list(range(-60, 61)) + [9999, -10000, 7919]:
        if num == 0:
            continue
        for den in (1, 2, 9, 35, 10000, 9973):
            r = Fraction(num, den)
            x = tau(r)
            primes_here = trial_factor(abs(num) * den)
            total = abs(x.component(INF))
            for p in primes_here:
                total *= Fraction(p) ** (-adele.arith.valuation(x.component(p), p))
            assert total == 1
            assert idele_norm(x) == 1


def test_tau_component_outside_support():
    x = tau(Fraction(-6, 5))
    assert x.component(7) == Fraction(-6, 5)
    assert x.component(101) == Fraction(-6, 5)
    assert x.valuation(101) == 0
    assert x.valuation_vector() == {2: 1, 3: 1, 5: -1}
    assert x.is_principal


def test_tau_zero():
    with pytest.raises(DomainError):
        tau(0)


def test_alpha_p_examples():
    a = alpha_p(13)
    assert a.valuation_vector() == {13: 1}
    assert alpha_p(2).real == 2 and alpha_p(2).component(2) == 2
    with pytest.raises(DomainError):
        alpha_p(15)


@pytest.mark.parametrize("p", SMALL_PRIMES)
@pytest.mark.parametrize("m", [-3, -1, 1, 2, 5])
def test_alpha_power_valuations(p, m):
    assert idele_pow(alpha_p(p), m).valuation_vector() == {p: m}


@given(ideles(), ideles())
def test_canonical_form_has_no_unit_entries(x, y):
    for z in (x * y, idele_inv(x)):
        assert all(c != 1 for c in z.finite.values())


@given(ideles())
def test_literal_round_trip(x):
    assert parse_idele(format_idele(x)) == x


def test_literal_examples():
    assert parse_idele("real=13;13=13") == alpha_p(13)
    assert parse_idele("real=-6/5;else=-6/5") == tau(Fraction(-6, 5))
    for bad in ("real=0", "13=1/0", "real=2;4=3", "7", "5=2;5=3"):
        with pytest.raises(DomainError):
            parse_idele(bad)


def test_zero_components_rejected():
    with pytest.raises(DomainError):
        Idele(0)
    with pytest.raises(DomainError):
        Idele(1, {3: 0})
