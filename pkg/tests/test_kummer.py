import random

import pytest
from hypothesis import given, strategies as st

from tatecft.errors import DomainError, WildPlace
from tatecft.kummer import (
    LAMBDA,
    OMEGA,
    ONE,
    UNITS,
    EisensteinInt,
    are_associates,
    cube_approximation_depth,
    cubic_reciprocity_check,
    eis_gcd,
    factor_rational_prime,
    failure_case_report,
    is_primary,
    kummer_conductor_exponent,
    power_residue_symbol,
    primary,
    random_primary_pairs,
    tame_hilbert,
)
from oracles import primes, trial_factor

eis = st.builds(EisensteinInt, st.integers(-60, 60), st.integers(-60, 60))
nonzero_eis = eis.filter(lambda x: not x.is_zero())

TAME_PRIMES = [P for p in (2, 5, 7, 13, 19, 31) for P, _ in factor_rational_prime(p)]


def test_basic_arithmetic():
    assert LAMBDA.norm() == 3
    assert OMEGA * OMEGA == EisensteinInt(-1, -1)
    assert OMEGA**3 == ONE
    assert EisensteinInt(3, 1).norm() == 7
    r = EisensteinInt(7) % EisensteinInt(2, 1)
    assert r.norm() < 3


@given(eis, eis)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.conj().norm() == x.norm()
    assert (x * x.conj()).b == 0


@given(eis, nonzero_eis)
def test_division_with_remainder(x, y):
    q, r = divmod(x, y)
    assert q * y + r == x
    assert r.norm() < y.norm()


def test_unit_group_exhaustive():
    found = {EisensteinInt(a, b) for a in range(-2, 3) for b in range(-2, 3) if EisensteinInt(a, b).norm() == 1}
    assert found == set(UNITS) and len(UNITS) == 6


def test_factor_rational_prime_examples():
    seven = factor_rational_prime(7)
    assert len(seven) == 2 and all(P.norm == 7 and P.generator.norm() == 7 for P, _ in seven)
    assert not are_associates(seven[0][0].generator, seven[1][0].generator)
    (five, e), = factor_rational_prime(5)
    assert five.norm == 25 and five.residue_degree == 2 and e == 1
    (lam, e), = factor_rational_prime(3)
    assert lam.is_lambda and e == 2
    assert are_associates(lam.generator**2, EisensteinInt(3))
    with pytest.raises(DomainError):
        factor_rational_prime(9)


def test_split_primes_vs_norm_search():
    for p in primes(400):
        if p % 3 != 1:
            continue
        # x^2 - xy + y^2 = p has a solution: independent search
        assert any(a * a - a * b + b * b == p for a in range(-40, 41) for b in range(-40, 41))
        gens = [P.generator for P, _ in factor_rational_prime(p)]
        prod = gens[0] * gens[1]
        assert are_associates(prod, EisensteinInt(p))


def test_residue_symbol_examples():
    P7 = factor_rational_prime(7)[0][0]
    assert power_residue_symbol(ONE, P7) == 0
    # omega^((7-1)/3) = omega^2
    assert power_residue_symbol(OMEGA, P7) == 2
    with pytest.raises(WildPlace):
        power_residue_symbol(ONE, factor_rational_prime(3)[0][0])
    with pytest.raises(DomainError):
        power_residue_symbol(P7.generator * 5, P7)


def _coprime(x, P):
    return not x.is_zero() and not P.generator.divides(x)


def test_residue_symbol_properties():
    rng = random.Random(0)
    for _ in range(100):
        P = rng.choice(TAME_PRIMES)
        a = EisensteinInt(rng.randint(-50, 50), rng.randint(-50, 50))
        b = EisensteinInt(rng.randint(-50, 50), rng.randint(-50, 50))
        if not (_coprime(a, P) and _coprime(b, P)):
            continue
        ab = power_residue_symbol(a * b, P)
        assert ab == (power_residue_symbol(a, P) + power_residue_symbol(b, P)) % 3
        assert power_residue_symbol(a**3, P) == 0


def test_residue_symbol_counts_cubes():
    # exactly a third of the residue classes prime to P are cubes
    for P in TAME_PRIMES[:5]:
        n = P.norm
        reps = {}
        for a in range(-n, n + 1):
            for b in range(-n, n + 1):
                x = EisensteinInt(a, b)
                r = x % P.generator
                if not r.is_zero():
                    reps[r] = x
        assert len(reps) == n - 1
        cubes = {(x**3) % P.generator for x in reps.values()}
        for r, x in reps.items():
            assert (power_residue_symbol(x, P) == 0) == (r in cubes)


def test_tame_hilbert_examples():
    P = TAME_PRIMES[2]
    u, v = EisensteinInt(2), EisensteinInt(3, 1)
    if _coprime(u, P) and _coprime(v, P):
        assert tame_hilbert(u, v, P) == 0
    pi = P.generator
    assert tame_hilbert(pi, pi, P) == 0
    with pytest.raises(WildPlace):
        tame_hilbert(ONE, OMEGA, factor_rational_prime(3)[0][0])


def _rand_nonzero(rng):
    while True:
        x = EisensteinInt(rng.randint(-30, 30), rng.randint(-30, 30))
        if not x.is_zero():
            return x


def test_tame_hilbert_skew_and_bimultiplicative():
    rng = random.Random(0)
    for _ in range(100):
        P = rng.choice(TAME_PRIMES)
        pi = P.generator
        a = _rand_nonzero(rng) * pi ** rng.randint(0, 2)
        b = _rand_nonzero(rng) * pi ** rng.randint(0, 2)
        c = _rand_nonzero(rng) * pi ** rng.randint(0, 2)
        assert (tame_hilbert(a, b, P) + tame_hilbert(b, a, P)) % 3 == 0
        assert tame_hilbert(a * c, b, P) == (tame_hilbert(a, b, P) + tame_hilbert(c, b, P)) % 3
        assert tame_hilbert(a, b * c, P) == (tame_hilbert(a, b, P) + tame_hilbert(a, c, P)) % 3


def test_primary_normalization():
    for x in (EisensteinInt(2), EisensteinInt(3, 1), EisensteinInt(-1, 3), EisensteinInt(5, 6)):
        y = primary(x)
        assert is_primary(y) and y.a % 3 == 2 and are_associates(x, y)
    with pytest.raises(DomainError):
        primary(LAMBDA)


def test_cubic_reciprocity_examples():
    assert cubic_reciprocity_check(primary(EisensteinInt(2)), primary(EisensteinInt(5)))
    a = primary(EisensteinInt(3, 1))
    with pytest.raises(DomainError):
        cubic_reciprocity_check(a, a)
    with pytest.raises(DomainError):
        cubic_reciprocity_check(EisensteinInt(3, 1), a * primary(EisensteinInt(2)))


def test_cubic_reciprocity_random_pairs():
    for a, b in random_primary_pairs(50, seed=0):
        assert a.norm() <= 10**4 * 10**4
        assert cubic_reciprocity_check(a, b)


def test_cubic_reciprocity_composite():
    a = primary(EisensteinInt(3, 1)) * primary(EisensteinInt(2))
    b = primary(EisensteinInt(5)) * primary(EisensteinInt(-1, 3))
    assert cubic_reciprocity_check(a, b)


def brute_lift_depth(q):
    """max v_lam(q - c^3) over c = a + b w with |a|, |b| <= 13, capped at 3."""
    best = 0
    for a in range(-13, 14):
        for b in range(-13, 14):
            x = EisensteinInt(q) - EisensteinInt(a, b) ** 3
            if x.is_zero():
                return 3
            v = 0
            while v < 3 and LAMBDA.divides(x):
                x = x // LAMBDA
                v += 1
            best = max(best, v)
    return best


def dedekind_disc_exponent(q):
    """v_lam of disc(K(q^(1/3)) / K) from the pure cubic field Q(q^(1/3)).

    For cube-free q prime to 3 the ring Z[q^(1/3)] is 3-maximal iff
    (q^3 - q)/3 is prime to 3 (Dedekind's criterion), giving v_3(d_F) = 3;
    otherwise v_3(d_F) = 1. With d_M = d_F^2 d_K for the sextic closure and
    d_M = d_K^3 N(d_{M/K}), the lam-exponent is 2 v_3(d_F) - 2.
    """
    v3_dF = 3 if ((q**3 - q) // 3) % 3 else 1
    return 2 * v3_dF - 2


def test_conductor_q5_example():
    c = kummer_conductor_exponent(5)
    assert (c.w, c.conductor_exponent, c.disc_exponent) == (2, 2, 4)
    assert c.tame_exponents == {"5": 2}


def test_conductor_vs_oracles():
    for q in range(2, 201):
        if q % 3 == 0 or any(e % 3 == 0 for e in trial_factor(q).values()):
            continue
        c = kummer_conductor_exponent(q)
        assert c.w == brute_lift_depth(q) <= 3
        assert c.disc_exponent in (0, 2, 4)
        assert c.disc_exponent == dedekind_disc_exponent(q)
        assert (c.disc_exponent == 0) == (q % 9 in (1, 8))


def test_conductor_q10_and_q2():
    assert kummer_conductor_exponent(10).disc_exponent == 0
    assert cube_approximation_depth(10) == 3
    assert kummer_conductor_exponent(2).disc_exponent == 4


def test_conductor_rejects():
    for q in (3, 6, 8, 27, -1, 1):
        with pytest.raises(DomainError):
            kummer_conductor_exponent(q)


def test_failure_reports():
    r = failure_case_report(5)
    assert (r.disc_exponent, r.residue_mod_3, r.verdict) == (4, 1, "PRESENT")
    r = failure_case_report(17)
    assert (r.disc_exponent, r.residue_mod_3, r.verdict) == (0, 0, "ABSENT")
    assert failure_case_report(2).obstruction == (failure_case_report(2).disc_exponent % 3 != 0)


def test_gcd():
    a, b = EisensteinInt(3, 1), EisensteinInt(2, 3)
    assert eis_gcd(a * b, a * EisensteinInt(5)).norm() == a.norm()
