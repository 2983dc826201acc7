"""Cubic arithmetic over Eisenstein integers and Kummer conductors at 1 - w.

K = Q(w) with w = zeta_3, w^2 + w + 1 = 0, and ring of integers Z[w]. The only
prime above 3 is lam = 1 - w, with 3 = -w^2 lam^2. For a rational integer q
prime to 3 the extension M = K(q^(1/3)) is tamely ramified at the primes
dividing q and possibly wildly ramified at lam. Wild symbols at lam are never
computed; only the discriminant exponent of lam is.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import arith
from .errors import DomainError, WildPlace

P0 = 3
# p0 * e / (p0 - 1) with e = v_lam(3) = 2
WILD_BOUND = 3


@dataclass(frozen=True)
class EisensteinInt:
    """a + b w."""

    a: int
    b: int = 0

    def __add__(self, other):
        other = _eis(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_eis(other))

    def __rsub__(self, other):
        return _eis(other) - self

    def __mul__(self, other):
        other = _eis(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        # w^2 = -1 - w
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative powers are not integral")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "EisensteinInt":
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __divmod__(self, other):
        other = _eis(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        num = self * other.conj()
        q = EisensteinInt(_round_div(num.a, n), _round_div(num.b, n))
        return q, self - q * other

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        return (_eis(other) % self).is_zero()

    def exact_div(self, other) -> "EisensteinInt":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError(f"{other} does not divide {self}")
        return q

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        coef = "" if abs(self.b) == 1 else str(abs(self.b))
        return f"{self.a}{sign}{coef}w" if self.a else f"{'' if self.b > 0 else '-'}{coef}w"


def _eis(x) -> EisensteinInt:
    if isinstance(x, EisensteinInt):
        return x
    if isinstance(x, int):
        return EisensteinInt(x, 0)
    raise TypeError(f"cannot use {x!r} as an Eisenstein integer")


def _round_div(x: int, n: int) -> int:
    return (2 * x + n) // (2 * n)


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
LAMBDA = EisensteinInt(1, -1)
UNITS = (ONE, OMEGA, OMEGA * OMEGA, -ONE, -OMEGA, -(OMEGA * OMEGA))


def eis_gcd(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    x, y = _eis(x), _eis(y)
    while not y.is_zero():
        x, y = y, x % y
    return x


def are_associates(x: EisensteinInt, y: EisensteinInt) -> bool:
    return any(u * x == y for u in UNITS)


@dataclass(frozen=True)
class EisPrime:
    generator: EisensteinInt
    residue_degree: int
    over: int
    is_lambda: bool = False

    @property
    def norm(self) -> int:
        return self.over**self.residue_degree


def _cube_root_of_unity_mod(p: int) -> int:
    """A root of x^2 + x + 1 mod p, p = 1 mod 3."""
    for g in range(2, p):
        r = pow(g, (p - 1) // 3, p)
        if r != 1:
            return r
    raise ArithmeticError(f"no primitive cube root of unity mod {p}")


def factor_rational_prime(p: int) -> list[tuple[EisPrime, int]]:
    """Primes of Z[w] above p with their exponents in (p)."""
    if not arith.is_prime(p):
        raise DomainError(f"not a prime: {p}")
    if p == 3:
        return [(EisPrime(LAMBDA, 1, 3, True), 2)]
    if p % 3 == 2:
        return [(EisPrime(EisensteinInt(p), 2, p), 1)]
    r = _cube_root_of_unity_mod(p)
    pi = primary(eis_gcd(EisensteinInt(p), OMEGA - r))
    if pi.norm() != p:
        raise ArithmeticError(f"splitting of {p} failed")
    return [(EisPrime(pi, 1, p), 1), (EisPrime(primary(pi.conj()), 1, p), 1)]


def valuation_at(x: EisensteinInt, P: EisPrime) -> int:
    x = _eis(x)
    if x.is_zero():
        raise DomainError("valuation of zero")
    v = 0
    while P.generator.divides(x):
        x = x.exact_div(P.generator)
        v += 1
    return v


def lambda_valuation(x: EisensteinInt, cap: Optional[int] = None) -> int:
    """v_lam(x); zero counts as ``cap`` when a cap is given."""
    x = _eis(x)
    if x.is_zero():
        if cap is None:
            raise DomainError("valuation of zero")
        return cap
    v = 0
    while LAMBDA.divides(x) and (cap is None or v < cap):
        x = x.exact_div(LAMBDA)
        v += 1
    return v


def factor(x: EisensteinInt) -> list[tuple[EisPrime, int]]:
    """Prime factorization of a nonzero element (up to a unit)."""
    x = _eis(x)
    if x.is_zero():
        raise DomainError("cannot factor zero")
    out = []
    for p, _ in arith.factorize(x.norm()):
        for P, _ in factor_rational_prime(p):
            v = valuation_at(x, P)
            if v:
                out.append((P, v))
    return out


def is_primary(x: EisensteinInt) -> bool:
    """x = +-1 mod 3."""
    x = _eis(x)
    return x.b % 3 == 0 and x.a % 3 != 0


def primary(x: EisensteinInt) -> EisensteinInt:
    """The associate of x congruent to -1 mod 3 (x prime to 3)."""
    x = _eis(x)
    for u in UNITS:
        y = u * x
        if y.a % 3 == 2 and y.b % 3 == 0:
            return y
    raise DomainError(f"{x} is not prime to 3")


def _powmod(x: EisensteinInt, e: int, m: EisensteinInt) -> EisensteinInt:
    out, base = ONE % m, x % m
    while e:
        if e & 1:
            out = (out * base) % m
        base = (base * base) % m
        e >>= 1
    return out


def power_residue_symbol(a: EisensteinInt, P: EisPrime) -> int:
    """Cubic residue symbol (a/P)_3 as the exponent k of w^k = a^((N P - 1)/3) mod P."""
    a = _eis(a)
    if P.is_lambda:
        raise WildPlace("the cubic residue symbol at lam = 1 - w is wild")
    if P.generator.divides(a):
        raise DomainError(f"{a} is divisible by {P.generator}")
    t = _powmod(a, (P.norm - 1) // 3, P.generator)
    w_k = ONE
    for k in range(3):
        if P.generator.divides(t - w_k):
            return k
        w_k = w_k * OMEGA
    raise ArithmeticError(f"{a}^((N-1)/3) is not a cube root of unity mod {P.generator}")


def tame_hilbert(a: EisensteinInt, b: EisensteinInt, P: EisPrime) -> int:
    """Cubic Hilbert symbol (a, b)_P at a tame prime, as an exponent of w.

    (a, b)_P = ((-1)^(al be) a^be / b^al mod P)^((N P - 1)/3) with al = v_P(a),
    be = v_P(b). Writing a = pi^al a0, b = pi^be b0 the unit is
    (-1)^(al be) a0^be b0^-al, and -1 is a cube.
    """
    a, b = _eis(a), _eis(b)
    if P.is_lambda:
        raise WildPlace("Hilbert symbols at lam are wild")
    if a.is_zero() or b.is_zero():
        raise DomainError("Hilbert symbol needs nonzero arguments")
    al, be = valuation_at(a, P), valuation_at(b, P)
    a0 = a.exact_div(P.generator**al)
    b0 = b.exact_div(P.generator**be)
    return (be * power_residue_symbol(a0, P) - al * power_residue_symbol(b0, P)) % 3


@dataclass
class KummerConductor:
    q: int
    w: int
    conductor_exponent: int
    disc_exponent: int
    # tame discriminant exponents at the primes above q
    tame_exponents: dict

    @property
    def unramified_at_lambda(self) -> bool:
        return self.disc_exponent == 0


def _check_kummer_radicand(q: int):
    if q % 3 == 0:
        raise DomainError(f"radicand must be prime to 3, got {q}")
    root = round(abs(q) ** (1 / 3))
    if any(c**3 == abs(q) for c in (root - 1, root, root + 1)):
        raise DomainError(f"radicand must not be a cube, got {q}")


def cube_approximation_depth(q: int) -> int:
    """max_c v_lam(q - c^3), capped at 3, searching c over Z[w] mod 9.

    c^3 mod lam^3 depends only on c mod lam, so residues mod 9 (which cover
    Z[w] / lam^4) more than suffice.
    """
    _check_kummer_radicand(q)
    best = 0
    for a in range(9):
        for b in range(9):
            c = EisensteinInt(a, b)
            best = max(best, lambda_valuation(EisensteinInt(q) - c**3, cap=WILD_BOUND))
            if best >= WILD_BOUND:
                return WILD_BOUND
    return best


def kummer_conductor_exponent(q: int) -> KummerConductor:
    """Conductor and discriminant exponents at lam of K(q^(1/3))/K.

    With w the cube-approximation depth: w >= 3 means unramified at lam;
    otherwise the conductor exponent is 3 - w + 1 and, both nontrivial cubic
    characters sharing it, the discriminant exponent is twice that.
    """
    w = cube_approximation_depth(q)
    if w >= WILD_BOUND:
        f = 0
    else:
        f = WILD_BOUND - w + 1
    tame = {}
    for p, _ in arith.factorize(abs(q)):
        for P, _ in factor_rational_prime(p):
            if valuation_at(EisensteinInt(q), P) % 3:
                tame[str(P.generator)] = P0 - 1
    return KummerConductor(q, w, f, (P0 - 1) * f, tame)


@dataclass
class FailureReport:
    q: int
    disc_exponent: int
    residue_mod_3: int
    conductor: KummerConductor

    @property
    def obstruction(self) -> bool:
        return self.residue_mod_3 != 0

    @property
    def verdict(self) -> str:
        return "PRESENT" if self.obstruction else "ABSENT"


def failure_case_report(q: int) -> FailureReport:
    """Is the lam-exponent in the relative discriminant of K(q^(1/3)) prime to 3?

    If so, the S-dual identity would force (1 - w, L/K)^exp = 1 while that
    symbol can be nontrivial: reading monodromies as Hilbert symbols breaks.
    """
    cond = kummer_conductor_exponent(q)
    return FailureReport(q, cond.disc_exponent, cond.disc_exponent % 3, cond)


def cubic_character(a: EisensteinInt, b: EisensteinInt) -> int:
    """Cubic Jacobi symbol (a/b)_3: sum of e_i (a/P_i)_3 over b = prod P_i^e_i."""
    return sum(e * power_residue_symbol(a, P) for P, e in factor(b)) % 3


def cubic_reciprocity_check(a: EisensteinInt, b: EisensteinInt) -> bool:
    """(a/b)_3 == (b/a)_3 for coprime a, b = +-1 mod 3, each side computed separately."""
    a, b = _eis(a), _eis(b)
    if not (is_primary(a) and is_primary(b)):
        raise DomainError("both arguments must be +-1 mod 3")
    if not eis_gcd(a, b).is_unit():
        raise DomainError(f"{a} and {b} are not coprime")
    return cubic_character(a, b) == cubic_character(b, a)


def random_primary_prime(rng: random.Random, max_norm: int = 10**4) -> EisensteinInt:
    """A uniformly chosen rational prime p (prime to 3, with a prime of norm <= max_norm
    above it), then a primary prime above p."""
    candidates = [p for p in arith.primes_up_to(max_norm) if p != 3 and (p % 3 == 1 or p * p <= max_norm)]
    p = rng.choice(candidates)
    choices = [P.generator for P, _ in factor_rational_prime(p)]
    return primary(rng.choice(choices))


def random_primary_pairs(count: int, seed: int = 0, max_norm: int = 10**4) -> list[tuple[EisensteinInt, EisensteinInt]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = random_primary_prime(rng, max_norm)
        b = random_primary_prime(rng, max_norm)
        if not are_associates(a, b):
            out.append((a, b))
    return out
