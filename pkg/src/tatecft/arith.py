"""Exact integer and rational primitives.

Rationals are :class:`fractions.Fraction`; symbol values are plain ints in
{-1, 0, 1}. Everything here is exact and deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import DomainError

FACTOR_BOUND = 10**9

Rat = Fraction


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (n <= 10**9)."""
    if n < 2:
        return False
    if n > FACTOR_BOUND:
        raise DomainError(f"primality bound exceeded: {n} > {FACTOR_BOUND}")
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a plain sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> list[tuple[int, int]]:
    """Sorted prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    if n > FACTOR_BOUND:
        raise DomainError(f"factorization bound exceeded: {n} > {FACTOR_BOUND}")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    step = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            out.append((f, e))
        f += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(abs(n)))


def modpow(a: int, e: int, m: int) -> int:
    """``a**e mod m`` in ``[0, m)``."""
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    if e < 0:
        raise DomainError(f"exponent must be nonnegative, got {e}")
    return pow(a, e, m)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion.

    This is the reference oracle the rest of the package is checked against,
    so it deliberately avoids any reciprocity-based shortcut.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"legendre needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


# (a/2) indexed by a mod 8
_KRONECKER_TWO = (0, 1, 0, -1, 0, -1, 0, 1)


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n), the standard extension of the Jacobi symbol."""
    if n == 0:
        if D == 0:
            raise DomainError("kronecker(0, 0) is undefined")
        return 1 if abs(D) == 1 else 0
    if D % 2 == 0 and n % 2 == 0:
        return 0
    k = 1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2:
        k = _KRONECKER_TWO[D & 7]
    if n < 0:
        n = -n
        if D < 0:
            k = -k
    # Jacobi symbol (D/n), n odd positive
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def valuation_int(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(r: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if type(r) is not Fraction:
        r = Fraction(r)
    if r == 0:
        raise DomainError("valuation of zero")
    return valuation_int(r.numerator, p) - valuation_int(r.denominator, p)


def rational_support(r: Fraction | int) -> list[int]:
    """Primes dividing the numerator or denominator of ``r``."""
    r = Fraction(r)
    if r == 0:
        raise DomainError("support of zero")
    ps = {p for p, _ in factorize(abs(r.numerator))}
    ps.update(p for p, _ in factorize(r.denominator))
    return sorted(ps)


def is_fundamental_discriminant(D: int) -> bool:
    """D = 1 mod 4 squarefree (D != 1), or D = 4m with m = 2, 3 mod 4 squarefree."""
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminants(bound: int) -> list[int]:
    """Fundamental discriminants D with 0 < |D| <= bound, sorted by |D| then sign."""
    out = [D for m in range(2, bound + 1) for D in (-m, m) if is_fundamental_discriminant(D)]
    return sorted(out, key=lambda D: (abs(D), D))


__all__ = [
    "Rat",
    "gcd",
    "is_prime",
    "primes_up_to",
    "factorize",
    "is_squarefree",
    "modpow",
    "legendre",
    "kronecker",
    "valuation",
    "valuation_int",
    "rational_support",
    "is_fundamental_discriminant",
    "fundamental_discriminants",
]
