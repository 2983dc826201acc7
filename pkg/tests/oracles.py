"""Independent reference computations used by the tests.

Nothing here calls into the package; each helper is the slow, obvious
version of something the package computes a faster or cleverer way.
"""
from fractions import Fraction


def primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


def euler_legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return 0 if r == 0 else (1 if r == 1 else -1)


def square_search(a, p):
    """1 if a is a nonzero square mod p, -1 if not, 0 if p | a."""
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def trial_factor(n):
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def jacobi(a, n):
    """Jacobi symbol for odd n > 0 as a product of Euler-criterion values."""
    value = 1
    for p, e in trial_factor(n).items():
        value *= euler_legendre(a, p) ** e
    return value


def kronecker_two(D):
    """(D/2) for D = 0, 1 mod 4: 0 if even, +1 if D = +-1 mod 8, else -1."""
    if D % 2 == 0:
        return 0
    return 1 if D % 8 in (1, 7) else -1


def chi(D, n):
    """Primitive quadratic character of a fundamental discriminant at n > 0."""
    value = 1
    v2 = 0
    while n % 2 == 0:
        n //= 2
        v2 += 1
    value *= kronecker_two(D) ** v2
    return value * jacobi(D, n) if n > 1 else value


def class_number_formula(D):
    """h(D) for D < -4 fundamental: -(1/|D|) sum_{n<|D|} chi(n) n."""
    m = -D
    total = sum(chi(D, n) * n for n in range(1, m))
    h = Fraction(-total, m)
    assert h.denominator == 1
    return int(h)


def brute_reduced_forms(D):
    """Reduced primitive forms by scanning a box; independent of any bound tricks."""
    from math import gcd

    out = []
    m = -D
    for a in range(1, m + 1):
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            if b < 0 and (a == c or -b == a):
                continue
            if -b == a:
                continue
            out.append((a, b, c))
    return out


def geometric_zeta(p, level, chi_p, s, terms=50):
    return sum((chi_p * p ** (-s)) ** k for k in range(level, level + terms))
