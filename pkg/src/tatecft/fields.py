"""Quadratic extensions of Q and class groups of imaginary quadratic fields.

The discriminant exponents of a quadratic field double as t'Hooft insertion
multiplicities. Class groups are built from reduced positive definite binary
quadratic forms under Gaussian composition.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd, isqrt
from typing import Mapping

from . import arith
from .adele import INF, Place, place_key
from .errors import DomainError, RamifiedPlace


@dataclass(frozen=True)
class QuadExtension:
    """Q(sqrt d) for squarefree d not in {0, 1}."""

    d: int
    D: int = field(init=False)
    ramified_exponents: Mapping[int, int] = field(init=False, compare=False)
    ramified_at_infinity: bool = field(init=False, compare=False)

    def __post_init__(self):
        d = self.d
        if d in (0, 1) or not arith.is_squarefree(d):
            raise DomainError(f"d must be squarefree and not 0 or 1, got {d}")
        D = d if d % 4 == 1 else 4 * d
        exps = {p: 1 for p, _ in arith.factorize(abs(d)) if p != 2}
        if d % 4 == 3:
            exps[2] = 2
        elif d % 4 == 2:
            exps[2] = 3
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "ramified_exponents", dict(sorted(exps.items())))
        object.__setattr__(self, "ramified_at_infinity", d < 0)

    def __hash__(self):
        return hash(self.d)

    def insertion_pattern(self) -> dict[Place, int]:
        """Ramified places with multiplicities; the real place counts once."""
        out: dict[Place, int] = dict(self.ramified_exponents)
        if self.ramified_at_infinity:
            out[INF] = 1
        return dict(sorted(out.items(), key=lambda kv: place_key(kv[0])))

    def ramified_places(self) -> set:
        return set(self.insertion_pattern())


@lru_cache(maxsize=4096)
def quad_ext(d: int) -> QuadExtension:
    return QuadExtension(d)


def monodromy(ext: QuadExtension, p: int) -> int:
    """Frobenius sign at an unramified prime: +1 split, -1 inert."""
    if not arith.is_prime(p):
        raise DomainError(f"not a prime: {p}")
    if ext.D % p == 0:
        raise RamifiedPlace(f"{p} ramifies in Q(sqrt {ext.d})")
    return arith.kronecker(ext.D, p)


def different_exponent(ext: QuadExtension, p: int) -> int:
    """Exponent of the prime above p in the different (= discriminant exponent here)."""
    if p not in ext.ramified_exponents:
        raise DomainError(f"{p} is unramified in Q(sqrt {ext.d})")
    return ext.ramified_exponents[p]


@dataclass(frozen=True, order=True)
class BQF:
    """Positive definite form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduce(self) -> "BQF":
        a, b, c = self.a, self.b, self.c
        if a <= 0 or b * b - 4 * a * c >= 0:
            raise DomainError(f"not positive definite: {self}")
        while True:
            # normalize: -a < b <= a
            if not (-a < b <= a):
                r = (a - b) // (2 * a)
                c = a * r * r + b * r + c
                b = b + 2 * r * a
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return BQF(a, b, c)

    def inverse(self) -> "BQF":
        return BQF(self.a, -self.b, self.c).reduce()

    def __mul__(self, other: "BQF") -> "BQF":
        return compose(self, other)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u a + v b = g = gcd(a, b) >= 0."""
    u0, u1, v0, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -a, -u0, -v0
    return a, u0, v0


def compose(f1: BQF, f2: BQF) -> BQF:
    """Gaussian composition of two primitive forms of equal discriminant, reduced."""
    D = f1.discriminant
    if f2.discriminant != D:
        raise DomainError("forms have different discriminants")
    if f1.a > f2.a:
        f1, f2 = f2, f1
    a1, b1, _ = f1.a, f1.b, f1.c
    a2, b2, c2 = f2.a, f2.b, f2.c
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, v = _xgcd(s, d)
        y2 = -v
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    return BQF(a3, b3, c3).reduce()


def _check_negative_fundamental(D: int):
    if D >= 0 or not arith.is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a negative fundamental discriminant")


def reduced_forms(D: int) -> list[BQF]:
    """All reduced primitive forms of discriminant D < 0, sorted."""
    if D >= 0 or D % 4 not in (0, 1):
        raise DomainError(f"bad negative discriminant {D}")
    out = []
    a_max = isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = BQF(a, b, c)
            if f.is_reduced() and gcd(gcd(a, b), c) == 1:
                out.append(f)
    return sorted(out)


@dataclass
class ClassGroup:
    D: int
    forms: list[BQF]
    elementary_divisors: list[int]

    @property
    def h(self) -> int:
        return len(self.forms)

    @cached_property
    def identity(self) -> BQF:
        return principal_form(self.D)

    @property
    def invariant_factors(self) -> list[int]:
        """Cyclic factor orders d_1 | d_2 | ... (empty for the trivial group)."""
        by_prime: dict[int, list[int]] = {}
        for q in self.elementary_divisors:
            p = arith.factorize(q)[0][0]
            by_prime.setdefault(p, []).append(q)
        length = max((len(v) for v in by_prime.values()), default=0)
        out = [1] * length
        for qs in by_prime.values():
            qs = sorted(qs, reverse=True)
            for i, q in enumerate(qs):
                out[length - 1 - i] *= q
        return out


def principal_form(D: int) -> BQF:
    return BQF(1, D % 2, (D % 2 - D) // 4)


def form_order(f: BQF) -> int:
    e = principal_form(f.discriminant)
    g, k = f, 1
    while g != e:
        g = compose(g, f)
        k += 1
    return k


def class_group(D: int) -> ClassGroup:
    """Class group of Q(sqrt D), D < 0 fundamental, with its elementary divisors."""
    _check_negative_fundamental(D)
    forms = reduced_forms(D)
    h = len(forms)
    orders = [form_order(f) for f in forms]
    # |G[l^k]| = l^(sum_i min(k, e_i)) recovers the l-primary partition
    divisors: list[int] = []
    for l, e_total in arith.factorize(h):
        logs = [0]
        k = 1
        while logs[-1] < e_total:
            count = sum(1 for o in orders if (l**k) % o == 0)
            logs.append(arith.valuation_int(count, l))
            k += 1
        for k in range(1, len(logs)):
            at_least_k = logs[k] - logs[k - 1]
            at_least_next = logs[k + 1] - logs[k] if k + 1 < len(logs) else 0
            divisors += [l**k] * (at_least_k - at_least_next)
    return ClassGroup(D, forms, sorted(divisors))


def class_number(D: int) -> int:
    _check_negative_fundamental(D)
    return len(reduced_forms(D))


def conformal_block_dim(D: int) -> int:
    """Dimension of the conformal-block space for the trivial character.

    The number of tau(K^x)-orbits on I_K / Ker(phi) is the class number, so this
    is h(K). D = 1 stands for Q itself.
    """
    if D == 1:
        return 1
    return class_group(D).h
