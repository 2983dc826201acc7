"""Wilson and t'Hooft insertions with their amplitudes, plus the S-duality swap.

A Wilson insertion of multiplicity m at a place v replaces the test function
f(x) by f(alpha_v^m x). A t'Hooft set is a quadratic extension M/Q, entering
the path integral as the Hecke character chi_D of its discriminant. By the
change of variables x -> alpha x the amplitude of a configuration is

    <W>_M = chi_D(prod alpha_v^m_v)^(-1),

independent of s and f. S-duality swaps the Wilson multiset with the
ramification pattern of M (the real place counted with multiplicity 1).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from . import arith
from .adele import (
    INF,
    IDENTITY,
    Idele,
    Place,
    alpha,
    alpha_power,
    check_place,
    idele_inv,
    idele_mul,
    idele_norm,
    parse_place,
    place_key,
)
from .characters import QuadHeckeChar, SymbolFn, hecke_eval
from .errors import ConfigError, DomainError
from .fields import QuadExtension, quad_ext
from .zeta import TestFunction, global_zeta

CASES = ("A", "B", "C", "D", "E")

Wilson = tuple[tuple[Place, int], ...]


def normalize_wilson(items: Iterable[tuple[Place, int]] | Mapping[Place, int]) -> Wilson:
    """Merge repeated places and sort (finite primes first, then the real place)."""
    if isinstance(items, Mapping):
        items = items.items()
    total: Counter = Counter()
    for v, m in items:
        v = check_place(v)
        if not isinstance(m, int) or m < 1:
            raise DomainError(f"Wilson multiplicity must be a positive integer, got {m!r}")
        total[v] += m
    return tuple(sorted(total.items(), key=lambda kv: place_key(kv[0])))


def parse_wilson(text: str) -> Wilson:
    """``"13:1,2:2,inf:1"`` -> normalized multiset. Empty text is no insertions."""
    items = []
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        place, _, mult = chunk.partition(":")
        try:
            m = int(mult) if mult else 1
        except ValueError as exc:
            raise DomainError(f"bad multiplicity in {chunk!r}") from exc
        items.append((parse_place(place), m))
    return normalize_wilson(items)


def format_wilson(w: Wilson) -> str:
    return ",".join(f"{v}:{m}" for v, m in w)


@dataclass(frozen=True)
class InsertionConfig:
    wilson: Wilson = ()
    thooft: Optional[QuadExtension] = None
    # toggled by s_dual: evaluate chi^-1 on the inverted Wilson idele
    inverted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "wilson", normalize_wilson(self.wilson))

    @cached_property
    def wilson_idele(self) -> Idele:
        """Product of alpha_v ** m over the Wilson insertions."""
        x = IDENTITY
        for v, m in self.wilson:
            x = idele_mul(x, alpha_power(v, m))
        return x

    def describe(self) -> str:
        th = "none" if self.thooft is None else str(self.thooft.d)
        return f"wilson {format_wilson(self.wilson) or '-'} thooft-d {th}"


@dataclass(frozen=True)
class Amplitude:
    value: int
    # (place, multiplicity, local symbol raised to the multiplicity)
    derivation: tuple[tuple[Place, int, int], ...] = field(default=())


def wilson_to_extension(wilson: Iterable[tuple[Place, int]] | Mapping[Place, int]) -> Optional[QuadExtension]:
    """The quadratic field whose ramification pattern is this multiset, or None.

    Odd primes must carry multiplicity 1, the real place 1, and the prime 2
    either nothing (d = 1 mod 4), 2 (d = 3 mod 4) or 3 (d even). Sign is read
    off the real place, which makes the map injective (2:3 alone gives d = 2).
    """
    w = dict(normalize_wilson(wilson))
    if not w:
        return None
    if w.get(INF, 1) != 1:
        return None
    d = -1 if INF in w else 1
    for v, m in w.items():
        if v == INF or v == 2:
            continue
        if m != 1:
            return None
        d *= v
    if w.get(2) == 3:
        d *= 2
    elif w.get(2) not in (None, 2):
        return None
    if d == 1:
        return None
    ext = quad_ext(d)
    if ext.insertion_pattern() != w:
        return None
    return ext


def validate(cfg: InsertionConfig, dual_legality: bool = False) -> list[str]:
    """Return the list of rule violations; empty means the configuration is legal."""
    problems = []
    ramified = cfg.thooft.ramified_places() if cfg.thooft is not None else set()
    for v, m in cfg.wilson:
        if v in ramified:
            problems.append(f"Wilson and t'Hooft insertions coexist at {v}")
        if idele_norm(alpha(v)) != 1:
            problems.append(f"alpha at {v} does not have norm one")
    if idele_norm(cfg.wilson_idele) != 1:
        problems.append("total Wilson charge is not zero (norm of product != 1)")
    if dual_legality and wilson_to_extension(cfg.wilson) is None:
        problems.append(f"Wilson set {format_wilson(cfg.wilson) or '-'} is not the pattern of a quadratic field")
    return problems


def amplitude(cfg: InsertionConfig, symbol: Optional[SymbolFn] = None) -> Amplitude:
    """<W>_M = chi_D(X)^-1 for X the product of the Wilson ideles."""
    if cfg.thooft is None:
        raise ConfigError("amplitude needs a t'Hooft insertion")
    problems = validate(cfg)
    if problems:
        raise ConfigError("; ".join(problems))
    chi = QuadHeckeChar(cfg.thooft.D)
    x = cfg.wilson_idele
    if cfg.inverted:
        # dual frame: ((chi^-1)(x^-1))^-1 = chi(x^-1)
        value = hecke_eval(chi, idele_inv(x), symbol)
    else:
        value = _symbol_inverse(hecke_eval(chi, x, symbol))
    derivation = []
    for v, m in cfg.wilson:
        local = _symbol_inverse(hecke_eval(chi, alpha_power(v, m), symbol))
        derivation.append((v, m, local))
    if math.prod(f for _, _, f in derivation) != value:
        raise ArithmeticError("amplitude disagrees with its local factorization")
    return Amplitude(value, tuple(derivation))


def _symbol_inverse(v: int) -> int:
    if v not in (1, -1):
        raise ArithmeticError(f"character value {v} is not a unit")
    return v  # +-1 are their own inverses


def amplitude_via_zeta(cfg: InsertionConfig, f: TestFunction, s, tol: float = 1e-12) -> complex:
    """Ratio z(s, chi_D; f(X .)) / z(s, chi_D; f) of global zeta integrals."""
    if cfg.thooft is None:
        raise ConfigError("amplitude needs a t'Hooft insertion")
    problems = validate(cfg)
    if problems:
        raise ConfigError("; ".join(problems))
    D = cfg.thooft.D
    den = global_zeta(f, D, s, tol)
    if den == 0:
        raise ConfigError("vacuum zeta integral vanishes for this test function")
    return global_zeta(f.translate(cfg.wilson_idele), D, s, tol) / den


def s_dual(cfg: InsertionConfig) -> InsertionConfig:
    """Swap Wilson and t'Hooft data; toggles the recorded inversion."""
    if cfg.thooft is None:
        raise ConfigError("S-duality needs a t'Hooft insertion")
    new_thooft = wilson_to_extension(cfg.wilson)
    if new_thooft is None:
        raise ConfigError(f"Wilson set {format_wilson(cfg.wilson) or '-'} is not dualizable")
    return InsertionConfig(
        wilson=tuple(cfg.thooft.insertion_pattern().items()),
        thooft=new_thooft,
        inverted=not cfg.inverted,
    )


def _signed_prime(q: int) -> int:
    """(-1)^((q-1)/2) q, the discriminant of the field ramified only at q (and maybe inf)."""
    return q if q % 4 == 1 else -q


def case_config(case: str, p: int, q: Optional[int]) -> InsertionConfig:
    """Original (pre-duality) configuration for one of the five reciprocity cases.

    A  p = q = 1 mod 4:        Wilson p:1,        t'Hooft Q(sqrt q)
    B  p = 1 mod 4 (q = 2):    Wilson p:1,        t'Hooft Q(sqrt -1)
    C  p = 1 mod 4, q odd:     Wilson p:1,        t'Hooft Q(sqrt q*)
    D  p = 2, q odd:           Wilson 2:3,        t'Hooft Q(sqrt q*)
    E  p = q = 3 mod 4:        Wilson p:1, 2:2,   t'Hooft Q(sqrt q*)
    with q* = (-1)^((q-1)/2) q.
    """
    def odd_prime(n):
        return n is not None and n > 2 and arith.is_prime(n)

    if case == "A":
        ok = odd_prime(p) and odd_prime(q) and p != q and p % 4 == 1 and q % 4 == 1
        cfg = lambda: InsertionConfig(((p, 1),), quad_ext(q))
    elif case == "B":
        ok = odd_prime(p) and p % 4 == 1 and q in (None, 2)
        cfg = lambda: InsertionConfig(((p, 1),), quad_ext(-1))
    elif case == "C":
        ok = odd_prime(p) and odd_prime(q) and p != q and p % 4 == 1
        cfg = lambda: InsertionConfig(((p, 1),), quad_ext(_signed_prime(q)))
    elif case == "D":
        ok = p == 2 and odd_prime(q)
        cfg = lambda: InsertionConfig(((2, 3),), quad_ext(_signed_prime(q)))
    elif case == "E":
        ok = odd_prime(p) and odd_prime(q) and p != q and p % 4 == 3 and q % 4 == 3
        cfg = lambda: InsertionConfig(((p, 1), (2, 2)), quad_ext(_signed_prime(q)))
    else:
        raise DomainError(f"unknown case {case!r}")
    if not ok:
        raise DomainError(f"case {case} does not apply to p={p}, q={q}")
    return cfg()


@dataclass(frozen=True)
class CheckResult:
    case: str
    p: int
    q: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def identity_check(case: str, p: int, q: Optional[int] = None, symbol: Optional[SymbolFn] = None) -> CheckResult:
    """Amplitude before and after S-duality for one reciprocity case."""
    cfg = case_config(case, p, q)
    lhs = amplitude(cfg, symbol).value
    rhs = amplitude(s_dual(cfg), symbol).value
    return CheckResult(case, p, 2 if case == "B" else q, lhs, rhs)


@dataclass
class ReciprocityReport:
    p_max: int
    checks: list[CheckResult] = field(default_factory=list)
    classical_pairs: int = 0
    classical_failures: list[tuple[int, int]] = field(default_factory=list)
    trivial_checked: int = 0
    trivial_failures: list[int] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    @property
    def case_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in CASES}
        for chk in self.checks:
            counts[chk.case] += 1
        return counts

    @property
    def passed(self) -> bool:
        return not (self.failures or self.classical_failures or self.trivial_failures)


def case_pairs(case: str, primes: list[int]) -> Iterable[tuple[int, Optional[int]]]:
    odd = [p for p in primes if p > 2]
    if case == "A":
        one = [p for p in odd if p % 4 == 1]
        return ((p, q) for p in one for q in one if p != q)
    if case == "B":
        return ((p, 2) for p in odd if p % 4 == 1)
    if case == "C":
        return ((p, q) for p in odd if p % 4 == 1 for q in odd if q != p)
    if case == "D":
        return ((2, q) for q in odd)
    if case == "E":
        three = [p for p in odd if p % 4 == 3]
        return ((p, q) for p in three for q in three if p != q)
    raise DomainError(f"unknown case {case!r}")


def reciprocity_sweep(
    p_max: int,
    cases: Iterable[str] = CASES,
    fault: Optional[tuple[int, int]] = None,
) -> ReciprocityReport:
    """Run every applicable identity check with primes <= p_max.

    ``fault = (D, p)`` flips kronecker(D, p) inside the amplitude engine, a
    self-test hook showing failures are caught and localized.
    """
    if p_max > 10**4:
        raise DomainError(f"p_max too large: {p_max}")
    symbol: Optional[SymbolFn] = None
    if fault is not None:
        def symbol(D, n, _fault=fault):
            value = arith.kronecker(D, n)
            return -value if (D, n) == _fault else value

    primes = arith.primes_up_to(p_max)
    report = ReciprocityReport(p_max)
    for case in cases:
        for p, q in case_pairs(case, primes):
            report.checks.append(identity_check(case, p, q, symbol))

    odd = [p for p in primes if p > 2]
    for p in odd:
        for q in odd:
            if p < q:
                sign = -1 if (p % 4 == 3 and q % 4 == 3) else 1
                report.classical_pairs += 1
                if arith.legendre(p, q) * arith.legendre(q, p) != sign:
                    report.classical_failures.append((p, q))
        if p % 4 == 3:
            # the one case S-duality does not cover: (-1/q) = -1 for q = 3 mod 4
            report.trivial_checked += 1
            if arith.legendre(-1, p) != -1:
                report.trivial_failures.append(p)
    return report
