"""Quasicharacters |x|^s and quadratic Hecke characters on ideles of Q.

A quadratic character is stored by its discriminant D and evaluated only on
ideles whose components are 1 at every ramified place, by

    chi_D(x) = prod_{p not dividing D} kronecker(D, p) ** (-v_p(x)).

No extension to all of I_Q is attempted.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import arith
from .adele import INF, Idele, idele_norm
from .errors import DomainError, RamifiedCollision

SymbolFn = Callable[[int, int], int]


@dataclass(frozen=True)
class QuasiCharacter:
    s: complex

    def __post_init__(self):
        s = complex(self.s)
        if not (math.isfinite(s.real) and math.isfinite(s.imag)):
            raise DomainError(f"coupling constant must be finite, got {self.s!r}")
        object.__setattr__(self, "s", s)


def omega_s_eval(chi: QuasiCharacter | complex, x: Idele) -> complex:
    """|x|^s, with the norm computed exactly before going to floating point."""
    s = chi.s if isinstance(chi, QuasiCharacter) else complex(chi)
    n = idele_norm(x)
    if n == 1 or s == 0:
        return 1 + 0j
    log_norm = math.log(n.numerator) - math.log(n.denominator)
    return cmath.exp(s * log_norm)


@dataclass(frozen=True)
class QuadHeckeChar:
    D: int
    ramified_finite: frozenset = field(init=False)
    ramified_at_infinity: bool = field(init=False)

    def __post_init__(self):
        if self.D == 0 or self.D % 4 not in (0, 1):
            raise DomainError(f"not a discriminant: {self.D}")
        object.__setattr__(self, "ramified_finite", frozenset(p for p, _ in arith.factorize(abs(self.D))))
        object.__setattr__(self, "ramified_at_infinity", self.D < 0)

    def is_ramified(self, v) -> bool:
        return self.ramified_at_infinity if v == INF else v in self.ramified_finite

    def local_value(self, p: int) -> int:
        """Value at an unramified prime p (the Frobenius sign)."""
        if p in self.ramified_finite:
            raise RamifiedCollision(f"{p} is ramified for D={self.D}")
        return arith.kronecker(self.D, p)


def hecke_eval(chi: QuadHeckeChar, x: Idele, symbol: Optional[SymbolFn] = None) -> int:
    """Evaluate chi_D on an idele trivial at the ramified places.

    ``symbol`` replaces the Kronecker symbol; it exists so sweeps can inject
    faults into the otherwise fixed evaluation path.
    """
    symbol = symbol or arith.kronecker
    for p in sorted(chi.ramified_finite):
        if x.component(p) != 1:
            raise RamifiedCollision(
                f"component {x.component(p)} at ramified prime {p} (D={chi.D})"
            )
    if chi.ramified_at_infinity and x.real < 0:
        raise RamifiedCollision(f"negative real component with D={chi.D} < 0")
    value = 1
    for p, v in x.valuations.items():
        if p in chi.ramified_finite:
            continue
        # quadratic: the exponent only matters mod 2, and -v has the parity of v
        if v % 2:
            value *= symbol(chi.D, p)
    return value


@dataclass
class SweepReport:
    D: int
    r_max: int
    checked: int
    counterexample: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def well_definedness_sweep(D: int, r_max: int) -> SweepReport:
    """Check prod_{p|r} kronecker(D, p)^{v_p(r)} = 1 for all r = 1 mod |D|, r <= r_max.

    Triviality of chi_D on tau(Q^x) cannot be tested on the restricted domain
    directly; this is the statement that chi_D descends to a character mod |D|.
    """
    if D == 0 or D % 4 not in (0, 1):
        raise DomainError(f"not a discriminant: {D}")
    if r_max > 10**5:
        raise DomainError(f"r_max too large: {r_max}")
    step = abs(D)
    checked = 0
    for r in range(1, r_max + 1, step):
        if math.gcd(r, D) != 1:
            continue
        value = 1
        for p, e in arith.factorize(r):
            if e % 2:
                value *= arith.kronecker(D, p)
        checked += 1
        if value != 1:
            return SweepReport(D, r_max, checked, r)
    return SweepReport(D, r_max, checked)
