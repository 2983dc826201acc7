"""Ideles of Q as finitely supported exact local data.

An :class:`Idele` stores its real component, an explicit map of finite
components, and a ``background`` rational: the component at every prime not
in the map. Ordinary ideles have background 1. The diagonal image tau(r) has
background r, which is a unit at every prime outside supp(r), so the object is
still a genuine idele while reporting the right component everywhere.

Canonical form: the map holds exactly the primes where the component differs
from the background, plus every prime dividing the background.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Union

from . import arith
from .errors import DomainError

INF = "inf"

# A place of Q: a prime number or INF for the real place.
Place = Union[int, str]


def check_place(v: Place) -> Place:
    if v == INF:
        return INF
    if isinstance(v, int) and not isinstance(v, bool) and arith.is_prime(v):
        return v
    raise DomainError(f"not a place of Q: {v!r}")


def parse_place(text: str) -> Place:
    text = text.strip().lower()
    if text in ("inf", "oo", "infinity", "real"):
        return INF
    try:
        return check_place(int(text))
    except ValueError as exc:
        raise DomainError(f"not a place of Q: {text!r}") from exc


def place_key(v: Place) -> tuple[int, int]:
    """Sort key: finite primes ascending, the real place last."""
    return (1, 0) if v == INF else (0, int(v))


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


@lru_cache(maxsize=4096)
def _checked_prime(p: int) -> int:
    return check_place(int(p))


def _canonical(background: Fraction, comps: Mapping[int, Fraction]) -> dict[int, Fraction]:
    if background == 1:
        return {p: c for p, c in sorted(comps.items()) if c != 1}
    keep = set(arith.rational_support(background))
    return {p: c for p, c in sorted(comps.items()) if c != background or p in keep}


@dataclass(frozen=True)
class Idele:
    real: Fraction
    finite: Mapping[int, Fraction] = field(default_factory=dict)
    background: Fraction = Fraction(1)

    def __post_init__(self):
        real = _frac(self.real)
        bg = _frac(self.background)
        if real == 0 or bg == 0:
            raise DomainError("idele components must be nonzero")
        comps = {}
        for p, c in self.finite.items():
            c = _frac(c)
            if c == 0:
                raise DomainError(f"zero component at {p}")
            comps[_checked_prime(p)] = c
        for p in arith.rational_support(bg) if bg != 1 else ():
            comps.setdefault(p, bg)
        object.__setattr__(self, "real", real)
        object.__setattr__(self, "background", bg)
        object.__setattr__(self, "finite", _canonical(bg, comps))

    def __hash__(self):
        return hash((self.real, tuple(self.finite.items()), self.background))

    def component(self, v: Place) -> Fraction:
        if v == INF:
            return self.real
        return self.finite.get(v, self.background)

    def valuation(self, p: int) -> int:
        return arith.valuation(self.component(p), p)

    @cached_property
    def valuations(self) -> dict[int, int]:
        """Nonzero p-adic valuations (cached; do not mutate)."""
        out = {}
        for p, c in self.finite.items():
            v = arith.valuation(c, p)
            if v:
                out[p] = v
        return out

    def valuation_vector(self) -> dict[int, int]:
        """Nonzero p-adic valuations; unlisted primes carry unit components."""
        return dict(self.valuations)

    @property
    def is_principal(self) -> bool:
        return self.background != 1

    def __mul__(self, other: "Idele") -> "Idele":
        return idele_mul(self, other)

    def __pow__(self, m: int) -> "Idele":
        return idele_pow(self, m)

    def __str__(self):
        return format_idele(self)


IDENTITY = Idele(Fraction(1))


def idele_mul(x: Idele, y: Idele) -> Idele:
    primes = set(x.finite) | set(y.finite)
    comps = {p: x.component(p) * y.component(p) for p in primes}
    return Idele(x.real * y.real, comps, x.background * y.background)


def idele_inv(x: Idele) -> Idele:
    return Idele(1 / x.real, {p: 1 / c for p, c in x.finite.items()}, 1 / x.background)


def idele_pow(x: Idele, m: int) -> Idele:
    if m < 0:
        return idele_pow(idele_inv(x), -m)
    return Idele(x.real**m, {p: c**m for p, c in x.finite.items()}, x.background**m)


def idele_norm(x: Idele) -> Fraction:
    """|x| = |x_inf| * prod_p |x_p|_p, exactly."""
    num, den = abs(x.real.numerator), x.real.denominator
    for p, v in x.valuations.items():
        if v > 0:
            den *= p**v
        else:
            num *= p ** (-v)
    return Fraction(num, den)


def tau(r: Fraction | int) -> Idele:
    """Diagonal embedding of a nonzero rational."""
    r = Fraction(r)
    if r == 0:
        raise DomainError("tau(0) is not an idele")
    return Idele(r, {}, r)


@lru_cache(maxsize=4096)
def alpha_p(p: int) -> Idele:
    """The Wilson idele at p: p at the real place and at p, 1 elsewhere."""
    if not arith.is_prime(p):
        raise DomainError(f"alpha_p needs a prime, got {p}")
    return Idele(Fraction(p), {p: Fraction(p)})


@lru_cache(maxsize=1)
def alpha_infty() -> Idele:
    return Idele(Fraction(-1))


def alpha(v: Place) -> Idele:
    return alpha_infty() if v == INF else alpha_p(v)


@lru_cache(maxsize=8192)
def alpha_power(v: Place, m: int) -> Idele:
    """alpha_v ** m, the idele of a Wilson insertion of multiplicity m."""
    return idele_pow(alpha(v), m)


def format_idele(x: Idele) -> str:
    parts = [f"real={x.real}"]
    parts += [f"{p}={c}" for p, c in x.finite.items()]
    if x.background != 1:
        parts.append(f"else={x.background}")
    return ";".join(parts)


def parse_idele(text: str) -> Idele:
    """Parse ``real=<rat>;p1=<rat>;...`` (optional ``else=<rat>`` background)."""
    real = Fraction(1)
    comps = {}
    bg = Fraction(1)
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        if "=" not in chunk:
            raise DomainError(f"bad idele component {chunk!r}")
        key, val = (s.strip() for s in chunk.split("=", 1))
        try:
            value = Fraction(val)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad rational {val!r}") from exc
        if key.lower() in ("real", "inf"):
            real = value
        elif key.lower() == "else":
            bg = value
        else:
            p = parse_place(key)
            if p == INF:
                real = value
            elif p in comps:
                raise DomainError(f"duplicate component at {p}")
            else:
                comps[p] = value
    return Idele(real, comps, bg)
