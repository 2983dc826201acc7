"""Tate zeta integrals over Q for the trivial and quadratic characters.

Conventions: d^x x gives the local units volume 1 (on R, d^x x = dx/|x|),
dx is self-dual for the standard additive character psi, and psi_inf(x) =
exp(-2 pi i x). The Haar measures never appear as objects; they are baked
into the closed-form local factors below.

Analytic continuation is done only through the completed L-function, by the
theta-function splitting of its Mellin integral into two incomplete-gamma
series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import mpmath
import numpy as np

from . import arith
from .adele import Idele
from .errors import DomainError, PoleError

GAUSSIAN = "gaussian"
SIGNED_GAUSSIAN = "signed_gaussian"
PROFILES = (GAUSSIAN, SIGNED_GAUSSIAN)

MAX_TERMS = 100_000


def _as_complex(s) -> complex:
    return complex(s)


def _is_integral(s) -> bool:
    return isinstance(s, (int, Fraction)) and not isinstance(s, bool) and Fraction(s).denominator == 1


@dataclass(frozen=True)
class TestFunction:
    """Factorizable Schwartz-Bruhat function on the adeles of Q.

    At p the factor is the indicator of p^{n_p} Z_p (absent prime: n_p = 0).
    At the real place it is g(scale * x) with g(x) = exp(-pi x^2) or
    x exp(-pi x^2).
    """

    __test__ = False  # not a pytest class

    finite_levels: Mapping[int, int] = field(default_factory=dict)
    arch_profile: str = GAUSSIAN
    arch_scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.arch_profile not in PROFILES:
            raise DomainError(f"unknown archimedean profile {self.arch_profile!r}")
        levels = {}
        for p, n in sorted(self.finite_levels.items()):
            if not arith.is_prime(p):
                raise DomainError(f"level given at non-prime {p}")
            if n:
                levels[p] = int(n)
        scale = Fraction(self.arch_scale)
        if scale == 0:
            raise DomainError("archimedean scale must be nonzero")
        object.__setattr__(self, "finite_levels", levels)
        object.__setattr__(self, "arch_scale", scale)

    def __hash__(self):
        return hash((tuple(self.finite_levels.items()), self.arch_profile, self.arch_scale))

    def translate(self, x: Idele) -> "TestFunction":
        """The function y -> f(x y)."""
        levels = dict(self.finite_levels)
        for p, v in x.valuation_vector().items():
            levels[p] = levels.get(p, 0) - v
        return TestFunction(levels, self.arch_profile, self.arch_scale * x.real)


def standard_test_function(D: int = 1) -> TestFunction:
    """Unit levels everywhere, archimedean profile matched to the parity of chi_D."""
    return TestFunction({}, SIGNED_GAUSSIAN if D < 0 else GAUSSIAN)


def local_zeta_finite(p: int, level: int, chi_p: int, s):
    """Integral of chi_p(x)|x|^s d^x x over p^level Z_p \\ {0}.

    Equals (chi_p p^-s)^level / (1 - chi_p p^-s). Integral ``s`` gives an exact
    Fraction; anything else is evaluated in complex floating point.
    """
    if not arith.is_prime(p):
        raise DomainError(f"not a prime: {p}")
    if chi_p not in (1, -1):
        raise DomainError(f"unramified local character value must be +-1, got {chi_p}")
    if _is_integral(s):
        t = chi_p * Fraction(p) ** (-int(s))
    else:
        t = chi_p * complex(p) ** (-_as_complex(s))
    if abs(t) == 1:
        raise PoleError(f"local zeta at p={p} diverges for s={s}")
    return t**level / (1 - t)


def gamma_complex(z) -> complex:
    """Gamma function for complex argument."""
    z = _as_complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    return complex(mpmath.gamma(z))


def _mp(s) -> mpmath.mpc:
    s = _as_complex(s)
    return mpmath.mpc(s.real, s.imag)


def local_zeta_real(profile: str, s, odd: Optional[bool] = None, scale=1) -> complex:
    """Integral of g(scale x) sgn(x)^odd |x|^s d^x x over R^x.

    With ``odd`` left unset the profile is paired with its natural character
    (Gaussian with the trivial one, signed Gaussian with sgn). Mismatched
    parity integrates to zero.
    """
    if profile not in PROFILES:
        raise DomainError(f"unknown profile {profile!r}")
    natural_odd = profile == SIGNED_GAUSSIAN
    if odd is None:
        odd = natural_odd
    if odd != natural_odd:
        return 0j
    shift = 1 if odd else 0
    arg = (_as_complex(s) + shift) / 2
    base = complex(math.pi) ** (-arg) * gamma_complex(arg)
    scale = Fraction(scale)
    if scale == 0:
        raise DomainError("scale must be nonzero")
    # substitution z = scale * x
    factor = complex(abs(float(scale))) ** (-_as_complex(s))
    if odd and scale < 0:
        factor = -factor
    return base * factor


def _check_disc(D: int) -> int:
    if D != 1 and not arith.is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not 1 or a fundamental discriminant")
    return 0 if D > 0 else 1


def _upper_gamma_bound(sigma: float, y: float) -> float:
    # |Gamma(c, y)| <= Gamma(Re c, y) <= k y^(sigma-1) e^-y, with k = 1 for
    # sigma <= 1 and k = 2 once y >= 2 (sigma - 1)
    if sigma <= 1:
        return y ** (sigma - 1) * math.exp(-y)
    if y < 2 * (sigma - 1):
        return math.inf
    return 2 * y ** (sigma - 1) * math.exp(-y)


def _theta_series(D: int, s: complex, tol: float, split: float):
    """Both incomplete-gamma halves of the Mellin integral, summed over n >= 1."""
    q = abs(D)
    a = 0 if D > 0 else 1
    s_mp = _mp(s)
    c1 = (s_mp + a) / 2
    c2 = (1 - s_mp + a) / 2
    sig1, sig2 = float(c1.real), float(c2.real)
    total = mpmath.mpc(0)
    prev_bound = math.inf
    for n in range(1, MAX_TERMS):
        chi = 1 if D == 1 else arith.kronecker(D, n)
        x = mpmath.pi * n * n / q
        y1, y2 = float(x) * split, float(x) / split
        if chi:
            term = x ** (-c1) * mpmath.gammainc(c1, x * split) + x ** (-c2) * mpmath.gammainc(c2, x / split)
            total += chi * n**a * term
        xf = float(x)
        bound = n**a * (
            xf ** (-sig1) * _upper_gamma_bound(sig1, y1) + xf ** (-sig2) * _upper_gamma_bound(sig2, y2)
        )
        # Once consecutive bounds shrink by at least half the tail is dominated
        # by a geometric series: tail <= 2 * bound.
        if bound < tol / 4 and bound <= prev_bound / 2:
            return total
        prev_bound = bound
    raise ArithmeticError(f"theta series did not converge within {MAX_TERMS} terms")


def completed_L(D: int, s, tol: float = 1e-12, split: float = 1.0) -> complex:
    """Lambda(s, chi_D) = (|D|/pi)^((s+a)/2) Gamma((s+a)/2) L(s, chi_D).

    D = 1 gives the completed Riemann zeta function, which has poles at 0 and 1.
    ``split`` is the point where the Mellin integral is cut; the value does not
    depend on it, and choosing split != 1 breaks the manifest s <-> 1-s
    symmetry of the series (useful for honest functional-equation checks).
    """
    if tol < 1e-12:
        raise DomainError(f"tol must be >= 1e-12, got {tol}")
    if split <= 0:
        raise DomainError("split point must be positive")
    _check_disc(D)
    s = _as_complex(s)
    with mpmath.workdps(30):
        if D == 1:
            if s == 0 or s == 1:
                raise PoleError(f"completed zeta has a pole at s={s.real:g}")
            s_mp = _mp(s)
            polar = mpmath.power(split, (s_mp - 1) / 2) / (s_mp - 1) - mpmath.power(split, s_mp / 2) / s_mp
            return complex(polar + _theta_series(1, s, tol / 2, split))
        return complex(_theta_series(D, s, tol, split))


def gamma_factor(D: int, s) -> complex:
    """(|D|/pi)^((s+a)/2) Gamma((s+a)/2); zero-safe via the reciprocal gamma."""
    a = 0 if D > 0 else 1
    c = (_mp(s) + a) / 2
    return complex(mpmath.power(abs(D) / mpmath.pi, c) * mpmath.gamma(c))


def dirichlet_L(D: int, s, tol: float = 1e-12) -> complex:
    """L(s, chi_D) (or zeta(s) for D = 1) recovered from the completed function."""
    _check_disc(D)
    s = _as_complex(s)
    a = 0 if D > 0 else 1
    lam = completed_L(D, s, tol)
    with mpmath.workdps(30):
        c = (_mp(s) + a) / 2
        inv = mpmath.power(abs(D) / mpmath.pi, -c) * mpmath.rgamma(c)
        return complex(lam * inv)


def functional_eq_residual(D: int, s, tol: float = 1e-12, split: float = 1.3) -> float:
    """|Lambda(s) - Lambda(1 - s)| with epsilon = 1 for real characters.

    Both sides use the same non-central split point, so the two series are
    genuinely different sums and agreement tests the theta inversion law.
    """
    s = _as_complex(s)
    return abs(completed_L(D, s, tol, split) - completed_L(D, 1 - s, tol, split))


def _character_value(D: int, p: int) -> int:
    if D == 1:
        return 1
    return arith.kronecker(D, p)


def global_zeta(f: TestFunction, D: int, s, tol: float = 1e-12) -> complex:
    """z(s, chi_D; f) as the completed L-value times local corrections.

    The standard function (unit levels, parity-matched Gaussian) gives exactly
    Lambda(s, chi_D); other levels and archimedean profiles rescale it place by
    place.
    """
    _check_disc(D)
    odd = D < 0
    ramified = {p for p, _ in arith.factorize(abs(D))}
    value = completed_L(D, s, tol)
    for p, n in f.finite_levels.items():
        if p in ramified:
            raise DomainError(f"test-function level at ramified prime {p}")
        chi = _character_value(D, p)
        value *= complex(local_zeta_finite(p, n, chi, s)) / complex(local_zeta_finite(p, 0, chi, s))
    default = SIGNED_GAUSSIAN if odd else GAUSSIAN
    if f.arch_profile != default or f.arch_scale != 1:
        value *= local_zeta_real(f.arch_profile, s, odd, f.arch_scale) / local_zeta_real(default, s, odd)
    return value


@dataclass
class FourierCheck:
    a: float
    residual: float
    unscaled_residual: float
    closed_form_residual: float
    prefactor: float


def _gaussian_ft(scale: float, xi: np.ndarray) -> np.ndarray:
    """Trapezoid quadrature of int exp(-pi (scale y)^2) exp(2 pi i xi y) dy."""
    span = abs(scale)
    xi_max = float(np.max(np.abs(xi))) if xi.size else 0.0
    half_width = 7.0 / span + 1.0
    # aliasing error ~ exp(-pi ((1/h - xi_max) / scale)^2), tiny for this h
    h = 1.0 / (2.0 * (xi_max + 7.0 * span))
    y = np.arange(-half_width, half_width + h / 2, h)
    fy = np.exp(-np.pi * (scale * y) ** 2)
    phase = np.exp(2j * np.pi * np.outer(xi, y))
    return (phase @ fy) * h


def fourier_scaling_check(a, samples: Optional[Sequence[float]] = None) -> FourierCheck:
    """Check FT[f(a .)](x) = |a|^-1 FT[f](x / a) for the real-place Gaussian.

    Both sides are computed by quadrature. ``unscaled_residual`` drops the
    |a|^-1 factor; it is nonzero unless |a| = 1, which is why only norm-one
    ideles pass through the Fourier transform unchanged.
    """
    a = float(Fraction(a)) if isinstance(a, (str, Fraction)) else float(a)
    if a == 0:
        raise DomainError("scaling factor must be nonzero")
    xi = np.linspace(-3.0, 3.0, 61) if samples is None else np.asarray(samples, dtype=float)
    lhs = _gaussian_ft(a, xi)
    base = _gaussian_ft(1.0, xi / a)
    prefactor = 1.0 / abs(a)
    closed = np.exp(-np.pi * (xi / a) ** 2) * prefactor
    return FourierCheck(
        a=a,
        residual=float(np.max(np.abs(lhs - prefactor * base))),
        unscaled_residual=float(np.max(np.abs(lhs - base))),
        closed_form_residual=float(np.max(np.abs(lhs - closed))),
        prefactor=prefactor,
    )


def fourier_prefactor(x: Idele) -> Fraction:
    """prod_v |x_v|_v^-1, the global Jacobian of y -> x y on the adeles."""
    out = 1 / abs(x.real)
    for p, c in x.finite.items():
        out *= Fraction(p) ** arith.valuation(c, p)
    return out
