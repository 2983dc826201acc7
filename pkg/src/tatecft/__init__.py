"""Tate's thesis over Q as executable arithmetic: ideles, Hecke characters,
zeta integrals, insertion amplitudes, S-duality reciprocity checks and a
cubic Kummer obstruction over Q(zeta_3)."""

from .errors import ConfigError, DomainError, PoleError, RamifiedCollision, RamifiedPlace, WildPlace

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DomainError",
    "PoleError",
    "RamifiedCollision",
    "RamifiedPlace",
    "WildPlace",
]
