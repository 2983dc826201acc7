"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(ArithmeticError):
    """Evaluation requested at a pole or on a divergence locus."""


class RamifiedCollision(ValueError):
    """A Wilson-type idele component meets a ramified place of a character."""


class RamifiedPlace(DomainError):
    """A prime that must be unramified divides the discriminant."""


class WildPlace(DomainError):
    """A tame-only computation was asked about the prime above 3."""


class ConfigError(ValueError):
    """An insertion configuration is invalid or cannot be dualized."""
