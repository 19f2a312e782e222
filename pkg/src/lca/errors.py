"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class LCAError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LCAError, ValueError):
    """An argument lies outside the domain of an operation."""


class ModulusMismatch(DomainError):
    def __init__(self, m1: int, m2: int):
        super().__init__(f"modulus mismatch: Z_{m1} vs Z_{m2}")
        self.moduli = (m1, m2)


class NotAUnit(DomainError):
    def __init__(self, value: int, m: int, gcd: int):
        super().__init__(f"{value} is not a unit in Z_{m} (gcd with {m} is {gcd})")
        self.value = value
        self.m = m
        self.gcd = gcd


class CompositeModulus(DomainError):
    def __init__(self, m: int):
        super().__init__(f"operation requires a prime-power modulus, got {m}")
        self.m = m


class NotInvertible(LCAError):
    """A rule has no inverse; ``component`` names the first failing primary part."""

    def __init__(self, component: int, modulus: int, unit_support_size: int):
        super().__init__(
            f"rule is not invertible: primary component {component} (Z_{modulus}) "
            f"has {unit_support_size} unit coefficients, exactly 1 is required"
        )
        self.component = component
        self.modulus = modulus
        self.unit_support_size = unit_support_size


class BudgetExceeded(LCAError):
    """A brute-force computation would exceed its resource limit.

    ``completed`` carries whatever partial result was finished before the limit
    was hit (for trajectory tables: the sizes for the steps already done).
    """

    def __init__(self, message: str, limit: int, completed=None):
        super().__init__(message)
        self.limit = limit
        self.completed = completed
