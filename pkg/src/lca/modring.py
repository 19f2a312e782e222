"""Exact arithmetic in Z_m together with its primary (CRT) decomposition.

A :class:`Modulus` carries the factorization ``m = p_1^k_1 ... p_h^k_h`` and the
orthogonal idempotents ``e_i`` with ``e_i = 1 mod p_i^k_i`` and ``e_i = 0`` modulo
every other primary factor. Residues are always stored canonically in ``[0, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Sequence

from .errors import DomainError, ModulusMismatch, NotAUnit

MAX_MODULUS = 2**63 - 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)`` and ``g >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _trial_division(m: int) -> list[tuple[int, int]]:
    factors = []
    n = m
    p = 2
    while p <= isqrt(n):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            factors.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return factors


@dataclass(frozen=True)
class Modulus:
    m: int
    factors: tuple[tuple[int, int], ...]
    idempotents: tuple[int, ...]

    def __repr__(self) -> str:
        return f"Modulus({self.m})"

    @property
    def primary_moduli(self) -> tuple[int, ...]:
        """The prime powers ``m_i = p_i^k_i`` in increasing order of ``p_i``."""
        return tuple(p**k for p, k in self.factors)

    @property
    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def __len__(self) -> int:
        return len(self.factors)

    def residue(self, value: int) -> Residue:
        return Residue(value % self.m, self)

    def component(self, i: int) -> Modulus:
        """The modulus ``Z_{m_i}`` of the i-th primary component."""
        self._check_index(i)
        return factorize(self.primary_moduli[i])

    def _check_index(self, i: int) -> None:
        if not 0 <= i < len(self.factors):
            raise DomainError(f"component index {i} out of range for Z_{self.m} ({len(self.factors)} components)")


@lru_cache(maxsize=1024)
def factorize(m: int) -> Modulus:
    """Factor ``m`` by trial division and build its CRT idempotents."""
    if isinstance(m, bool) or not isinstance(m, int):
        raise DomainError(f"modulus must be an integer, got {m!r}")
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    if m > MAX_MODULUS:
        raise DomainError(f"modulus must be <= 2**63 - 1, got {m}")
    factors = tuple(_trial_division(m))
    idempotents = []
    for p, k in factors:
        mi = p**k
        cof = m // mi
        # cof * inv(cof mod mi) is 1 mod mi and 0 mod every other factor
        _, inv, _ = xgcd(cof % mi, mi)
        idempotents.append((cof * inv) % m)
    return Modulus(m, factors, tuple(idempotents))


def as_modulus(m: int | Modulus) -> Modulus:
    return m if isinstance(m, Modulus) else factorize(m)


@dataclass(frozen=True)
class Residue:
    """Canonical element of Z_m."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.m:
            object.__setattr__(self, "value", self.value % self.modulus.m)

    @property
    def m(self) -> int:
        return self.modulus.m

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus.m != self.modulus.m:
                raise ModulusMismatch(self.modulus.m, other.modulus.m)
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue((self.value + v) % self.m, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue((self.value - v) % self.m, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue((v - self.value) % self.m, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue((self.value * v) % self.m, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue((-self.value) % self.m, self.modulus)

    def __pow__(self, n: int):
        if n < 0:
            return invert_unit(self) ** (-n)
        return Residue(pow(self.value, n, self.m), self.modulus)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus.m == other.modulus.m and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.m
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus.m))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.m})"


def gcd_with_m(a: Residue) -> int:
    """``(a, m)``: gcd of the canonical representative with ``m`` (``m`` for zero)."""
    return gcd(a.value, a.m)


def project(a: Residue, i: int) -> Residue:
    """Image of ``a`` in the i-th primary component ``Z_{m_i}``."""
    target = a.modulus.component(i)
    return Residue(a.value % target.m, target)


def crt_combine(parts: Sequence[Residue], modulus: int | Modulus) -> Residue:
    """Inverse of the per-component projections: ``sum e_i * parts[i] mod m``."""
    mod = as_modulus(modulus)
    if len(parts) != len(mod.factors):
        raise DomainError(f"Z_{mod.m} has {len(mod.factors)} components, got {len(parts)} parts")
    total = 0
    for part, e, mi in zip(parts, mod.idempotents, mod.primary_moduli):
        if part.m != mi:
            raise ModulusMismatch(mi, part.m)
        total += e * part.value
    return Residue(total % mod.m, mod)


def inverse_mod(value: int, m: int) -> int:
    """Inverse of ``value`` modulo ``m`` as a plain int; raises :class:`NotAUnit`."""
    g, x, _ = xgcd(value % m, m)
    if g != 1:
        raise NotAUnit(value % m, m, g)
    return x % m


def invert_unit(a: Residue) -> Residue:
    return Residue(inverse_mod(a.value, a.m), a.modulus)
