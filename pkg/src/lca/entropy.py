"""Closed-form algebraic entropy of linear CA.

For ``m = p_1^k_1 ... p_h^k_h`` the entropy of ``S`` is
``sum_i deg(S^(i)) * log(p_i^k_i)`` where ``S^(i)`` are the primary components.
Values are kept symbolically as ``(m_i, d_i)`` pairs; two values are equal iff
the integers ``prod m_i^d_i`` agree, so no comparison ever touches a float.
The natural logarithm is the unit of :attr:`EntropyValue.nats`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

from .ca import LinearCA
from .modring import Modulus, as_modulus
from .structure import decompose, degree


@total_ordering
@dataclass(frozen=True, eq=False)
class EntropyValue:
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(b), int(d)) for b, d in self.terms))
        for b, d in self.terms:
            if b < 1 or d < 0:
                raise ValueError(f"invalid entropy term ({b}, {d})")

    @classmethod
    def of(cls, terms: Iterable[tuple[int, int]]) -> EntropyValue:
        return cls(tuple(terms))

    @property
    def exponential(self) -> int:
        """``prod m_i^d_i``: the exact growth rate whose log is the entropy."""
        out = 1
        for b, d in self.terms:
            out *= b**d
        return out

    @property
    def nats(self) -> float:
        return math.fsum(d * math.log(b) for b, d in self.terms)

    def is_zero(self) -> bool:
        return self.exponential == 1

    def __eq__(self, other):
        if not isinstance(other, EntropyValue):
            return NotImplemented
        return self.exponential == other.exponential

    def __lt__(self, other):
        if not isinstance(other, EntropyValue):
            return NotImplemented
        return self.exponential < other.exponential

    def __hash__(self):
        return hash(self.exponential)

    def __add__(self, other: EntropyValue) -> EntropyValue:
        return EntropyValue(self.terms + other.terms)

    def __mul__(self, k: int) -> EntropyValue:
        if k < 0:
            raise ValueError("entropy can only be scaled by k >= 0")
        return EntropyValue(tuple((b, d * k) for b, d in self.terms))

    __rmul__ = __mul__

    def as_dict(self) -> dict:
        return {"terms": [list(t) for t in self.terms], "nats": self.nats}

    def __str__(self):
        parts = [f"{d}*log({b})" if d != 1 else f"log({b})" for b, d in self.terms if d]
        return " + ".join(parts) or "0"


def algebraic_entropy(S: LinearCA) -> EntropyValue:
    comps = decompose(S).components
    return EntropyValue(tuple((mi, degree(c)) for mi, c in zip(S.modulus.primary_moduli, comps)))


def topological_entropy_of_dual(S: LinearCA) -> EntropyValue:
    """Entropy of the automaton with the same coefficients on ``Z_m^Z``.

    The dual of ``S`` is the reflected rule, which is conjugate to ``S``, so the
    value coincides with :func:`algebraic_entropy`.
    """
    return algebraic_entropy(S)


def shift_equivalent_exponent(S: LinearCA) -> int | None:
    """The ``n >= 0`` with ``h(S) == h(sigma^n)``, if any: all component degrees equal ``n``."""
    degrees = {d for _, d in algebraic_entropy(S).terms}
    if len(degrees) == 1:
        return degrees.pop()
    return None


def entropy_of_shift(modulus: int | Modulus, n: int) -> EntropyValue:
    mod = as_modulus(modulus)
    return EntropyValue(tuple((mi, abs(n)) for mi in mod.primary_moduli))
