"""Primary factorization, degree, classification and inversion of linear CA.

A rule over Z_m splits into components over ``Z_{m_i}`` (``m_i = p_i^k_i``) by
reducing every coefficient. Everything about injectivity and surjectivity is
decided per component by counting unit coefficients:

* ``S`` is injective iff every component has at least one unit coefficient;
* ``S`` is surjective (equivalently bijective with a CA inverse) iff every
  component has exactly one.

On ``Z_m^Z`` the roles flip: the automaton with the same coefficients is
injective iff ``S`` is surjective, and surjective iff ``S`` is injective.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .ca import LinearCA, compose, from_poly, power, shift, to_poly
from .errors import CompositeModulus, DomainError, NotInvertible
from .laurent import LaurentPoly, crt_combine_poly, project_poly
from .modring import Modulus, inverse_mod


@dataclass(frozen=True)
class PrimaryDecomposition:
    modulus: Modulus
    components: tuple[LinearCA, ...]

    def __len__(self) -> int:
        return len(self.components)

    def recombine(self) -> LinearCA:
        return from_poly(crt_combine_poly([to_poly(c) for c in self.components], self.modulus))


@dataclass(frozen=True)
class Classification:
    s_injective: bool
    s_surjective: bool
    t_injective: bool
    t_surjective: bool
    invertible_with_ca_inverse: bool
    degree: int
    component_degrees: tuple[int, ...] = field(default_factory=tuple)

    @property
    def s_bijective(self) -> bool:
        return self.s_injective and self.s_surjective

    @property
    def pre_injective(self) -> bool:
        # for linear rules, pre-injectivity of T is triviality of the finite kernel
        return self.s_injective

    def as_dict(self) -> dict:
        return {
            "s_injective": self.s_injective,
            "s_surjective": self.s_surjective,
            "t_injective": self.t_injective,
            "t_surjective": self.t_surjective,
            "invertible_with_ca_inverse": self.invertible_with_ca_inverse,
            "pre_injective": self.pre_injective,
            "degree": self.degree,
            "component_degrees": list(self.component_degrees),
        }


class Permutivity(NamedTuple):
    leftmost: bool
    rightmost: bool
    bipermutive: bool


def decompose(S: LinearCA) -> PrimaryDecomposition:
    A = to_poly(S)
    comps = tuple(from_poly(project_poly(A, i)) for i in range(len(S.modulus)))
    return PrimaryDecomposition(S.modulus, comps)


def degree(S: LinearCA) -> int:
    """deg(S): the reduced degree of ``A_S``; 0 when no coefficient is a unit."""
    return to_poly(S).reduced_degree()


def classify(S: LinearCA) -> Classification:
    comps = decompose(S).components
    unit_counts = [len(c.unit_support()) for c in comps]
    injective = all(n >= 1 for n in unit_counts)
    surjective = all(n == 1 for n in unit_counts)
    return Classification(
        s_injective=injective,
        s_surjective=surjective,
        t_injective=surjective,
        t_surjective=injective,
        invertible_with_ca_inverse=surjective,
        degree=degree(S),
        component_degrees=tuple(degree(c) for c in comps),
    )


def _invert_primary(A: LaurentPoly, p: int, k: int) -> LaurentPoly:
    """Inverse of ``A = s X^n + p B`` in ``R_{p^k}`` by a terminating Neumann series."""
    m = A.m
    (n,) = A.unit_support()
    s_inv = inverse_mod(A.coeff(n), m)
    lead_inv = LaurentPoly.monomial(A.modulus, -n, s_inv)
    # A = s X^n (1 + N) with N = s^-1 X^-n p B; N^k = 0 since p^k = 0
    nil = lead_inv * A - 1
    neg = -nil
    series = LaurentPoly.one(A.modulus)
    term = LaurentPoly.one(A.modulus)
    for _ in range(1, k):
        term = term * neg
        if term.is_zero():
            break
        series = series + term
    return lead_inv * series


def invert(S: LinearCA) -> LinearCA:
    """The CA inverse of a surjective rule, assembled component by component."""
    decomp = decompose(S)
    parts = []
    for i, (comp, (p, k)) in enumerate(zip(decomp.components, S.modulus.factors)):
        units = len(comp.unit_support())
        if units != 1:
            raise NotInvertible(i, p**k, units)
        parts.append(_invert_primary(to_poly(comp), p, k))
    return from_poly(crt_combine_poly(parts, S.modulus))


def shift_power_identity(S: LinearCA) -> tuple[int, int]:
    """For surjective ``S`` over ``Z_{p^k}`` return ``(e, n)`` with ``S^e == shift(n*e)``.

    ``e = p^(k-1) (p-1)`` and ``|n| = deg(S)``. The identity is checked on the
    exact rule data before returning.
    """
    mod = S.modulus
    if not mod.is_prime_power:
        raise CompositeModulus(mod.m)
    (p, k), = mod.factors
    units = S.unit_support()
    if len(units) != 1:
        raise NotInvertible(0, mod.m, len(units))
    e = p ** (k - 1) * (p - 1)
    (i,) = units
    n = -i  # exponent of the unit monomial in A_S
    if power(S, e) != shift(mod, n * e):
        raise AssertionError(f"shift power identity failed for {S!r}")
    return e, n


def permutivity(S: LinearCA) -> Permutivity:
    if S.is_zero():
        raise DomainError("permutivity is undefined for the zero rule")
    units = S.unit_support()
    left = S.l < 0 and S.l in units
    right = S.r > 0 and S.r in units
    return Permutivity(left, right, left and right)


def is_identity(S: LinearCA) -> bool:
    return S == LinearCA.identity(S.modulus)


def check_inverse(S: LinearCA, S_inv: LinearCA) -> bool:
    return is_identity(compose(S, S_inv)) and is_identity(compose(S_inv, S))
