"""Exact algebra, classification and entropy of one-dimensional linear cellular automata over Z_m."""

from .ca import (
    FiniteConfiguration,
    LinearCA,
    apply,
    compose,
    from_poly,
    pairing,
    power,
    reflect,
    reflect_config,
    shift,
    to_poly,
)
from .entropy import (
    EntropyValue,
    algebraic_entropy,
    entropy_of_shift,
    shift_equivalent_exponent,
    topological_entropy_of_dual,
)
from .errors import (
    BudgetExceeded,
    CompositeModulus,
    DomainError,
    LCAError,
    ModulusMismatch,
    NotAUnit,
    NotInvertible,
)
from .laurent import LaurentPoly, crt_combine_poly, parse_poly, project_poly
from .modring import Modulus, Residue, crt_combine, factorize, gcd_with_m, invert_unit, project
from .structure import (
    Classification,
    PrimaryDecomposition,
    classify,
    decompose,
    degree,
    invert,
    permutivity,
    shift_power_identity,
)

__version__ = "0.1.0"
