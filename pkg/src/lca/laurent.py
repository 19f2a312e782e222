"""Laurent polynomials over Z_m, i.e. the ring R_m = Z_m[X, X^-1].

Polynomials are sparse maps ``exponent -> coefficient`` with coefficients kept in
``[0, m)``; a zero coefficient is never stored, so the stored key set *is* the
support and two polynomials are equal iff their maps are.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, ModulusMismatch
from .modring import Modulus, as_modulus


class LaurentPoly:
    __slots__ = ("modulus", "_terms", "_hash")

    def __init__(self, modulus: int | Modulus, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        mod = as_modulus(modulus)
        m = mod.m
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for n, c in items:
            acc[int(n)] = (acc.get(int(n), 0) + int(c)) % m
        self.modulus = mod
        self._terms = {n: c for n, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, mod: Modulus, terms: dict[int, int]) -> LaurentPoly:
        # caller guarantees canonical, nonzero coefficients
        obj = cls.__new__(cls)
        obj.modulus = mod
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, modulus: int | Modulus) -> LaurentPoly:
        return cls._raw(as_modulus(modulus), {})

    @classmethod
    def one(cls, modulus: int | Modulus) -> LaurentPoly:
        return cls.monomial(modulus, 0)

    @classmethod
    def monomial(cls, modulus: int | Modulus, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls(modulus, {exponent: coeff})

    @property
    def m(self) -> int:
        return self.modulus.m

    @property
    def terms(self) -> Mapping[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        """Terms in increasing exponent order."""
        for n in sorted(self._terms):
            yield n, self._terms[n]

    def coeff(self, n: int) -> int:
        return self._terms.get(n, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> frozenset[int]:
        return frozenset(self._terms)

    def unit_support(self) -> frozenset[int]:
        """supp*: exponents whose coefficient is coprime to m."""
        m = self.m
        return frozenset(n for n, c in self._terms.items() if gcd(c, m) == 1)

    def min_exponent(self) -> int:
        if not self._terms:
            raise DomainError("the zero polynomial has no support")
        return min(self._terms)

    def max_exponent(self) -> int:
        if not self._terms:
            raise DomainError("the zero polynomial has no support")
        return max(self._terms)

    def reduced(self) -> LaurentPoly:
        """A*: keep exactly the unit coefficients."""
        m = self.m
        return LaurentPoly._raw(self.modulus, {n: c for n, c in self._terms.items() if gcd(c, m) == 1})

    def reduced_degree(self) -> int:
        """deg*(A) = deg(A_+) + deg(A_-), computed as ``max(0, r') - min(0, l')`` on supp*."""
        units = self.unit_support()
        if not units:
            return 0
        return max(0, max(units)) - min(0, min(units))

    def times_monomial(self, exponent: int, coeff: int = 1) -> LaurentPoly:
        m = self.m
        return LaurentPoly(self.modulus, ((n + exponent, c * coeff % m) for n, c in self._terms.items()))

    def _check(self, other: LaurentPoly) -> None:
        if other.modulus.m != self.modulus.m:
            raise ModulusMismatch(self.modulus.m, other.modulus.m)

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly(self.modulus, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        m = self.m
        out = dict(self._terms)
        for n, c in other._terms.items():
            s = (out.get(n, 0) + c) % m
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        return LaurentPoly._raw(self.modulus, out)

    __radd__ = __add__

    def __neg__(self):
        m = self.m
        return LaurentPoly._raw(self.modulus, {n: m - c for n, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        m = self.m
        acc: dict[int, int] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                acc[a + b] = acc.get(a + b, 0) + ca * cb
        return LaurentPoly._raw(self.modulus, {n: c % m for n, c in acc.items() if c % m})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise DomainError("negative powers need an explicit inverse; see structure.invert")
        result = LaurentPoly.one(self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.modulus.m == other.modulus.m and self._terms == other._terms
        if isinstance(other, int):
            return self == LaurentPoly(self.modulus, {0: other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.modulus.m, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r}, m={self.m})"

    def __str__(self):
        return format_poly(self)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def poly_pow(a: LaurentPoly, n: int) -> LaurentPoly:
    return a**n


def reduced(a: LaurentPoly) -> LaurentPoly:
    return a.reduced()


def reduced_degree(a: LaurentPoly) -> int:
    return a.reduced_degree()


def project_poly(a: LaurentPoly, i: int) -> LaurentPoly:
    """Coefficientwise reduction to the i-th primary component ``R_{m_i}``."""
    target = a.modulus.component(i)
    return LaurentPoly(target, a._terms)


def crt_combine_poly(parts: Sequence[LaurentPoly], modulus: int | Modulus) -> LaurentPoly:
    """The unique polynomial over Z_m whose primary projections are ``parts``."""
    mod = as_modulus(modulus)
    if len(parts) != len(mod.factors):
        raise DomainError(f"Z_{mod.m} has {len(mod.factors)} components, got {len(parts)} parts")
    acc: dict[int, int] = {}
    for part, e, mi in zip(parts, mod.idempotents, mod.primary_moduli):
        if part.m != mi:
            raise ModulusMismatch(mi, part.m)
        for n, c in part._terms.items():
            acc[n] = acc.get(n, 0) + e * c
    return LaurentPoly(mod, acc)


# -- text form ---------------------------------------------------------------


def format_poly(a: LaurentPoly) -> str:
    """Render as ``c*X^n + ...`` with exponents descending; coefficient 1 is implicit."""
    if a.is_zero():
        return "0"
    parts = []
    for n in sorted(a._terms, reverse=True):
        c = a._terms[n]
        if n == 0:
            parts.append(str(c))
            continue
        mono = "X" if n == 1 else f"X^{n}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<x>[Xx])|(?P<op>\*\*|[-+*^()]))")


class PolyParseError(DomainError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.column = pos + 1


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolyParseError(f"unexpected character {text[start]!r}", text, start)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(text: str, modulus: int | Modulus) -> LaurentPoly:
    """Parse the grammar produced by :func:`format_poly`.

    Accepts ``+``/``-`` between terms, an optional ``*`` before ``X``,
    ``^`` or ``**`` for powers and signed exponents, e.g. ``"2 - X^-1 + 3X^2"``.
    Repeated exponents are summed.
    """
    mod = as_modulus(modulus)
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = toks[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise PolyParseError(f"expected {want}, found {tok[1] or 'end of input'!r}", text, tok[2])
        i += 1
        return tok

    def exponent() -> int:
        sign = 1
        paren = False
        if peek()[1] == "(":
            take()
            paren = True
        while peek()[1] in "+-" and peek()[0] == "op":
            if take()[1] == "-":
                sign = -sign
        val = int(take("int")[1])
        if paren:
            take("op", ")")
        return sign * val

    terms: list[tuple[int, int]] = []
    sign = 1
    if peek()[1] in ("+", "-"):
        sign = -1 if take()[1] == "-" else 1
    while True:
        coeff = 1
        exp = 0
        tok = peek()
        if tok[0] == "int":
            coeff = int(take()[1])
            if peek()[1] == "*":
                take()
                if peek()[0] != "x":
                    raise PolyParseError("expected X after '*'", text, peek()[2])
        if peek()[0] == "x":
            take()
            exp = 1
            if peek()[1] in ("^", "**"):
                take()
                exp = exponent()
        elif tok[0] != "int":
            raise PolyParseError(f"expected a term, found {tok[1] or 'end of input'!r}", text, tok[2])
        terms.append((exp, sign * coeff))
        tok = peek()
        if tok[0] == "end":
            break
        if tok[1] not in ("+", "-"):
            raise PolyParseError(f"expected '+' or '-', found {tok[1]!r}", text, tok[2])
        sign = -1 if take()[1] == "-" else 1
    return LaurentPoly(mod, terms)
