"""One-dimensional linear cellular automata over Z_m.

A rule ``lambda`` (finitely supported ``i -> lambda_i``) acts on a finite
configuration ``c`` by

    S(c)_n = sum_i lambda_i * c_{n+i}.

The same coefficient data describes the automaton on all of ``Z_m^Z``; only its
action on finite configurations is ever computed.

Sign convention: the polynomial of a rule is ``A_S(X) = sum_i lambda_i X^{-i}``.
:func:`to_poly` and :func:`from_poly` are the only places where it is applied.
"""

from __future__ import annotations

from math import gcd
from typing import Any, Iterable, Mapping

from .errors import DomainError, ModulusMismatch
from .laurent import LaurentPoly
from .modring import Modulus, Residue, as_modulus


def _canonical(mod: Modulus, data: Mapping[int, int] | Iterable[tuple[int, int]]) -> dict[int, int]:
    m = mod.m
    items = data.items() if isinstance(data, Mapping) else data
    acc: dict[int, int] = {}
    for k, v in items:
        acc[int(k)] = (acc.get(int(k), 0) + int(v)) % m
    return {k: v for k, v in acc.items() if v}


class _Sparse:
    """Shared machinery for finitely supported maps Z -> Z_m."""

    __slots__ = ("modulus", "_data")

    def __init__(self, modulus: int | Modulus, data: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        self.modulus = as_modulus(modulus)
        self._data = _canonical(self.modulus, data)

    @classmethod
    def _raw(cls, mod: Modulus, data: dict[int, int]):
        obj = cls.__new__(cls)
        obj.modulus = mod
        obj._data = data
        return obj

    @property
    def m(self) -> int:
        return self.modulus.m

    def __getitem__(self, i: int) -> int:
        return self._data.get(i, 0)

    def items(self):
        for k in sorted(self._data):
            yield k, self._data[k]

    def as_dict(self) -> dict[int, int]:
        return dict(self._data)

    def support(self) -> frozenset[int]:
        return frozenset(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def _check(self, other) -> None:
        if other.modulus.m != self.modulus.m:
            raise ModulusMismatch(self.modulus.m, other.modulus.m)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.modulus.m == other.modulus.m and self._data == other._data

    def __hash__(self):
        return hash((type(self).__name__, self.modulus.m, frozenset(self._data.items())))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._check(other)
        out = dict(self._data)
        for k, v in other._data.items():
            out[k] = out.get(k, 0) + v
        return type(self)(self.modulus, out)

    def __neg__(self):
        m = self.m
        return type(self)._raw(self.modulus, {k: m - v for k, v in self._data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a: int):
        m = self.m
        return type(self)(self.modulus, {k: v * a % m for k, v in self._data.items()})


class FiniteConfiguration(_Sparse):
    """A finitely supported configuration ``c: Z -> Z_m``."""

    __slots__ = ()

    @classmethod
    def unit(cls, modulus: int | Modulus, k: int, value: int = 1) -> FiniteConfiguration:
        """The configuration ``value * e_k``."""
        return cls(modulus, {k: value})

    @classmethod
    def zero(cls, modulus: int | Modulus) -> FiniteConfiguration:
        return cls._raw(as_modulus(modulus), {})

    def in_window(self, lo: int, hi: int) -> bool:
        """Membership in ``P_{lo,hi}``, the configurations supported in ``[lo, hi]``."""
        return all(lo <= k <= hi for k in self._data)

    def window(self, lo: int, hi: int) -> list[int]:
        return [self._data.get(k, 0) for k in range(lo, hi + 1)]

    def __repr__(self):
        cells = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"FiniteConfiguration(m={self.m}, {{{cells}}})"


class LinearCA(_Sparse):
    """The linear cellular automaton with local rule ``f(x_l..x_r) = sum lambda_i x_i``."""

    __slots__ = ()

    @classmethod
    def identity(cls, modulus: int | Modulus) -> LinearCA:
        return cls(modulus, {0: 1})

    @classmethod
    def zero(cls, modulus: int | Modulus) -> LinearCA:
        return cls._raw(as_modulus(modulus), {})

    @property
    def lam(self) -> dict[int, int]:
        return dict(self._data)

    @property
    def l(self) -> int | None:  # noqa: E743
        return min(self._data) if self._data else None

    @property
    def r(self) -> int | None:
        return max(self._data) if self._data else None

    def unit_support(self) -> frozenset[int]:
        """supp*(lambda): indices whose coefficient is coprime to m."""
        m = self.m
        return frozenset(i for i, v in self._data.items() if gcd(v, m) == 1)

    def coefficient(self, i: int) -> Residue:
        return self.modulus.residue(self._data.get(i, 0))

    def __call__(self, c: FiniteConfiguration) -> FiniteConfiguration:
        return apply(self, c)

    def __mul__(self, other):
        if isinstance(other, LinearCA):
            return compose(self, other)
        return NotImplemented

    def __pow__(self, n: int) -> LinearCA:
        return power(self, n)

    def __repr__(self):
        lam = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"LinearCA(m={self.m}, {{{lam}}})"


def to_poly(S: LinearCA) -> LaurentPoly:
    """``A_S(X) = sum_i lambda_i X^{-i}``."""
    return LaurentPoly._raw(S.modulus, {-i: v for i, v in S._data.items()})


def from_poly(A: LaurentPoly) -> LinearCA:
    return LinearCA._raw(A.modulus, {-n: c for n, c in A.items()})


def apply(S: LinearCA, c: FiniteConfiguration) -> FiniteConfiguration:
    """Direct sparse evaluation of ``S(c)_n = sum_i lambda_i c_{n+i}``."""
    S._check(c)
    m = S.m
    acc: dict[int, int] = {}
    for j, cj in c._data.items():
        for i, li in S._data.items():
            acc[j - i] = acc.get(j - i, 0) + li * cj
    return FiniteConfiguration._raw(S.modulus, {n: v % m for n, v in acc.items() if v % m})


def evolve(S: LinearCA, c: FiniteConfiguration, steps: int) -> list[FiniteConfiguration]:
    """``[c, S(c), ..., S^steps(c)]``."""
    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    out = [c]
    for _ in range(steps):
        c = apply(S, c)
        out.append(c)
    return out


def compose(S1: LinearCA, S2: LinearCA) -> LinearCA:
    """``S1 o S2`` (apply ``S2`` first)."""
    S1._check(S2)
    return from_poly(to_poly(S1) * to_poly(S2))


def power(S: LinearCA, n: int) -> LinearCA:
    if n < 0:
        raise DomainError(f"power exponent must be >= 0, got {n}; use structure.invert")
    return from_poly(to_poly(S) ** n)


def shift(modulus: int | Modulus, n: int) -> LinearCA:
    """``sigma^n`` for ``n >= 0`` and ``beta^|n|`` otherwise; ``sigma`` moves cells right."""
    return LinearCA(modulus, {-n: 1})


def reflect(S: LinearCA) -> LinearCA:
    """The rule ``lambda^`` with ``lambda^_i = lambda_{-i}`` (coefficients of the dual)."""
    return LinearCA._raw(S.modulus, {-i: v for i, v in S._data.items()})


def reflect_config(c: FiniteConfiguration) -> FiniteConfiguration:
    return FiniteConfiguration._raw(c.modulus, {-k: v for k, v in c._data.items()})


def pairing(a: FiniteConfiguration, x: FiniteConfiguration) -> Residue:
    """``<a | x> = sum_n a_n x_n mod m``."""
    a._check(x)
    small, big = (a._data, x._data) if len(a._data) <= len(x._data) else (x._data, a._data)
    total = sum(v * big.get(k, 0) for k, v in small.items())
    return a.modulus.residue(total)


# -- JSON interchange ----------------------------------------------------------


def _sparse_to_dict(obj: _Sparse, key: str) -> dict[str, Any]:
    return {"m": obj.m, key: {str(k): v for k, v in obj.items()}}


def rule_to_dict(S: LinearCA) -> dict[str, Any]:
    return _sparse_to_dict(S, "lambda")


def config_to_dict(c: FiniteConfiguration) -> dict[str, Any]:
    return _sparse_to_dict(c, "cells")


def _parse_sparse(data: Any, keys: tuple[str, ...], what: str, reduce: bool) -> tuple[Modulus, dict[int, int]]:
    if not isinstance(data, Mapping):
        raise DomainError(f"{what}: expected a JSON object")
    if "m" not in data:
        raise DomainError(f"{what}: missing field 'm'")
    m = data["m"]
    if isinstance(m, bool) or not isinstance(m, int):
        raise DomainError(f"{what}: field 'm' must be an integer")
    mod = as_modulus(m)
    key = next((k for k in keys if k in data), None)
    if key is None:
        raise DomainError(f"{what}: missing field {keys[0]!r}")
    body = data[key]
    if not isinstance(body, Mapping):
        raise DomainError(f"{what}: field {key!r} must be an object")
    out: dict[int, int] = {}
    for k, v in body.items():
        try:
            idx = int(str(k).strip())
        except ValueError:
            raise DomainError(f"{what}: key {k!r} in {key!r} is not a decimal integer") from None
        if isinstance(v, bool) or not isinstance(v, int):
            raise DomainError(f"{what}: value at {key}[{k!r}] must be an integer")
        if not 0 <= v < m and not reduce:
            raise DomainError(f"{what}: value {v} at {key}[{k!r}] is outside [0, {m}); pass --reduce to reduce mod m")
        out[idx] = out.get(idx, 0) + v
    return mod, out


def rule_from_dict(data: Any, reduce: bool = False) -> LinearCA:
    """Load ``{"m": 6, "lambda": {"-1": 4, "0": 3}}``."""
    mod, lam = _parse_sparse(data, ("lambda",), "rule", reduce)
    return LinearCA(mod, lam)


def config_from_dict(data: Any, reduce: bool = False) -> FiniteConfiguration:
    """Load ``{"m": 3, "cells": {"0": 1}}`` (a ``"lambda"`` key is accepted too)."""
    mod, cells = _parse_sparse(data, ("cells", "lambda"), "configuration", reduce)
    return FiniteConfiguration(mod, cells)
