"""Brute-force verifiers that never consult the closed-form results.

* trajectory growth: exact orders of ``T_n(S, F) = F + S(F) + ... + S^{n-1}(F)``
  for windows ``F = P_{s,t}``, computed either by enumerating the subgroup
  (``closure``) or by modular row reduction of the generator lattice (``snf``);
* kernel search: exhaustive search for a nonzero finite configuration in the
  kernel, supported in ``[-w, w]``;
* preimage search: exhaustive search for a preimage supported in ``[-w, w]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .ca import FiniteConfiguration, LinearCA, apply, rule_to_dict
from .entropy import algebraic_entropy
from .errors import BudgetExceeded, DomainError
from .modring import xgcd

METHODS = ("closure", "snf", "auto")
DEFAULT_CLOSURE_BUDGET = 10**6
DEFAULT_MAX_WIDTH = 4096
DEFAULT_SEARCH_BUDGET = 5 * 10**6


def _dtype_for(m: int):
    # pairwise combinations stay below 2*m^2, which must fit in int64
    return np.int64 if m < 2**31 else object


class ModularEchelon:
    """Row-reduced generators of a submodule of ``Z_m^W`` (Howell-style).

    Every pivot row ``b`` with pivot entry ``g | m`` also has ``(m/g) * b``
    reduced into the remaining rows, so the module order is ``prod m / g``.
    That product is ``m^W / [Z^W : L]`` where ``L`` is the integer lattice
    spanned by the generators stacked on ``m * I``; the index is the product of
    the Smith invariants of that stacked matrix.
    """

    def __init__(self, m: int, lo: int = 0, hi: int = -1):
        self.m = m
        self.dtype = _dtype_for(m)
        self.lo, self.hi = lo, hi
        self.pivots: dict[int, np.ndarray] = {}  # absolute column -> row

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def extend(self, lo: int, hi: int) -> None:
        lo, hi = min(lo, self.lo), max(hi, self.hi)
        if (lo, hi) == (self.lo, self.hi):
            return
        before, after = self.lo - lo, hi - self.hi
        if self.width <= 0:
            before, after = 0, hi - lo + 1
        for j, row in self.pivots.items():
            self.pivots[j] = np.concatenate(
                [np.zeros(before, dtype=self.dtype), row, np.zeros(after, dtype=self.dtype)]
            )
        self.lo, self.hi = lo, hi

    def dense(self, c: FiniteConfiguration) -> np.ndarray:
        v = np.zeros(self.width, dtype=self.dtype)
        for k, x in c.items():
            if not self.lo <= k <= self.hi:
                raise DomainError(f"cell {k} outside ambient window [{self.lo}, {self.hi}]")
            v[k - self.lo] = x
        return v

    def add(self, vec: np.ndarray) -> None:
        m = self.m
        work = [vec % m]
        while work:
            v = work.pop()
            while True:
                nz = np.flatnonzero(v)
                if nz.size == 0:
                    break
                j = int(nz[0])
                col = j + self.lo
                c = int(v[j])
                b = self.pivots.get(col)
                if b is None:
                    g, x, _ = xgcd(c, m)
                    u = (x * v) % m
                    self.pivots[col] = u
                    work.append((v - (c // g) * u) % m)
                    work.append(((m // g) * u) % m)
                    break
                a = int(b[j])
                if c % a == 0:
                    v = (v - (c // a) * b) % m
                    continue
                g, x, y = xgcd(a, c)
                self.pivots[col] = (x * b + y * v) % m
                v = ((c // g) * b - (a // g) * v) % m
                work.append(((m // g) * self.pivots[col]) % m)

    def order(self) -> int:
        out = 1
        for col, row in self.pivots.items():
            out *= self.m // int(row[col - self.lo])
        return out

    def pivot_entries(self) -> list[int]:
        return [int(row[col - self.lo]) for col, row in sorted(self.pivots.items())]


def subgroup_order_snf(rows, m: int) -> int:
    """Order of the subgroup of ``Z_m^W`` generated by the integer ``rows``."""
    rows = np.asarray(rows, dtype=object)
    if rows.ndim != 2:
        raise DomainError("rows must be a 2-d array")
    ech = ModularEchelon(m, 0, rows.shape[1] - 1)
    for r in rows:
        ech.add(np.array([int(x) % m for x in r], dtype=ech.dtype))
    return ech.order()


def _mix64(idx: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer: deterministic per-column hash weights
    z = (idx.astype(np.uint64) + np.uint64(0x9E3779B97F4A7C15))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return (z ^ (z >> np.uint64(31))).view(np.int64)


class ClosureGroup:
    """Explicit enumeration of a subgroup of ``Z_m^W``, grown one generator at a time.

    Adding ``g`` to ``H`` produces the disjoint union of cosets ``H + k g`` for
    ``0 <= k < t`` where ``t`` is the least positive ``k`` with ``k g`` in ``H``.
    Rows are hashed for membership tests; every hash hit is confirmed by a full
    row comparison, so the count is exact.
    """

    def __init__(self, m: int, lo: int = 0, hi: int = -1, budget: int = DEFAULT_CLOSURE_BUDGET):
        if m > 255:
            raise DomainError("closure enumeration supports m <= 255")
        self.m = m
        self.budget = budget
        self.lo, self.hi = lo, hi
        self.elements = np.zeros((1, max(self.width, 0)), dtype=np.uint8)
        self.keys = np.zeros(1, dtype=np.int64)

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def order(self) -> int:
        return len(self.elements)

    def extend(self, lo: int, hi: int) -> None:
        lo, hi = min(lo, self.lo), max(hi, self.hi)
        if (lo, hi) == (self.lo, self.hi):
            return
        if self.width <= 0:
            before, after = 0, hi - lo + 1
        else:
            before, after = self.lo - lo, hi - self.hi
        self.elements = np.pad(self.elements, ((0, 0), (before, after)))
        self.lo, self.hi = lo, hi
        # zero columns contribute nothing to the keys

    def _weights(self) -> np.ndarray:
        return _mix64(np.arange(self.lo, self.hi + 1, dtype=np.int64))

    def _keys(self, rows: np.ndarray, w: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return rows.astype(np.int64) @ w

    def _contains(self, elems: np.ndarray, keys: np.ndarray, v: np.ndarray, w: np.ndarray) -> bool:
        key = self._keys(v[None, :], w)[0]
        hits = np.flatnonzero(keys == key)
        if hits.size == 0:
            return False
        return bool(np.any(np.all(elems[hits] == v, axis=1)))

    def dense(self, c: FiniteConfiguration) -> np.ndarray:
        v = np.zeros(self.width, dtype=np.int64)
        for k, x in c.items():
            if not self.lo <= k <= self.hi:
                raise DomainError(f"cell {k} outside ambient window [{self.lo}, {self.hi}]")
            v[k - self.lo] = x
        return v

    def add(self, g: np.ndarray) -> None:
        m = self.m
        w = self._weights()
        g = g.astype(np.int64) % m
        base, base_keys = self.elements, self.keys
        blocks, key_blocks = [base], [base_keys]
        k = 1
        while True:
            kg = (k * g) % m
            if self._contains(base, base_keys, kg, w):
                break
            if len(base) * (k + 1) > self.budget:
                raise BudgetExceeded(
                    f"subgroup closure would exceed {self.budget} elements", self.budget
                )
            block = ((base.astype(np.int64) + kg) % m).astype(np.uint8)
            blocks.append(block)
            key_blocks.append(self._keys(block, w))
            k += 1
        if k > 1:
            self.elements = np.concatenate(blocks)
            self.keys = np.concatenate(key_blocks)


@dataclass
class TrajectoryTable:
    rule: LinearCA
    window: tuple[int, int]
    sizes: list[int] = field(default_factory=list)
    method: str = "snf"

    @property
    def steps(self) -> int:
        return len(self.sizes)

    @property
    def increments(self) -> list[Fraction]:
        return [Fraction(b, a) for a, b in zip(self.sizes, self.sizes[1:])]

    def as_dict(self) -> dict:
        return {
            "rule": rule_to_dict(self.rule),
            "window": list(self.window),
            "method": self.method,
            "sizes": [str(s) for s in self.sizes],
            "increments": [[str(f.numerator), str(f.denominator)] for f in self.increments],
        }


@dataclass(frozen=True)
class Slope:
    """Final growth ratio ``|T_N| / |T_{N-1}|``; its log estimates the entropy."""

    ratio: Fraction
    stable: bool

    @property
    def nats(self) -> float:
        return math.log(self.ratio.numerator) - math.log(self.ratio.denominator)


def _generator_stream(S: LinearCA, s: int, t: int) -> Iterator[list[FiniteConfiguration]]:
    gens = [FiniteConfiguration.unit(S.modulus, j) for j in range(s, t + 1)]
    while True:
        yield gens
        gens = [apply(S, g) for g in gens]


def _span(gens: list[FiniteConfiguration]) -> tuple[int, int] | None:
    supp = [k for g in gens for k in g.support()]
    if not supp:
        return None
    return min(supp), max(supp)


def iter_trajectory_sizes(
    S: LinearCA,
    s: int,
    t: int,
    method: str = "snf",
    budget: int = DEFAULT_CLOSURE_BUDGET,
    max_width: int = DEFAULT_MAX_WIDTH,
) -> Iterator[int]:
    """Yield ``|T_1|, |T_2|, ...`` for ``F = P_{s,t}`` indefinitely.

    ``auto`` enumerates while the subgroup fits in ``budget`` elements and then
    switches to row reduction, replaying every generator seen so far.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")
    if t < s:
        raise DomainError(f"empty window [{s}, {t}]")
    m = S.m
    use_closure = method in ("closure", "auto") and m <= 255
    if method == "closure" and not use_closure:
        raise DomainError("closure enumeration supports m <= 255")
    engine = ClosureGroup(m, s, t, budget) if use_closure else ModularEchelon(m, s, t)
    history: list[FiniteConfiguration] = []
    for gens in _generator_stream(S, s, t):
        span = _span(gens)
        if span is not None:
            lo, hi = min(span[0], engine.lo), max(span[1], engine.hi)
            if hi - lo + 1 > max_width:
                raise BudgetExceeded(f"ambient window width {hi - lo + 1} exceeds {max_width}", max_width)
            engine.extend(lo, hi)
            try:
                for g in gens:
                    if not g.is_zero():
                        engine.add(engine.dense(g))
            except BudgetExceeded:
                if method != "auto":
                    raise
                engine = ModularEchelon(m, engine.lo, engine.hi)
                for g in history + gens:
                    if not g.is_zero():
                        engine.add(engine.dense(g))
            if isinstance(engine, ClosureGroup) and method == "auto":
                history.extend(g for g in gens if not g.is_zero())
        yield engine.order()


def trajectory_sizes(
    S: LinearCA,
    s: int,
    t: int,
    N: int,
    method: str = "snf",
    budget: int = DEFAULT_CLOSURE_BUDGET,
    max_width: int = DEFAULT_MAX_WIDTH,
) -> TrajectoryTable:
    """Exact ``|T_n(S, P_{s,t})|`` for ``n = 1..N``.

    Raises :class:`BudgetExceeded` with the partial table in ``completed``.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    table = TrajectoryTable(S, (s, t), [], method)
    sizes = iter_trajectory_sizes(S, s, t, method, budget, max_width)
    try:
        for _ in range(N):
            table.sizes.append(next(sizes))
    except BudgetExceeded as exc:
        exc.completed = table
        raise
    return table


def _stable(increments: list[Fraction], run: int) -> bool:
    return len(increments) >= run and len(set(increments[-run:])) == 1


def entropy_slope(table: TrajectoryTable, run: int = 3) -> Slope:
    if table.steps < 3:
        raise DomainError(f"need at least 3 trajectory sizes, got {table.steps}")
    inc = table.increments
    return Slope(inc[-1], _stable(inc, run))


def stable_trajectory(
    S: LinearCA,
    s: int,
    t: int,
    max_steps: int = 64,
    method: str = "auto",
    run: int = 3,
    budget: int = DEFAULT_CLOSURE_BUDGET,
    max_width: int = DEFAULT_MAX_WIDTH,
) -> TrajectoryTable:
    """Extend the table until the last ``run`` increments agree (or ``max_steps``)."""
    table = TrajectoryTable(S, (s, t), [], method)
    sizes = iter_trajectory_sizes(S, s, t, method, budget, max_width)
    try:
        for _ in range(max_steps):
            table.sizes.append(next(sizes))
            if _stable(table.increments, run):
                break
    except BudgetExceeded as exc:
        exc.completed = table
        raise
    return table


def verdict(table: TrajectoryTable, run: int = 3) -> str:
    """``match`` / ``mismatch`` against the closed form, or ``unstable``."""
    slope = entropy_slope(table, run)
    if not slope.stable:
        return "unstable"
    expected = algebraic_entropy(table.rule).exponential
    return "match" if slope.ratio == expected else "mismatch"


# -- exhaustive searches -----------------------------------------------------


def _window_configs(m: int, length: int, chunk: int = 1 << 15) -> Iterator[np.ndarray]:
    total = m**length
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = np.empty((codes.size, length), dtype=np.int64)
        for d in range(length):
            digits[:, d] = codes % m
            codes //= m
        yield digits


def _images(S: LinearCA, configs: np.ndarray, w: int) -> np.ndarray:
    """Images of configurations on ``[-w, w]``, as rows over ``[-w - r, w - l]``."""
    l, r = (S.l, S.r) if not S.is_zero() else (0, 0)
    length = configs.shape[1]
    out = np.zeros((configs.shape[0], length + r - l), dtype=np.int64)
    for i, li in S.items():
        out[:, r - i : r - i + length] += li * configs
    return out % S.m


def _check_budget(m: int, w: int, budget: int) -> None:
    if w < 0:
        raise DomainError(f"window radius must be >= 0, got {w}")
    if m ** (2 * w + 1) > budget:
        raise BudgetExceeded(f"{m}^{2 * w + 1} configurations exceed the search budget {budget}", budget)


def kernel_search(S: LinearCA, w: int, budget: int = DEFAULT_SEARCH_BUDGET) -> FiniteConfiguration | None:
    """A nonzero ``c`` supported in ``[-w, w]`` with ``S(c) = 0``, or ``None``."""
    m = S.m
    _check_budget(m, w, budget)
    for block in _window_configs(m, 2 * w + 1):
        img = _images(S, block, w)
        hit = np.flatnonzero(~img.any(axis=1) & block.any(axis=1))
        if hit.size:
            row = block[hit[0]]
            return FiniteConfiguration(S.modulus, {k - w: int(v) for k, v in enumerate(row)})
    return None


def preimage_search(
    S: LinearCA, target: FiniteConfiguration, w: int, budget: int = DEFAULT_SEARCH_BUDGET
) -> FiniteConfiguration | None:
    """A ``c`` supported in ``[-w, w]`` with ``S(c) = target``, or ``None``.

    ``None`` only rules out preimages inside the window.
    """
    S._check(target)
    m = S.m
    _check_budget(m, w, budget)
    if target.is_zero():
        return FiniteConfiguration.zero(S.modulus)
    l, r = (S.l, S.r) if not S.is_zero() else (0, 0)
    lo, hi = -w - r, w - l
    if not target.in_window(lo, hi):
        return None
    want = np.array(target.window(lo, hi), dtype=np.int64)
    for block in _window_configs(m, 2 * w + 1):
        hit = np.flatnonzero(np.all(_images(S, block, w) == want, axis=1))
        if hit.size:
            row = block[hit[0]]
            return FiniteConfiguration(S.modulus, {k - w: int(v) for k, v in enumerate(row)})
    return None
