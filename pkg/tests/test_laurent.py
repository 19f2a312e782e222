import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lca import DomainError, LaurentPoly, ModulusMismatch, crt_combine_poly, parse_poly, project_poly
from lca.laurent import format_poly

from conftest import polys


def P(m, terms):
    return LaurentPoly(m, terms)


def dense_mul(a, b):
    """Oracle: numpy convolution of offset dense coefficient arrays."""
    if a.is_zero() or b.is_zero():
        return {}
    lo_a, lo_b = a.min_exponent(), b.min_exponent()
    va = np.array([a.coeff(n) for n in range(lo_a, a.max_exponent() + 1)], dtype=object)
    vb = np.array([b.coeff(n) for n in range(lo_b, b.max_exponent() + 1)], dtype=object)
    conv = np.convolve(va, vb)
    return {lo_a + lo_b + k: int(c) % a.m for k, c in enumerate(conv) if int(c) % a.m}


def test_add_examples():
    assert P(6, {0: 3, 1: 4}) + P(6, {0: 3, 1: 2}) == P(6, {})
    a = P(5, {-2: 3, 4: 1})
    assert a + LaurentPoly.zero(5) == a
    assert P(6, {0: 1}) + P(6, {0: 5}) == LaurentPoly.zero(6)


def test_mul_examples():
    assert P(2, {0: 1, 1: 1}) * P(2, {0: 1, 1: 1}) == P(2, {0: 1, 2: 1})
    a, b = P(6, {0: 3, -1: 2}), P(6, {0: 3, 1: 2})
    assert dense_mul(a, b) == {0: 1}
    assert a * b == LaurentPoly.one(6)
    c = P(7, {-3: 2, 5: 6})
    assert c * LaurentPoly.one(7) == c


def test_pow_examples():
    assert P(2, {0: 1, 1: 1}) ** 2 == P(2, {0: 1, 2: 1})
    assert P(5, {3: 2}) ** 0 == LaurentPoly.one(5)
    assert P(4, {0: 1, 1: 2}) ** 2 == LaurentPoly.one(4)
    with pytest.raises(DomainError):
        P(4, {0: 1}) ** -1


def test_reduced_examples():
    assert P(6, {0: 3, 1: 4}).reduced() == LaurentPoly.zero(6)
    assert P(6, {-1: 3, 1: 4}).reduced() == LaurentPoly.zero(6)
    assert P(4, {0: 1, 1: 2}).reduced() == LaurentPoly.one(4)


def test_reduced_degree_examples():
    assert P(3, {-1: 1, 0: 1, 1: 1}).reduced_degree() == 2
    assert LaurentPoly.zero(5).reduced_degree() == 0
    assert P(6, {-1: 3, 1: 4}).reduced_degree() == 0


def case_split_degree(units):
    """The three-case definition, used as the oracle for the one-line formula."""
    if not units:
        return 0
    lo, hi = min(units), max(units)
    if lo <= hi <= 0:
        return -lo
    if 0 <= lo <= hi:
        return hi
    return hi - lo


def test_reduced_degree_case_split_exhaustive():
    # every nonempty subset of [-4, 4] as a unit support over Z_5
    exps = range(-4, 5)
    for mask in range(1, 1 << len(exps)):
        units = [e for k, e in enumerate(exps) if mask >> k & 1]
        poly = P(5, {e: 1 for e in units})
        assert poly.reduced_degree() == case_split_degree(units)


def test_reduced_degree_matches_plus_minus_parts():
    # deg(A_+) + deg(A_-) with the zero-part convention
    rng = random.Random(3)
    for _ in range(500):
        m = rng.choice([4, 6, 8, 9, 12])
        a = P(m, {rng.randint(-6, 6): rng.randrange(m) for _ in range(5)})
        units = a.unit_support()
        plus = [e for e in units if e >= 0]
        minus = [-e for e in units if e <= 0]
        want = (max(plus) if plus else 0) + (max(minus) if minus else 0)
        assert a.reduced_degree() == want


def test_project_poly_examples():
    a = P(6, {0: 3, 1: 4})
    assert project_poly(a, 0) == LaurentPoly.one(2)
    assert project_poly(a, 1) == P(3, {1: 1})
    assert project_poly(LaurentPoly.zero(6), 1).is_zero()


def test_crt_combine_poly_examples():
    assert crt_combine_poly([LaurentPoly.one(2), P(3, {1: 1})], 6) == P(6, {0: 3, 1: 4})
    single = P(9, {-2: 4, 3: 1})
    assert crt_combine_poly([single], 9) == single
    got = crt_combine_poly([LaurentPoly.one(2), P(3, {1: 2})], 6)
    assert got == P(6, {0: 3, 1: 2})
    assert project_poly(got, 0) == LaurentPoly.one(2) and project_poly(got, 1) == P(3, {1: 2})


def test_crt_combine_poly_arity():
    with pytest.raises(DomainError):
        crt_combine_poly([LaurentPoly.one(2)], 6)


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        P(6, {0: 1}) + P(5, {0: 1})
    with pytest.raises(ModulusMismatch):
        P(6, {0: 1}) * P(5, {0: 1})


@given(st.data())
def test_ring_laws(data):
    m = data.draw(st.integers(2, 12))
    a, b, c = (data.draw(polys(moduli=(m,))) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero(m)
    assert (a * b).terms == dense_mul(a, b)


@given(polys(), st.integers(0, 6))
def test_pow_matches_repeated_mul(a, n):
    want = LaurentPoly.one(a.modulus)
    for _ in range(n):
        want = want * a
    assert a**n == want


@given(polys())
def test_reduced_properties(a):
    assert a.unit_support() <= a.support()
    assert a.reduced().reduced() == a.reduced()
    assert a.reduced().support() == a.unit_support()


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_frobenius_identity(p, k):
    m = p**k
    rng = random.Random(m)
    e = p ** (k - 1)
    for _ in range(1000):
        a = P(m, {rng.randint(-5, 5): rng.randrange(m) for _ in range(rng.randint(0, 6))})
        assert a**e == a.reduced() ** e


@given(st.data())
def test_projection_is_ring_hom(data):
    m = data.draw(st.sampled_from([6, 10, 12, 30, 36, 60]))
    a, b = data.draw(polys(moduli=(m,))), data.draw(polys(moduli=(m,)))
    for i in range(len(a.modulus)):
        assert project_poly(a * b, i) == project_poly(a, i) * project_poly(b, i)
        assert project_poly(a + b, i) == project_poly(a, i) + project_poly(b, i)
    assert crt_combine_poly([project_poly(a, i) for i in range(len(a.modulus))], m) == a


@settings(max_examples=200)
@given(st.data())
def test_degree_of_power(data):
    # only the S' = S case of additivity over a prime power with supp* = supp
    m = data.draw(st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
    a = data.draw(polys(moduli=(m,))).reduced()
    n = data.draw(st.integers(0, 5))
    assert (a**n).reduced_degree() == n * a.reduced_degree()


def test_format_and_parse_round_trip():
    a = P(6, {1: 4, 0: 3, -2: 1})
    assert format_poly(a) == "4*X + 3 + X^-2"
    assert parse_poly(format_poly(a), 6) == a
    assert format_poly(LaurentPoly.zero(3)) == "0"
    assert parse_poly("0", 3).is_zero()


@pytest.mark.parametrize(
    "text,m,want",
    [
        ("1 - X", 5, {0: 1, 1: 4}),
        ("-X^-1 + 2x^(3)", 7, {-1: 6, 3: 2}),
        ("3X**2 + X^2", 5, {2: 4}),
        ("X + X", 2, {}),
        ("2*X^-3", 9, {-3: 2}),
    ],
)
def test_parse_variants(text, m, want):
    assert parse_poly(text, m) == P(m, want)


@pytest.mark.parametrize("text", ["", "3 +", "X^", "2*", "3 4", "X ^ y", "(X)"])
def test_parse_errors_report_column(text):
    with pytest.raises(DomainError) as info:
        parse_poly(text, 5)
    assert "column" in str(info.value)


@given(polys())
def test_format_parse_property(a):
    assert parse_poly(str(a), a.modulus) == a
