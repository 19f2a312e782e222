import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lca import (
    CompositeModulus,
    FiniteConfiguration,
    LaurentPoly,
    LinearCA,
    NotInvertible,
    apply,
    classify,
    compose,
    decompose,
    degree,
    invert,
    permutivity,
    power,
    shift,
    shift_power_identity,
    to_poly,
)
from lca.oracle import kernel_search
from lca.structure import check_inverse

from conftest import random_config, random_rule, random_surjective, rules


def test_decompose_examples():
    d = decompose(LinearCA(6, {-1: 4, 0: 3}))
    assert d.components == (LinearCA(2, {0: 1}), LinearCA(3, {-1: 1}))
    S = LinearCA(9, {-1: 4, 2: 3})
    assert decompose(S).components == (S,)
    d = decompose(LinearCA(6, {0: 3, 1: 2}))
    assert d.components == (LinearCA(2, {0: 1}), LinearCA(3, {1: 2}))
    assert [c.unit_support() for c in d.components] == [{0}, {1}]


@given(rules(moduli=tuple(range(2, 61))))
def test_decompose_round_trip(S):
    d = decompose(S)
    assert d.recombine() == S
    assert len(d) == len(S.modulus.factors)
    for comp in d.components:
        assert comp.support() <= S.support()
    units = [c.unit_support() for c in d.components]
    assert frozenset.intersection(*units) == S.unit_support()


def test_degree_examples():
    for n in range(5):
        assert degree(shift(7, n)) == n
    assert degree(LinearCA(6, {-1: 4, 1: 3})) == 0
    assert degree(LinearCA(3, {-1: 1, 0: 1, 1: 1})) == 2
    assert degree(LinearCA.zero(5)) == 0


def test_classify_examples():
    c = classify(LinearCA(6, {0: 3, 1: 2}))
    assert c.s_surjective and c.s_injective and c.invertible_with_ca_inverse
    c = classify(LinearCA(3, {-1: 1, 0: 1, 1: 1}))
    assert c.s_injective and not c.s_surjective
    assert c.t_surjective and not c.t_injective
    c = classify(LinearCA(4, {0: 2}))
    assert not c.s_injective and not c.s_surjective
    assert kernel_search(LinearCA(4, {0: 2}), 0) == FiniteConfiguration(4, {0: 2})


def test_classify_zero_rule():
    c = classify(LinearCA.zero(6))
    assert not (c.s_injective or c.s_surjective or c.t_injective or c.t_surjective)
    assert c.degree == 0 and c.component_degrees == (0, 0)


@given(rules(moduli=tuple(range(2, 40))))
def test_classification_invariants(S):
    c = classify(S)
    assert c.t_injective == c.s_surjective
    assert c.t_surjective == c.s_injective
    assert c.invertible_with_ca_inverse == c.s_surjective
    assert c.pre_injective == c.s_injective
    # unique coprime coefficient per prime factor
    unique = all(sum(1 for v in S.lam.values() if v % p) == 1 for p, _ in S.modulus.factors)
    assert c.s_surjective == unique
    some = all(any(v % p for v in S.lam.values()) for p, _ in S.modulus.factors)
    assert c.s_injective == some


def _corpus_injectivity():
    out = []
    for m in (2, 3):
        for coeffs in itertools.product(range(m), repeat=5):
            out.append((LinearCA(m, dict(zip(range(-2, 3), coeffs))), 3))
    rng = random.Random(7)
    for m in (4, 6):
        for _ in range(500):
            out.append((random_rule(rng, m), 2))
    return out


def test_injectivity_agrees_with_kernel_oracle():
    for S, w in _corpus_injectivity():
        witness = kernel_search(S, w)
        assert (witness is None) == classify(S).s_injective, S
        if witness is not None:
            assert apply(S, witness).is_zero() and not witness.is_zero()


def test_invert_examples():
    S = LinearCA(6, {0: 3, 1: 2})
    inv = invert(S)
    assert to_poly(inv) == LaurentPoly(6, {0: 3, 1: 2})
    assert inv == LinearCA(6, {0: 3, -1: 2})
    assert to_poly(inv) * to_poly(S) == LaurentPoly.one(6)
    assert invert(shift(5, 1)) == shift(5, -1)
    T = LinearCA(4, {0: 1, -1: 2})
    assert invert(T) == T


def test_invert_errors():
    with pytest.raises(NotInvertible) as info:
        invert(LinearCA(3, {-1: 1, 0: 1, 1: 1}))
    assert info.value.component == 0 and info.value.unit_support_size == 3
    with pytest.raises(NotInvertible) as info:
        invert(LinearCA(6, {0: 1, 1: 4}))  # Z_3 part has two units
    assert info.value.component == 1 and info.value.unit_support_size == 2
    with pytest.raises(NotInvertible):
        invert(LinearCA.zero(4))


@pytest.mark.parametrize("m", [2, 3, 4, 6, 8, 9, 12, 16, 27, 30, 36, 72])
def test_invert_random_surjective(m, rng):
    for _ in range(100):
        S = random_surjective(rng, m)
        assert classify(S).s_surjective
        inv = invert(S)
        assert check_inverse(S, inv)
        for _ in range(5):
            c = random_config(rng, m)
            assert apply(S, apply(inv, c)) == c
            assert apply(inv, apply(S, c)) == c


def test_invert_agrees_with_power_identity(rng):
    # second route: A^{-1} = A^(e-1) * X^(-n*e) over a prime power
    for m in (2, 3, 4, 5, 8, 9, 25, 27):
        for _ in range(200):
            S = random_rule(rng, m)
            if not classify(S).s_surjective:
                continue
            e, n = shift_power_identity(S)
            other = compose(power(S, e - 1), shift(m, -n * e))
            assert invert(S) == other


def test_shift_power_identity_examples():
    assert shift_power_identity(LinearCA(3, {1: 2})) == (2, -1)
    assert power(LinearCA(3, {1: 2}), 2) == LinearCA(3, {2: 1})
    assert shift_power_identity(shift(2, 1)) == (1, 1)
    assert shift_power_identity(LinearCA(4, {0: 1, -1: 2})) == (2, 0)
    with pytest.raises(CompositeModulus):
        shift_power_identity(LinearCA(6, {0: 1}))
    with pytest.raises(NotInvertible):
        shift_power_identity(LinearCA(3, {0: 1, 1: 1}))


def test_permutivity_examples():
    assert permutivity(LinearCA(3, {-1: 1, 0: 1, 1: 1})) == (True, True, True)
    assert permutivity(shift(4, 1)) == (True, False, False)
    assert permutivity(LinearCA(6, {-1: 4, 0: 3})) == (False, False, False)
    with pytest.raises(ValueError):
        permutivity(LinearCA.zero(3))


@given(rules(moduli=(2, 3, 4, 5, 6, 8, 9, 10, 12)))
def test_permutivity_matches_degree(S):
    if S.is_zero():
        return
    l, r = S.l, S.r
    units = S.unit_support()
    d = degree(S)
    if l < 0 and r <= 0:
        assert (l in units) == (d == -l)
    if l >= 0 and r > 0:
        assert (r in units) == (d == r)
    assert permutivity(S).bipermutive == (l < 0 < r and d == r - l)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_prime_power_frobenius_on_rules(p, k, rng):
    m = p**k
    e = p ** (k - 1)
    checked = 0
    for _ in range(300):
        S = random_rule(rng, m, -3, 3)
        units = S.unit_support()
        if not units:
            continue
        Sp = power(S, e)
        assert Sp.l == e * min(units)
        assert Sp.r == e * max(units)
        checked += 1
    assert checked > 100
