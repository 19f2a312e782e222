import random

import pytest
from hypothesis import strategies as st

from lca import FiniteConfiguration, LaurentPoly, LinearCA


def sparse_maps(m, lo=-5, hi=5, max_size=6):
    return st.dictionaries(st.integers(lo, hi), st.integers(0, m - 1), max_size=max_size)


@st.composite
def rules(draw, moduli=tuple(range(2, 13)), lo=-3, hi=3):
    m = draw(st.sampled_from(moduli))
    return LinearCA(m, draw(sparse_maps(m, lo, hi)))


@st.composite
def polys(draw, moduli=tuple(range(2, 13)), lo=-5, hi=5):
    m = draw(st.sampled_from(moduli))
    return LaurentPoly(m, draw(sparse_maps(m, lo, hi)))


def configs(m, lo=-6, hi=6):
    return sparse_maps(m, lo, hi, max_size=8).map(lambda d: FiniteConfiguration(m, d))


@pytest.fixture
def rng():
    return random.Random(20261015)


def random_rule(rng, m, lo=-2, hi=2):
    return LinearCA(m, {i: rng.randrange(m) for i in range(lo, hi + 1)})


def random_config(rng, m, lo=-4, hi=4):
    return FiniteConfiguration(m, {i: rng.randrange(m) for i in range(lo, hi + 1)})


def random_surjective(rng, m, lo=-3, hi=3):
    """A rule with exactly one unit coefficient in every primary component."""
    from lca import LaurentPoly, crt_combine_poly
    from lca.modring import factorize

    mod = factorize(m)
    parts = []
    for p, k in mod.factors:
        q = p**k
        lam = {i: p * rng.randrange(q // p) for i in range(lo, hi + 1)}
        u = rng.randrange(lo, hi + 1)
        lam[u] = (lam[u] + rng.choice([a for a in range(1, p)] or [1])) % q
        parts.append(LaurentPoly(q, {-i: v for i, v in lam.items()}))
    return LinearCA(m, {-n: v for n, v in crt_combine_poly(parts, mod).items()})


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
