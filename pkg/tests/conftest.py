import itertools
import random

import pytest
from hypothesis import settings, strategies as st

from qaffine.ideals import Monomial, MonomialIdeal

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@st.composite
def pair_sets(draw, max_n=5, max_pairs=5):
    """Squarefree quadratic pair sets, in a random generator order."""
    n = draw(st.integers(2, max_n))
    every = list(itertools.combinations(range(1, n + 1), 2))
    pairs = draw(st.lists(st.sampled_from(every), min_size=1,
                          max_size=min(max_pairs, len(every)), unique=True))
    return n, pairs


@st.composite
def monomial_ideals(draw, max_n=6, max_t=5, max_exp=2):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(
        st.tuples(*[st.integers(0, max_exp)] * n).filter(any),
        min_size=1, max_size=max_t,
    ))
    return MonomialIdeal(n, tuple(Monomial(g) for g in gens))


def random_pair_sets(count, max_n=5, max_pairs=5, seed=0):
    """Deterministic sample of pair sets, used by the long-running sweeps."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, max_n)
        every = list(itertools.combinations(range(1, n + 1), 2))
        k = rng.randint(1, min(max_pairs, len(every)))
        out.append((n, rng.sample(every, k)))
    return out


@pytest.fixture
def chain4():
    return MonomialIdeal.from_pairs([(1, 2), (2, 3), (3, 4)])


@pytest.fixture
def triangle():
    return MonomialIdeal.from_pairs([(1, 2), (2, 3), (1, 3)])
