import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import strategies as st

from fairgame import Economy


def random_economy(rng, max_agents=4, max_actions=4, min_actions=1, low=-10.0, high=10.0):
    """Uniform surplus on a random shape, random reference, shifted so f(o) = 0."""
    n = int(rng.integers(1, max_agents + 1))
    shape = tuple(int(m) for m in rng.integers(min_actions, max_actions + 1, size=n))
    f = rng.uniform(low, high, size=shape)
    ref = tuple(int(rng.integers(0, m)) for m in shape)
    f = f - f[ref]
    actions = [[f"{chr(97 + i)}{k}" for k in range(m)] for i, m in enumerate(shape)]
    return Economy(actions, f, ref)


def economy_batch(seed, count, **kw):
    rng = np.random.default_rng(seed)
    return [random_economy(rng, **kw) for _ in range(count)]


def strictly_monotone_economy(rng, max_agents=4, max_actions=4):
    """f = g(sum of per-agent scores) with g strictly increasing and shuffled action orders."""
    n = int(rng.integers(1, max_agents + 1))
    shape = tuple(int(m) for m in rng.integers(1, max_actions + 1, size=n))
    scores = [rng.permutation(np.cumsum(rng.uniform(0.5, 3.0, size=m))) for m in shape]
    total = np.zeros(shape)
    for i, s in enumerate(scores):
        view = [1] * n
        view[i] = shape[i]
        total = total + s.reshape(view)
    f = np.exp(total / 4) + total
    ref = tuple(int(rng.integers(0, m)) for m in shape)
    return Economy([[str(k) for k in range(m)] for m in shape], f - f[ref], ref)


def weakly_monotone_economy(rng, max_agents=4, max_actions=4):
    """Product of nonnegative integer per-agent levels: ties everywhere, a dominant maximizer."""
    n = int(rng.integers(2, max_agents + 1))
    shape = tuple(int(m) for m in rng.integers(2, max_actions + 1, size=n))
    f = np.ones(shape)
    for i, m in enumerate(shape):
        view = [1] * n
        view[i] = m
        f = f * rng.integers(0, 3, size=m).reshape(view)
    ref = tuple(int(rng.integers(0, m)) for m in shape)
    return Economy([[str(k) for k in range(m)] for m in shape], f - f[ref], ref)


def binary_economy(v, n):
    """Coalition game v (on frozensets) as an economy with actions out/in."""
    f = np.zeros((2,) * n)
    for x in np.ndindex(*f.shape):
        f[x] = v(frozenset(i for i in range(n) if x[i]))
    return Economy([["out", "in"]] * n, f)


def permutation_shapley(v, n):
    phi = np.zeros(n)
    for order in permutations(range(n)):
        s = frozenset()
        for i in order:
            phi[i] += v(s | {i}) - v(s)
            s = s | {i}
    return phi / math.factorial(n)


@st.composite
def economies(draw, max_agents=3, max_actions=3, zero_reference=True):
    n = draw(st.integers(1, max_agents))
    shape = tuple(draw(st.lists(st.integers(1, max_actions), min_size=n, max_size=n)))
    size = int(np.prod(shape))
    vals = draw(st.lists(st.floats(-10, 10, allow_nan=False, width=32), min_size=size, max_size=size))
    f = np.array(vals, dtype=float).reshape(shape)
    ref = tuple(draw(st.integers(0, m - 1)) for m in shape)
    if zero_reference:
        f = f - f[ref]
    return Economy([[str(k) for k in range(m)] for m in shape], f, ref)


@pytest.fixture
def table1():
    return Economy([["a1", "a2"], ["b1", "b2", "b3"]], [[0, 5, 5], [2, 4, 4]])


@pytest.fixture
def table4():
    pay = np.array([
        [(0, 0), (0, 0), (0, 12), (0, 6)],
        [(13, 0), (6.5, -6.5), (1.5, 0.5), (4, -3)],
        [(3, 0), (8, 5), (-1, 8), (-1, 2)],
    ])
    return Economy([["a1", "a2", "a3"], ["b1", "b2", "b3", "b4"]], pay.sum(-1))
