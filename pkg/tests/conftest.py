"""Shared generators and independent oracles for the test suite.

The composition oracles here deliberately re-derive series/parallel by
enumerating all N^2 outcome pairs, so the library's cumulative-identity
implementations are checked against a different computation.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from relaycircuits import (
    Circuit, Distribution, IdGen, det, parallel, pswitch, series,
)


def series_direct(p: Distribution, q: Distribution) -> Distribution:
    """min-convolution by full outcome enumeration."""
    out = [Fraction(0)] * len(p)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[min(i, j)] += pi * qj
    return Distribution(out)


def parallel_direct(p: Distribution, q: Distribution) -> Distribution:
    """max-convolution by full outcome enumeration."""
    out = [Fraction(0)] * len(p)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[max(i, j)] += pi * qj
    return Distribution(out)


def random_distribution(rng: random.Random, states: int, max_denom: int = 8) -> Distribution:
    denom = rng.randint(1, max_denom)
    cuts = sorted(rng.randint(0, denom) for _ in range(states - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denom])]
    return Distribution(Fraction(x, denom) for x in parts)


def random_sp_circuit(rng: random.Random, states: int, max_pswitches: int,
                      max_support_product: int = 4096) -> Circuit:
    """A random series-parallel circuit mixing pswitches and Det leaves."""
    while True:
        budget = rng.randint(1, max_pswitches)
        ids = IdGen()
        product = 1

        def build(k: int):
            nonlocal product
            if k == 1:
                dist = random_distribution(rng, states)
                product *= len(dist.support())
                leaf = pswitch(dist, ids())
                roll = rng.random()
                if roll < 0.1:
                    return series(leaf, det(rng.randrange(states)))
                if roll < 0.2:
                    return parallel(leaf, det(rng.randrange(states)))
                return leaf
            split = rng.randint(1, k - 1)
            a, b = build(split), build(k - split)
            return series(a, b) if rng.random() < 0.5 else parallel(a, b)

        root = build(budget)
        if product <= max_support_product:
            return Circuit(states, root)


@st.composite
def distributions(draw, states=None, max_denom: int = 12):
    n = states if states is not None else draw(st.integers(2, 4))
    denom = draw(st.integers(1, max_denom))
    cuts = sorted(draw(st.lists(st.integers(0, denom), min_size=n - 1, max_size=n - 1)))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denom])]
    return Distribution(Fraction(x, denom) for x in parts)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260809)
