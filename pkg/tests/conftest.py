"""Shared helpers: deterministic random expression generators.

Everything is seeded; reruns are bit-identical.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gaugeflow import Expression, coordinate

X = coordinate("x")
Y = coordinate("y")
Z = coordinate("z")
PAIR_COORDS = (X, Y, Z)


def random_polynomial(rng, variables, max_terms=4, max_factors=2, max_exp=2):
    """Random exact-coefficient polynomial over the given VarRefs."""
    total = Expression.const(0)
    for _ in range(rng.randint(1, max_terms)):
        coeff = Fraction(rng.choice([c for c in range(-5, 6) if c]), rng.randint(1, 3))
        term = Expression.const(coeff)
        for _ in range(rng.randint(0, max_factors)):
            term = term * Expression.var(rng.choice(variables)) ** rng.randint(1, max_exp)
        total = total + term
    return total


def phase_variables():
    """Three canonical pairs for bracket properties."""
    out = []
    for q in PAIR_COORDS:
        out.append(q)
        out.append(q.momentum())
    return out


def random_phase_polynomial(rng, **kwargs):
    return random_polynomial(rng, phase_variables(), **kwargs)


def random_jet_polynomial(rng, **kwargs):
    variables = [X, Y, X.jet(1), Y.jet(1)]
    return random_polynomial(rng, variables, **kwargs)


def random_point(rng, variables):
    return {v: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for v in variables}


@pytest.fixture
def rng():
    return random.Random(987123)
