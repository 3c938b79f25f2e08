"""Deterministic property suites over seeded random expressions.

All residues are required to be exactly zero; there is no tolerance
anywhere in the symbolic checks.
"""

import random

from gaugeflow import Expression, canonicalize, coordinate, poisson_bracket

from conftest import (
    PAIR_COORDS,
    phase_variables,
    random_phase_polynomial,
    random_point,
    random_polynomial,
)

PAIRS = tuple((q, q.momentum()) for q in PAIR_COORDS)
x = coordinate("x")
y = coordinate("y")


def test_bracket_properties_on_200_triples():
    rng = random.Random(31337)
    for _ in range(200):
        f = random_phase_polynomial(rng, max_terms=3)
        g = random_phase_polynomial(rng, max_terms=3)
        h = random_phase_polynomial(rng, max_terms=3)
        fg = poisson_bracket(f, g, PAIRS)
        assert (fg + poisson_bracket(g, f, PAIRS)).is_zero()          # antisymmetry
        leibniz = (poisson_bracket(f, g * h, PAIRS)
                   - fg * h - g * poisson_bracket(f, h, PAIRS))
        assert leibniz.is_zero()                                      # Leibniz
        jacobi = (poisson_bracket(f, poisson_bracket(g, h, PAIRS), PAIRS)
                  + poisson_bracket(g, poisson_bracket(h, f, PAIRS), PAIRS)
                  + poisson_bracket(h, poisson_bracket(f, g, PAIRS), PAIRS))
        assert jacobi.is_zero()                                       # Jacobi


def test_canonicalize_idempotent_on_1000_expressions():
    rng = random.Random(271828)
    pool = list(phase_variables()) + [x.jet(1), y.jet(1)]
    for i in range(1000):
        e = random_polynomial(rng, pool, max_terms=5, max_factors=3)
        if i % 3 == 0:
            den = random_polynomial(rng, [x, y], max_terms=2, max_factors=2)
            if not den.is_zero():
                e = e / den
        once = canonicalize(e)
        assert once == e
        assert canonicalize(once) == once
        once.validate()


def test_symbolic_zero_agrees_with_50_point_evaluation():
    rng = random.Random(1618)
    violations = 0
    for _ in range(120):
        a = random_phase_polynomial(rng, max_terms=3)
        b = random_phase_polynomial(rng, max_terms=3)
        built_zero = (a + b) ** 2 - a ** 2 - 2 * a * b - b ** 2
        candidates = [(built_zero, True), (a * b - b * a, True)]
        nonzero = a ** 2 + Expression.const(1)  # strictly positive at rationals
        candidates.append((nonzero, False))
        for e, expect_zero in candidates:
            assert e.is_zero() == expect_zero
            variables = e.variables() | a.variables() | b.variables()
            seen_nonzero = False
            for _ in range(50):
                pt = random_point(rng, variables)
                value = e.evaluate(pt)
                if expect_zero and value != 0:
                    violations += 1
                if not expect_zero and value != 0:
                    seen_nonzero = True
            if not expect_zero and not seen_nonzero:
                violations += 1
    assert violations == 0


def test_fraction_reduction_cancels_common_factors():
    # (a*g)/(b*g) must equal a/b exactly; exercises the polynomial gcd
    # and exact-division machinery end to end
    rng = random.Random(777)
    z = coordinate("z")
    pool = [x, y, z]
    checked = 0
    while checked < 100:
        a = random_polynomial(rng, pool, max_terms=3, max_factors=2)
        b = random_polynomial(rng, pool, max_terms=2, max_factors=2)
        g = random_polynomial(rng, pool, max_terms=2, max_factors=2)
        if b.is_zero() or g.is_zero():
            continue
        assert (a * g) / (b * g) == a / b
        assert ((a * g) / g) == a
        checked += 1
