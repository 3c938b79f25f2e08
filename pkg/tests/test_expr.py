"""Expression kernel: canonical forms, calculus, evaluation."""

import random
from fractions import Fraction

import pytest

from gaugeflow import (
    Expression,
    Kind,
    VarRef,
    canonicalize,
    coordinate,
    evaluate,
    multiplier,
    partial_derivative,
    substitute,
    total_time_derivative,
)
from gaugeflow.errors import (
    DenominatorViolation,
    DivisionByZero,
    JetOrderExceeded,
    MomentumInTimeDerivative,
)

from conftest import random_jet_polynomial, random_point

x = coordinate("x")
y = coordinate("y")
ex = Expression.var(x)
ey = Expression.var(y)
vx = Expression.var(x.jet(1))
vy = Expression.var(y.jet(1))
ax = Expression.var(x.jet(2))
px = Expression.var(x.momentum())
py = Expression.var(y.momentum())


class TestVarRef:
    def test_equality_and_order(self):
        assert coordinate("x") is coordinate("x")
        assert coordinate("x") != coordinate("x", (1,))
        ordered = sorted([x.momentum(), x.jet(1), x, y])
        assert ordered == [x, x.jet(1), x.momentum(), y]

    def test_momentum_carries_no_jets(self):
        with pytest.raises(ValueError):
            VarRef("x", (), Kind.MOMENTUM, 1)
        with pytest.raises(MomentumInTimeDerivative):
            x.momentum().jet(1)

    def test_jet_navigation(self):
        assert x.jet(2).jet(-2) is x
        assert x.jet(1).coordinate() is x
        assert multiplier(3).indices == (3,)


class TestCanonicalForm:
    def test_binomial_identity_cancels(self):
        assert ((ex + ey) ** 2 - (ex ** 2 + 2 * ex * ey + ey ** 2)).is_zero()

    def test_constant_gcd_reduction(self):
        assert (2 * ex) / 2 == ex

    def test_self_subtraction(self):
        assert (ex - ex).is_zero()

    def test_idempotence(self):
        e = (ex + ey) ** 3 / (2 * ex)
        assert canonicalize(e) == e
        assert canonicalize(canonicalize(e)) == canonicalize(e)

    def test_fraction_reduction_polynomial(self):
        assert (ex ** 2 - ey ** 2) / (ex + ey) == ex - ey

    def test_denominator_normalization(self):
        e = ex / (-2 * ey + 2 * ex)
        f = (-ex) / (2 * ey - 2 * ex)
        assert e == f
        e.validate()

    def test_equal_hash_equal(self):
        a = (ex + ey) ** 2
        b = ex ** 2 + 2 * ex * ey + ey ** 2
        assert a == b and hash(a) == hash(b)

    def test_denominator_restricted_to_coordinates(self):
        with pytest.raises(DenominatorViolation):
            ex / px
        with pytest.raises(DenominatorViolation):
            ex / vx
        assert (ex * px) / px == ex  # cancellation is fine

    def test_zero_division(self):
        with pytest.raises(DivisionByZero):
            ex / (ey - ey)


class TestPartialDerivative:
    def test_power_rule(self):
        assert partial_derivative(ex ** 2 * ey, x) == 2 * ex * ey

    def test_momenta_are_independent(self):
        assert partial_derivative(px * ey, x.momentum()) == ey

    def test_constants_vanish(self):
        assert partial_derivative(Expression.const(7), x).is_zero()

    def test_quotient_rule(self):
        e = ey / ex
        assert e.diff(x) == -ey / ex ** 2

    def test_commutes(self, rng):
        for _ in range(50):
            e = random_jet_polynomial(rng)
            assert e.diff(x).diff(y) == e.diff(y).diff(x)

    def test_leibniz(self, rng):
        for _ in range(50):
            f = random_jet_polynomial(rng)
            g = random_jet_polynomial(rng)
            assert (f * g).diff(x) == f.diff(x) * g + f * g.diff(x)


class TestTotalTimeDerivative:
    def test_chain_rule_product(self):
        assert total_time_derivative(ex * vx) == vx ** 2 + ex * ax

    def test_constant(self):
        assert total_time_derivative(Expression.const(3)).is_zero()

    def test_toy_equation_of_motion_rate(self):
        # hand chain rule: d/dt (x' - y) = x'' - y'
        assert total_time_derivative(vx - ey) == ax - vy

    def test_rejects_momenta(self):
        with pytest.raises(MomentumInTimeDerivative):
            total_time_derivative(px)
        with pytest.raises(MomentumInTimeDerivative):
            total_time_derivative(Expression.var(multiplier(0)))

    def test_jet_cap(self):
        e = Expression.var(x.jet(3))
        with pytest.raises(JetOrderExceeded):
            total_time_derivative(e)
        assert total_time_derivative(e, max_order=4) == Expression.var(x.jet(4))

    def test_leibniz(self, rng):
        for _ in range(50):
            f = random_jet_polynomial(rng)
            g = random_jet_polynomial(rng)
            cap = 9
            lhs = total_time_derivative(f * g, cap)
            rhs = (total_time_derivative(f, cap) * g + f * total_time_derivative(g, cap))
            assert lhs == rhs


class TestSubstitute:
    def test_rename(self):
        p = coordinate("p")
        assert substitute(ex + ey, [(x, Expression.var(p))]) == Expression.var(p) + ey

    def test_to_zero(self):
        assert substitute(ex ** 2, [(x, Expression.const(0))]).is_zero()

    def test_velocity_to_momentum(self):
        assert substitute(vx, [(x.jet(1), px)]) == px

    def test_simultaneous_not_sequential(self):
        swapped = substitute(ex - ey, [(x, ey), (y, ex)])
        assert swapped == ey - ex

    def test_duplicate_keys_rejected(self):
        with pytest.raises(ValueError):
            substitute(ex, [(x, ey), (x, ex)])

    def test_denominator_violation(self):
        e = ex / ey
        with pytest.raises(DenominatorViolation):
            substitute(e, [(y, px)])


class TestEvaluate:
    def test_sum(self):
        assert evaluate(ex + ey, {x: 1, y: 2}) == 3

    def test_pole(self):
        with pytest.raises(DivisionByZero):
            evaluate(ex / ey, {x: 1, y: 0})

    def test_exact_fraction(self):
        assert evaluate(2 * ex * ey, {x: Fraction(1, 2), y: 3}) == 3

    def test_missing_assignment(self):
        with pytest.raises(ValueError):
            evaluate(ex + ey, {x: 1})

    def test_ring_homomorphism(self, rng):
        for _ in range(50):
            e1 = random_jet_polynomial(rng)
            e2 = random_jet_polynomial(rng)
            pt = random_point(rng, (e1 * e2).variables() | e1.variables() | e2.variables())
            assert evaluate(e1 * e2, pt) == evaluate(e1, pt) * evaluate(e2, pt)
            assert evaluate(e1 + e2, pt) == evaluate(e1, pt) + evaluate(e2, pt)


def test_random_arithmetic_stays_canonical(rng):
    for _ in range(200):
        e = random_jet_polynomial(rng)
        f = random_jet_polynomial(rng)
        g = e * f - f * e
        assert g.is_zero()
        (e + f).validate()
        (e * f).validate()


def test_rational_canonical_invariants(rng):
    rng = random.Random(4242)
    for _ in range(100):
        num = random_jet_polynomial(rng)
        den = Expression.var(x) ** rng.randint(1, 2) + Expression.const(rng.randint(1, 3))
        e = num / den
        e.validate()
        assert canonicalize(e) == e


def test_evaluate_float_contagion():
    e = ex * ey + ey
    value = evaluate(e, {x: 0.5, y: 4})
    assert isinstance(value, float) and value == 6.0
    exact = evaluate(e, {x: Fraction(1, 2), y: 4})
    assert isinstance(exact, Fraction) and exact == 6
