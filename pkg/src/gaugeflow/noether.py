"""Gauge identities of the equations of motion and the single-step
constraint rule built from them.

A declared generator assigns each coordinate a variation built from the
gauge parameter and its time derivatives.  Contracting the
Euler-Lagrange expressions with those coefficients and integrating by
parts must give the exact zero polynomial; that is the certificate that
the declared symmetry really holds.  The single-step rule then contracts
the conjugate momenta with the k = 0 coefficients on the canonical
sector, producing one candidate first-class constraint per gauge
parameter without running any consistency generations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dirac import Constraint
from .errors import (
    ConjectureInapplicable,
    DegenerateGenerator,
    IdentityViolated,
    SamplingDegenerate,
)
from .expr import DEFAULT_JET_CAP, Expression, esum
from .linalg import rational_rank
from .reduction import _random_rational


@dataclass(frozen=True)
class NoetherReport:
    euler_lagrange: tuple   # (coordinate VarRef, Expression) pairs
    residues: tuple         # (parameter_name, Expression) pairs

    def passed(self):
        return all(residue.is_zero() for _, residue in self.residues)


def euler_lagrange(m):
    """Equations of motion, one expression per coordinate.

    Sign convention: E_a = d/dt (dL/dv_a) - dL/dq_a, so a free particle
    with L = v^2/2 gives E = acceleration.
    """
    lagrangian = m.lagrangian
    out = []
    for q in m.coordinate_vars:
        momentum_def = lagrangian.diff(q.jet(1))
        out.append((q, momentum_def.dt() - lagrangian.diff(q)))
    return tuple(out)


def _alternating_derivative(e, order, cap):
    """(-d/dt)^order applied to e."""
    for _ in range(order):
        e = -e.dt(cap)
    return e


def noether_identity_check(m, el=None, jet_cap=None):
    """Verify that every declared generator annihilates the equations of
    motion, symbolically and exactly.

    Returns a :class:`NoetherReport`; raises :class:`IdentityViolated`
    (carrying the report) when any residue is nonzero.  ``el`` may pass
    in precomputed Euler-Lagrange expressions when checking many
    generator variants against one Lagrangian.
    """
    el = tuple(el) if el is not None else euler_lagrange(m)
    table = dict(el)
    cap = jet_cap if jet_cap is not None else max(
        DEFAULT_JET_CAP,
        2 + max((g.max_order() for g in m.generators), default=0))
    residues = []
    for gen in m.generators:
        parts = []
        for comp in gen.components:
            term = table[comp.coordinate] * comp.coefficient
            parts.append(_alternating_derivative(term, comp.order, cap))
        residues.append((gen.parameter_name, esum(parts)))
    report = NoetherReport(el, tuple(residues))
    if not report.passed():
        raise IdentityViolated(report)
    return report


def independence_check(m, rng=None):
    """Are the declared generators independent as variation columns?

    Stacks every (coordinate, order) coefficient into a column per
    generator and samples the column rank at random rational points;
    True exactly when the generic rank equals the generator count.
    """
    gens = m.generators
    if not gens:
        return True
    rows = sorted({(comp.coordinate, comp.order)
                   for g in gens for comp in g.components})
    matrix = []
    for coord, order in rows:
        matrix.append([g.coefficient(coord, order) or Expression.const(0)
                       for g in gens])
    needed = set()
    for row in matrix:
        for e in row:
            needed |= e.variables()
    rng = rng or random.Random(m.options.seed)
    free = sorted(needed)
    best = 0
    tried = 0
    for _ in range(max(1, m.options.sample_count if free else 1)):
        pt = {v: _random_rational(rng) for v in free}
        try:
            numeric = [[e.evaluate(pt) for e in row] for row in matrix]
        except Exception:
            continue
        tried += 1
        best = max(best, rational_rank(numeric))
        if best == len(gens):
            return True
        if not free:
            break
    if tried == 0:
        raise SamplingDegenerate("could not evaluate the generator columns at any point")
    return best == len(gens)


def conjecture_constraints(m, leg, noether=None):
    """One candidate constraint per gauge parameter: conjugate momenta
    contracted with the generator's k = 0 coefficients on the canonical
    sector.

    Preconditions enforced here: the gauge identities hold (checked via
    ``noether`` or recomputed), and every differentiated-parameter
    component targets a coordinate whose momentum vanishes identically.
    Raises :class:`ConjectureInapplicable` otherwise, and
    :class:`DegenerateGenerator` when a contraction collapses to zero.
    """
    if noether is None:
        noether = noether_identity_check(m)
    discard = set(leg.discardable)
    out = []
    for gen in m.generators:
        for comp in gen.components:
            if comp.order >= 1 and comp.coordinate not in discard:
                raise ConjectureInapplicable(
                    f"generator '{gen.parameter_name}' couples the order-"
                    f"{comp.order} parameter derivative to {comp.coordinate}, "
                    f"whose momentum does not vanish identically")
        parts = [Expression.var(comp.coordinate.momentum()) * comp.coefficient
                 for comp in gen.components
                 if comp.order == 0 and comp.coordinate not in discard]
        phi = esum(parts)
        if phi.is_zero():
            raise DegenerateGenerator(
                f"generator '{gen.parameter_name}' contracts to zero on the "
                f"canonical sector")
        out.append(Constraint(phi.normalized(), 0, "conjecture"))
    return tuple(out)
