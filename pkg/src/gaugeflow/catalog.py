"""Builtin model catalog.

Five fixtures exercise every analysis path:

* ``toy_gauge``: one gauge symmetry, one primary and one secondary
  constraint, both first class.
* ``oscillator``: regular system, no constraints at all.
* ``second_class_toy``: two second-class constraints, multipliers fixed.
* ``maxwell_lattice``: abelian gauge links on a periodic N^3 grid; the
  site Gauss laws are the secondary constraints.
* ``ym_mechanics``: spatially homogeneous su(2) gauge mechanics with an
  optional complex doublet stored as four real coordinates; non-abelian
  Gauss laws close under the Poisson bracket.

Each gauge fixture declares the generators of its exact Lagrangian
symmetry, so the gauge identity check passes symbolically.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadParameter, UnknownBuiltin
from .expr import Expression, coordinate, esum
from .model import CoordinateDecl, GaugeGenerator, GeneratorComponent, ModelSpec

ONE = Expression.const(1)
HALF = Expression.const(Fraction(1, 2))


def _x(v):
    return Expression.var(v)


# --- small mechanics fixtures ---------------------------------------------------

def _toy_gauge():
    x, y = coordinate("x"), coordinate("y")
    vx = _x(x.jet(1))
    lagrangian = HALF * (vx - _x(y)) ** 2
    gen = GaugeGenerator("eps", (
        GeneratorComponent(x, 0, ONE),
        GeneratorComponent(y, 1, ONE),
    ))
    return ModelSpec(
        name="toy_gauge",
        coordinates=(CoordinateDecl("x"), CoordinateDecl("y", discardable_hint=True)),
        lagrangian=lagrangian,
        generators=(gen,),
    )


def _oscillator():
    x = coordinate("x")
    lagrangian = HALF * _x(x.jet(1)) ** 2 - HALF * _x(x) ** 2
    return ModelSpec(
        name="oscillator",
        coordinates=(CoordinateDecl("x"),),
        lagrangian=lagrangian,
    )


def _second_class_toy():
    x, y = coordinate("x"), coordinate("y")
    lagrangian = _x(x.jet(1)) * _x(y) - HALF * (_x(x) ** 2 + _x(y) ** 2)
    return ModelSpec(
        name="second_class_toy",
        coordinates=(CoordinateDecl("x"), CoordinateDecl("y")),
        lagrangian=lagrangian,
    )


# --- abelian gauge links on a periodic grid -------------------------------------

def _sites(n):
    return [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]


def _shift(site, direction, n, step=1):
    out = list(site)
    out[direction - 1] = (out[direction - 1] + step) % n
    return tuple(out)


def _maxwell_lattice(n):
    """Electromagnetic links on an n^3 periodic grid.

    Per site there is a scalar potential A0 and three links A[i].  The
    Lagrangian pairs each link velocity with the forward difference of
    A0 and adds the magnetic curl energy; the gauge transformation is
    A0 -> A0 + eps', A[i] -> A[i] + forward difference of eps.
    """
    if n < 1:
        raise BadParameter(f"maxwell_lattice needs N >= 1, got {n}")
    sites = _sites(n)

    def a0(site):
        return coordinate("A0", site)

    def link(i, site):
        return coordinate("A", (i,) + site)

    def fwd_diff_a0(i, site):
        return _x(a0(_shift(site, i, n))) - _x(a0(site))

    def curl(i, j, site):
        term = _x(link(j, _shift(site, i, n))) - _x(link(j, site))
        term -= _x(link(i, _shift(site, j, n))) - _x(link(i, site))
        return term

    pieces = []
    for site in sites:
        for i in (1, 2, 3):
            electric = _x(link(i, site).jet(1)) - fwd_diff_a0(i, site)
            pieces.append(HALF * electric ** 2)
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                if i != j:
                    pieces.append(Expression.const(Fraction(-1, 4)) * curl(i, j, site) ** 2)
    lagrangian = esum(pieces)

    generators = []
    for site in sites:
        comps = [GeneratorComponent(a0(site), 1, ONE)]
        for i in (1, 2, 3):
            back = _shift(site, i, n, step=-1)
            if back == site:  # N=1: the difference of a site with itself
                continue
            comps.append(GeneratorComponent(link(i, back), 0, ONE))
            comps.append(GeneratorComponent(link(i, site), 0, -ONE))
        generators.append(GaugeGenerator("eps_" + "_".join(map(str, site)), tuple(comps)))

    return ModelSpec(
        name=f"maxwell_lattice(N={n})",
        coordinates=(
            CoordinateDecl("A0", ((0, n),) * 3, discardable_hint=True),
            CoordinateDecl("A", ((1, 4),) + ((0, n),) * 3),
        ),
        lagrangian=lagrangian,
        generators=tuple(generators),
    )


# --- homogeneous su(2) gauge mechanics -------------------------------------------

EPSILON = {}
for _a, _b, _c, _s in ((1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1),
                       (2, 1, 3, -1), (3, 2, 1, -1), (1, 3, 2, -1)):
    EPSILON[(_a, _b, _c)] = _s


def eps3(a, b, c):
    """Totally antisymmetric structure constants of su(2)."""
    return EPSILON.get((a, b, c), 0)


# Real 4x4 form of the doublet generators i*sigma_a/2 acting on
# (Re phi_1, Im phi_1, Re phi_2, Im phi_2); antisymmetric, and
# [N_a, N_b] = -eps3(a,b,c) N_c.
_H = Fraction(1, 2)
SU2_DOUBLET = {
    1: ((0, 0, 0, -_H), (0, 0, _H, 0), (0, -_H, 0, 0), (_H, 0, 0, 0)),
    2: ((0, 0, _H, 0), (0, 0, 0, _H), (-_H, 0, 0, 0), (0, -_H, 0, 0)),
    3: ((0, -_H, 0, 0), (_H, 0, 0, 0), (0, 0, 0, _H), (0, 0, -_H, 0)),
}


def _rotate(matrix, vector):
    """matrix @ vector over Expressions."""
    out = []
    for row in matrix:
        out.append(esum(Expression.const(c) * v for c, v in zip(row, vector) if c))
    return out


def _ym_mechanics(group="su2", with_scalar=True):
    """Spatially homogeneous Yang-Mills mechanics.

    Coordinates are the color components A0[a] and A[i,a] plus, when
    ``with_scalar`` is set, a complex doublet phi encoded as four real
    coordinates.  The declared generators combine the adjoint action on
    the gauge field (with the parameter's velocity hitting A0 only) and
    the doublet rotation on phi.
    """
    if group != "su2":
        raise BadParameter(f"only group=su2 is available, got '{group}'")
    colors = (1, 2, 3)
    a0 = {a: coordinate("A0", (a,)) for a in colors}
    link = {(i, a): coordinate("A", (i, a)) for i in colors for a in colors}

    def field_strength_0i(i, a):
        cross = esum(eps3(a, b, c) * _x(a0[b]) * _x(link[(i, c)])
                     for b in colors for c in colors if eps3(a, b, c))
        return _x(link[(i, a)].jet(1)) + cross

    def field_strength_ij(i, j, a):
        return esum(eps3(a, b, c) * _x(link[(i, b)]) * _x(link[(j, c)])
                    for b in colors for c in colors if eps3(a, b, c))

    pieces = []
    for a in colors:
        for i in colors:
            pieces.append(HALF * field_strength_0i(i, a) ** 2)
        for i in colors:
            for j in colors:
                if i != j:
                    pieces.append(Expression.const(Fraction(-1, 4))
                                  * field_strength_ij(i, j, a) ** 2)

    decls = [
        CoordinateDecl("A0", ((1, 4),), discardable_hint=True),
        CoordinateDecl("A", ((1, 4), (1, 4))),
    ]

    scalar = ()
    if with_scalar:
        scalar = tuple(coordinate("phi", (w,)) for w in range(4))
        decls.append(CoordinateDecl("phi", ((0, 4),)))
        phi = [_x(q) for q in scalar]
        phidot = [_x(q.jet(1)) for q in scalar]
        cov0 = list(phidot)
        for a in colors:
            rot = _rotate(SU2_DOUBLET[a], phi)
            cov0 = [c - _x(a0[a]) * r for c, r in zip(cov0, rot)]
        pieces.extend(c * c for c in cov0)
        for i in colors:
            covi = [Expression.const(0)] * 4
            for a in colors:
                rot = _rotate(SU2_DOUBLET[a], phi)
                covi = [c - _x(link[(i, a)]) * r for c, r in zip(covi, rot)]
            pieces.extend(-(c * c) for c in covi)
        pieces.extend(-(p * p) for p in phi)  # invariant mass term

    lagrangian = esum(pieces)

    generators = []
    for c in colors:
        comps = [GeneratorComponent(a0[c], 1, ONE)]
        for a in colors:
            coeff = esum(eps3(a, b, c) * _x(a0[b]) for b in colors if eps3(a, b, c))
            if not coeff.is_zero():
                comps.append(GeneratorComponent(a0[a], 0, coeff))
        for i in colors:
            for a in colors:
                coeff = esum(eps3(a, b, c) * _x(link[(i, b)])
                             for b in colors if eps3(a, b, c))
                if not coeff.is_zero():
                    comps.append(GeneratorComponent(link[(i, a)], 0, coeff))
        if with_scalar:
            phi = [_x(q) for q in scalar]
            rot = _rotate(SU2_DOUBLET[c], phi)
            for w, coeff in enumerate(rot):
                if not coeff.is_zero():
                    comps.append(GeneratorComponent(scalar[w], 0, coeff))
        generators.append(GaugeGenerator(f"nu_{c}", tuple(comps)))

    suffix = "scalar" if with_scalar else "pure"
    return ModelSpec(
        name=f"ym_mechanics(su2,{suffix})",
        coordinates=tuple(decls),
        lagrangian=lagrangian,
        generators=tuple(generators),
    )


# --- catalog ---------------------------------------------------------------------

def _bool_param(value, key):
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "false", "1", "0"):
        return value.lower() in ("true", "1")
    raise BadParameter(f"{key} must be a boolean, got {value!r}")


def _int_param(value, key):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise BadParameter(f"{key} must be an integer, got {value!r}") from None


BUILTIN_MODELS = {
    "toy_gauge": "one gauge parameter; velocity-shift invariance (no parameters)",
    "oscillator": "regular harmonic oscillator; no constraints (no parameters)",
    "second_class_toy": "purely second-class pair; multipliers get fixed (no parameters)",
    "maxwell_lattice": "abelian links on a periodic N^3 grid (N: int >= 1, default 2)",
    "ym_mechanics": "homogeneous su(2) gauge mechanics "
                    "(group: 'su2'; with_scalar: bool, default true)",
}


def builtin_model(name, params=None):
    """Instantiate a catalog model by name with key=value parameters."""
    params = dict(params or {})
    if name == "toy_gauge":
        factory = _toy_gauge
    elif name == "oscillator":
        factory = _oscillator
    elif name == "second_class_toy":
        factory = _second_class_toy
    elif name == "maxwell_lattice":
        n = _int_param(params.pop("N", 2), "N")
        factory = lambda: _maxwell_lattice(n)
    elif name == "ym_mechanics":
        group = params.pop("group", "su2")
        with_scalar = _bool_param(params.pop("with_scalar", True), "with_scalar")
        factory = lambda: _ym_mechanics(group, with_scalar)
    else:
        raise UnknownBuiltin(
            f"unknown builtin '{name}'; available: {', '.join(sorted(BUILTIN_MODELS))}")
    if params:
        raise BadParameter(f"unknown parameter(s) for {name}: {', '.join(sorted(params))}")
    return factory()
