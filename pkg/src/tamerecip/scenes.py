"""Seeded random scenes for the reciprocity verifiers.

Functions are random products of lines and conics over the base field,
with small nonzero exponents and a random constant.  Point scenes force
every component through the chosen point; curve scenes mix components
meeting the curve at rational and non-rational points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gfield import FiniteField
from .poly import BiPoly
from .surface import (ClosedPoint, Curve, RationalFunction, UnsupportedGeometry,
                      curves_through_point, factor_bivariate, flags_at)


@dataclass(frozen=True)
class PointScene:
    point: ClosedPoint
    f: RationalFunction
    g: RationalFunction
    a: RationalFunction


@dataclass(frozen=True)
class CurveScene:
    curve: Curve
    f: RationalFunction
    g: RationalFunction
    a: RationalFunction


@dataclass(frozen=True)
class GlobalScene:
    f: RationalFunction
    g: RationalFunction
    a: RationalFunction


def _rand_unit(F: FiniteField, rng: random.Random) -> int:
    return rng.randrange(1, F.q)


def _centred(F: FiniteField, x0: int, y0: int) -> tuple[BiPoly, BiPoly]:
    X = BiPoly.x(F) - BiPoly.const(F, x0)
    Y = BiPoly.y(F) - BiPoly.const(F, y0)
    return X, Y


def random_line(F: FiniteField, rng: random.Random) -> Curve:
    while True:
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        if a or b:
            P = BiPoly(F, {(1, 0): a, (0, 1): b, (0, 0): c})
            return Curve.from_poly(P)


def random_line_through(F: FiniteField, rng: random.Random, x0: int, y0: int) -> Curve:
    X, Y = _centred(F, x0, y0)
    while True:
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        if a or b:
            return Curve.from_poly(X.scale(a) + Y.scale(b))


def _irreducible_conic(P: BiPoly) -> Curve | None:
    if P.degree != 2:
        return None
    try:
        _, facs = factor_bivariate(P)
    except UnsupportedGeometry:
        return None
    if len(facs) == 1 and facs[0][1] == 1:
        return facs[0][0]
    return None


def random_conic(F: FiniteField, rng: random.Random) -> Curve:
    while True:
        terms = {m: rng.randrange(F.q) for m in [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]}
        C = _irreducible_conic(BiPoly(F, terms))
        if C is not None and _smooth_everywhere(C):
            return C


def _smooth_everywhere(C: Curve) -> bool:
    # an irreducible conic is smooth unless it is a conjugate pair of lines
    P = C.poly
    F = P.field
    A, B, Cc = P.terms.get((2, 0), 0), P.terms.get((1, 1), 0), P.terms.get((0, 2), 0)
    D, E, G = P.terms.get((1, 0), 0), P.terms.get((0, 1), 0), P.terms.get((0, 0), 0)
    # determinant of the symmetric matrix of 2*P, valid in odd characteristic
    if F.p == 2:
        return False
    two = F.from_int(2)
    m = [[F.mul(two, A), B, D], [B, F.mul(two, Cc), E], [D, E, F.mul(two, G)]]
    det = 0
    for i in range(3):
        t = F.mul(m[0][i], F.sub(F.mul(m[1][(i + 1) % 3], m[2][(i + 2) % 3]),
                                 F.mul(m[1][(i + 2) % 3], m[2][(i + 1) % 3])))
        det = F.add(det, t)
    return det != 0


def random_conic_through(F: FiniteField, rng: random.Random, x0: int, y0: int) -> Curve:
    X, Y = _centred(F, x0, y0)
    while True:
        coeffs = [rng.randrange(F.q) for _ in range(5)]
        if not (coeffs[3] or coeffs[4]):
            continue
        P = (X * X).scale(coeffs[0]) + (X * Y).scale(coeffs[1]) + (Y * Y).scale(coeffs[2]) \
            + X.scale(coeffs[3]) + Y.scale(coeffs[4])
        C = _irreducible_conic(P)
        if C is not None and _smooth_everywhere(C):
            return C


def nodal_cubic_through(F: FiniteField, x0: int, y0: int) -> Curve:
    X, Y = _centred(F, x0, y0)
    return Curve.from_poly(Y * Y - X * X - X * X * X)


def _product(F: FiniteField, rng: random.Random, comps: list[Curve]) -> RationalFunction:
    facs = []
    for C in comps:
        e = rng.choice([-2, -1, 1, 1, 2])
        facs.append((C, e))
    return RationalFunction(F, _rand_unit(F, rng), facs)


def _pick(rng: random.Random, pool: list[Curve], lo: int, hi: int) -> list[Curve]:
    k = rng.randint(lo, min(hi, len(pool)))
    return rng.sample(pool, k)


def point_scene(F: FiniteField, rng: random.Random, nodal: bool = False) -> PointScene:
    """Random f, g, a whose components pass through a random rational point."""
    while True:
        x0, y0 = rng.randrange(F.q), rng.randrange(F.q)
        pool = [random_line_through(F, rng, x0, y0) for _ in range(3)]
        pool.append(random_conic_through(F, rng, x0, y0))
        if nodal:
            pool.append(nodal_cubic_through(F, x0, y0))
        pool.append(random_line(F, rng))
        pool = list(dict.fromkeys(pool))
        fs = [_product(F, rng, _pick(rng, pool, 1, 3)) for _ in range(3)]
        if nodal and not any(nodal_cubic_through(F, x0, y0) in h.support() for h in fs):
            fs[2] = fs[2] * RationalFunction(F, 1, [(nodal_cubic_through(F, x0, y0), 1)])
        x = ClosedPoint.affine(F, x0, y0)
        try:
            curves_through_point(x, fs)
        except UnsupportedGeometry:
            continue
        return PointScene(x, *fs)


def curve_scene(F: FiniteField, rng: random.Random) -> CurveScene:
    """A random line or smooth conic C with f, g, a built from random lines and conics."""
    C = random_line(F, rng) if rng.random() < 0.5 else random_conic(F, rng)
    pool = [random_line(F, rng) for _ in range(3)] + [random_conic(F, rng) for _ in range(2)]
    pool.append(C)
    pool = list(dict.fromkeys(pool))
    fs = [_product(F, rng, _pick(rng, pool, 1, 3)) for _ in range(3)]
    return CurveScene(C, *fs)


def global_scene(F: FiniteField, rng: random.Random) -> GlobalScene:
    pool = [random_line(F, rng) for _ in range(3)] + [random_conic(F, rng)]
    pool = list(dict.fromkeys(pool))
    fs = [_product(F, rng, _pick(rng, pool, 1, 2)) for _ in range(3)]
    return GlobalScene(*fs)
