"""The model surface P^2 over F_q: curves, closed points, flags, expansions.

Rational functions are kept factored as ``c * prod F_C^{e_C}`` over
irreducible affine curves C; the line at infinity then has multiplicity
``-sum e_C deg C``.  Points are handled in the standard charts of P^2:

* chart 0: ``(x, y) = (X1/X0, X2/X0)``,
* chart 1: ``(s, r) = (X0/X1, X2/X1)``,
* chart 2: ``(s, r) = (X0/X2, X1/X2)``,

always the chart of the first nonzero projective coordinate.  At a flag
``{x in C}`` the local coordinates are ``u`` = one chart coordinate
centred at x and transversal to C, and ``t = v - beta(u)`` where
``v = beta(u)`` is the branch of C solved by Newton iteration.  Any chart
polynomial then expands as an honest polynomial in t with u-series
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .gfield import Embedding, FieldElement, FiniteField, gf
from .laurent import DEFAULT_PREC, PREC_CAP, LaurentSeries, PrecisionError, TwoLocalElement
from .poly import BiPoly, UPoly, factor, format_bipoly, resultant_y, roots_in, ugcd
from .textparse import ParseError, parse_expression

MAX_COMPONENT_DEGREE = 3


class UnsupportedGeometry(ValueError):
    """The configuration lies outside the supported geometry."""


# -- curves --

class Curve:
    """An irreducible curve of P^2, given by a normalized affine polynomial.

    ``Curve.infinity(k)`` is the line at infinity X0 = 0.
    """

    __slots__ = ("field", "poly", "_chart_cache")

    def __init__(self, field: FiniteField, poly: BiPoly | None):
        self.field = field
        self.poly = poly
        self._chart_cache: dict[int, BiPoly] = {}

    @classmethod
    def infinity(cls, field: FiniteField) -> "Curve":
        return cls(field, None)

    @classmethod
    def from_poly(cls, P: BiPoly) -> "Curve":
        unit, facs = factor_bivariate(P)
        if len(facs) != 1 or facs[0][1] != 1:
            raise ValueError("curve polynomial is not irreducible")
        return facs[0][0]

    @classmethod
    def parse(cls, text: str, field: FiniteField) -> "Curve":
        t = text.strip().lower()
        if t in ("inf", "infinity", "x0"):
            return cls.infinity(field)
        return cls.from_poly(parse_polynomial(text, field))

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def chart_poly(self, chart: int) -> BiPoly:
        """Local equation in the coordinates of ``chart``."""
        if chart not in self._chart_cache:
            F = self.field
            if self.poly is None:
                P = BiPoly.const(F, 1) if chart == 0 else BiPoly(F, {(1, 0): 1})
            else:
                P = self.poly.homogeneous_chart(chart, self.poly.degree)
            self._chart_cache[chart] = P
        return self._chart_cache[chart]

    def key(self) -> tuple:
        if self.poly is None:
            return (1, ())
        return (0, self.poly.key())

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and self.field == other.field and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.field, self.poly))

    def __str__(self) -> str:
        return "{X0=0}" if self.poly is None else "{" + format_bipoly(self.poly) + "=0}"

    __repr__ = __str__


def _linear_candidates(F: FiniteField) -> Iterable[tuple[str, int, int]]:
    for c in range(F.q):
        yield ("x", 0, c)
    for a in range(F.q):
        for c in range(F.q):
            yield ("y", a, c)


def _linear_poly(F: FiniteField, kind: str, a: int, c: int) -> BiPoly:
    if kind == "x":
        return BiPoly(F, {(1, 0): 1, (0, 0): F.neg(c)})
    return BiPoly(F, {(0, 1): 1, (1, 0): F.neg(a), (0, 0): F.neg(c)})


def _divides_linear(P: BiPoly, kind: str, a: int, c: int) -> bool:
    if kind == "x":
        return P.eval_x(c, P.field.embedding(P.field)).is_zero()
    return P.substitute_y_linear(a, c).is_zero()


def factor_bivariate(P: BiPoly, max_degree: int = MAX_COMPONENT_DEGREE
                     ) -> tuple[int, list[tuple[Curve, int]]]:
    """(unit, [(Curve, multiplicity)]) for a nonzero polynomial over k.

    Linear factors are found by exhaustive search; a cofactor without
    linear factors is irreducible when its degree is at most 3.  Larger
    cofactors are rejected rather than guessed.
    """
    F = P.field
    if P.is_zero():
        raise ZeroDivisionError("zero polynomial has no divisor")
    facs: dict[BiPoly, int] = {}
    R = P
    while R.degree >= 1:
        found = None
        if R.degree >= 2:
            for kind, a, c in _linear_candidates(F):
                if _divides_linear(R, kind, a, c):
                    found = _linear_poly(F, kind, a, c)
                    break
        if found is None:
            if R.degree > max_degree:
                raise UnsupportedGeometry(
                    f"cannot certify factorization of a degree-{R.degree} component")
            _, Rn = R.normalized()
            facs[Rn] = facs.get(Rn, 0) + 1
            R = BiPoly.const(F, R.terms[R.lead_monomial()])
            break
        facs[found] = facs.get(found, 0) + 1
        R = R.divexact(found)
    unit = R.terms.get((0, 0), 0)
    out = sorted(((Curve(F, Q), e) for Q, e in facs.items()), key=lambda ce: ce[0].key())
    return unit, out


def parse_polynomial(text: str, field: FiniteField) -> BiPoly:
    def var(name):
        if name == "x":
            return BiPoly.x(field)
        if name == "y":
            return BiPoly.y(field)
        if name == "z" and field.d > 1:
            return BiPoly.const(field, field.z.code)
        raise ParseError(f"unknown symbol {name!r}")

    class _P:
        def __init__(self, p):
            self.p = p

        def __add__(self, o):
            return _P(self.p + o.p)

        def __sub__(self, o):
            return _P(self.p - o.p)

        def __mul__(self, o):
            return _P(self.p * o.p)

        def __neg__(self):
            return _P(-self.p)

        def __truediv__(self, o):
            if o.p.degree != 0:
                raise ParseError("polynomial text cannot divide by a nonconstant")
            return _P(self.p.scale(field.inv(o.p.terms[(0, 0)])))

        def __pow__(self, e):
            if e < 0:
                raise ParseError("negative power in polynomial")
            return _P(self.p ** e)

    return parse_expression(text, lambda n: _P(BiPoly.const(field, field.from_int(n))),
                            lambda n: _P(var(n))).p


# -- rational functions --

class RationalFunction:
    """c * prod_C F_C^{e_C} over irreducible affine curves C."""

    __slots__ = ("field", "unit", "factors")

    def __init__(self, field: FiniteField, unit: int, factors: Iterable[tuple[Curve, int]] = ()):
        if unit == 0:
            raise ZeroDivisionError("zero rational function")
        merged: dict[Curve, int] = {}
        for C, e in factors:
            if C.is_infinity:
                raise ValueError("the line at infinity is implicit in a rational function")
            merged[C] = merged.get(C, 0) + e
        self.field = field
        self.unit = unit
        self.factors = tuple(sorted(((C, e) for C, e in merged.items() if e),
                                    key=lambda ce: ce[0].key()))

    @classmethod
    def constant(cls, field: FiniteField, c: int | FieldElement) -> "RationalFunction":
        code = c.code if isinstance(c, FieldElement) else field.from_int(c)
        return cls(field, code)

    @classmethod
    def from_poly(cls, P: BiPoly) -> "RationalFunction":
        unit, facs = factor_bivariate(P)
        return cls(P.field, unit, facs)

    @classmethod
    def from_polys(cls, num: BiPoly, den: BiPoly) -> "RationalFunction":
        return cls.from_poly(num) / cls.from_poly(den)

    @classmethod
    def x(cls, field: FiniteField) -> "RationalFunction":
        return cls.from_poly(BiPoly.x(field))

    @classmethod
    def y(cls, field: FiniteField) -> "RationalFunction":
        return cls.from_poly(BiPoly.y(field))

    @classmethod
    def parse(cls, text: str, field: FiniteField) -> "RationalFunction":
        def var(name):
            if name == "x":
                return cls.x(field)
            if name == "y":
                return cls.y(field)
            if name == "z" and field.d > 1:
                return cls.constant(field, field.z)
            raise ParseError(f"unknown symbol {name!r}")

        def const(n):
            c = field.from_int(n)
            if c == 0:
                return _ZERO
            return cls.constant(field, c)

        v = parse_expression(text, const, var)
        if v is _ZERO:
            raise ParseError("rational function is zero")
        return v

    @property
    def num(self) -> BiPoly:
        P = BiPoly.const(self.field, self.unit)
        for C, e in self.factors:
            if e > 0:
                P = P * C.poly ** e
        return P

    @property
    def den(self) -> BiPoly:
        P = BiPoly.const(self.field, 1)
        for C, e in self.factors:
            if e < 0:
                P = P * C.poly ** (-e)
        return P

    @property
    def infinity_multiplicity(self) -> int:
        return -sum(e * C.degree for C, e in self.factors)

    def divisor(self) -> list[tuple[Curve, int]]:
        out = list(self.factors)
        m = self.infinity_multiplicity
        if m:
            out.append((Curve.infinity(self.field), m))
        return out

    def support(self) -> list[Curve]:
        return [C for C, _ in self.divisor()]

    def is_constant(self) -> bool:
        return not self.factors

    def __mul__(self, other):
        if other is _ZERO:
            return _ZERO
        other = _as_rf(other, self.field)
        return RationalFunction(self.field, self.field.mul(self.unit, other.unit),
                                self.factors + other.factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other, self.field)
        return self * other ** -1

    def __pow__(self, e: int):
        return RationalFunction(self.field, self.field.pow(self.unit, e),
                                [(C, m * e) for C, m in self.factors])

    def __neg__(self):
        return RationalFunction(self.field, self.field.neg(self.unit), self.factors)

    def _combine(self, other, sign: int):
        if other is _ZERO:
            return self
        other = _as_rf(other, self.field)
        F = self.field
        # common denominator from the factor lists
        den: dict[Curve, int] = {}
        for C, e in self.factors + other.factors:
            if e < 0:
                den[C] = max(den.get(C, 0), -e)

        def numer(f: RationalFunction) -> BiPoly:
            P = BiPoly.const(F, f.unit)
            exps = dict(den)
            for C, e in f.factors:
                exps[C] = exps.get(C, 0) + e
            for C, e in exps.items():
                if e:
                    P = P * C.poly ** e
            return P

        N = numer(self) + (numer(other) if sign > 0 else -numer(other))
        if N.is_zero():
            return _ZERO
        return RationalFunction.from_poly(N) * RationalFunction(F, 1, [(C, -e) for C, e in den.items()])

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalFunction) and self.field == other.field
                and self.unit == other.unit and self.factors == other.factors)

    def __hash__(self) -> int:
        return hash((self.unit, self.factors))

    def __str__(self) -> str:
        F = self.field
        parts = []
        if self.unit != 1 or not self.factors:
            parts.append(F.format(self.unit) if F.d == 1 else f"({F.format(self.unit)})")
        for C, e in self.factors:
            body = f"({format_bipoly(C.poly)})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return "*".join(parts)

    __repr__ = __str__


class _Zero:
    """Additive zero met while parsing; never a valid rational function."""

    def __add__(self, other):
        return other

    __radd__ = __add__

    def __sub__(self, other):
        return -other

    def __rsub__(self, other):
        return other

    def __mul__(self, other):
        return self

    __rmul__ = __mul__

    def __neg__(self):
        return self

    def __truediv__(self, other):
        return self

    def __pow__(self, e):
        if e <= 0:
            raise ZeroDivisionError("nonpositive power of zero")
        return self


_ZERO = _Zero()


def _as_rf(x, field: FiniteField) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, FieldElement)):
        return RationalFunction.constant(field, x)
    if x is _ZERO:
        raise ZeroDivisionError("division by zero")
    raise TypeError(f"cannot use {type(x).__name__} as a rational function")


def divisor(f: RationalFunction) -> list[tuple[Curve, int]]:
    return f.divisor()


def union_support(funcs: Sequence[RationalFunction]) -> list[Curve]:
    seen: dict[Curve, None] = {}
    for f in funcs:
        for C in f.support():
            seen.setdefault(C, None)
    return sorted(seen, key=lambda C: C.key())


# -- closed points --

class ClosedPoint:
    """A closed point of P^2 over k, stored by a canonical geometric point.

    ``coords`` are projective coordinates in the residue field E = F_{q^d},
    normalized so the first nonzero one is 1, and chosen as the smallest
    representative of the Frobenius orbit.
    """

    __slots__ = ("base", "field", "coords", "degree", "_emb")

    def __init__(self, base: FiniteField, field: FiniteField, coords: Sequence[int]):
        X = list(coords)
        lead = next((c for c in X if c), None)
        if lead is None:
            raise ValueError("all projective coordinates zero")
        inv = field.inv(lead)
        X = [field.mul(inv, c) for c in X]
        q = base.q
        orbit = [tuple(X)]
        cur = tuple(X)
        while True:
            cur = tuple(field.pow(c, q) for c in cur)
            if cur == orbit[0]:
                break
            orbit.append(cur)
        d = len(orbit)
        canon = min(orbit)
        target = gf(base.p, base.d * d)
        if target != field:
            emb = target.embedding(field)
            canon = min(tuple(emb.preimage(c).code for c in pt) for pt in orbit)
            field = target
        self.base = base
        self.field = field
        self.coords = tuple(canon)
        self.degree = d
        self._emb = base.embedding(field)

    @classmethod
    def affine(cls, base: FiniteField, x0, y0) -> "ClosedPoint":
        c = lambda v: v.code if isinstance(v, FieldElement) else base.from_int(v)
        E = gf(base.p, base.d)
        emb = base.embedding(E)
        return cls(base, E, (1, emb.code(c(x0)), emb.code(c(y0))))

    @property
    def embedding(self) -> Embedding:
        return self._emb

    @property
    def chart(self) -> int:
        return next(i for i, c in enumerate(self.coords) if c)

    @property
    def chart_coords(self) -> tuple[int, int]:
        X0, X1, X2 = self.coords
        ch = self.chart
        if ch == 0:
            return (X1, X2)
        if ch == 1:
            return (X0, X2)
        return (X0, X1)

    def conjugates(self) -> list[tuple[int, ...]]:
        out = [self.coords]
        cur = self.coords
        for _ in range(self.degree - 1):
            cur = tuple(self.field.pow(c, self.base.q) for c in cur)
            out.append(cur)
        return out

    def on_curve(self, C: Curve) -> bool:
        s0, r0 = self.chart_coords
        return C.chart_poly(self.chart).eval(s0, r0, self._emb) == 0

    def key(self) -> tuple:
        return (self.degree, self.chart, self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClosedPoint) and self.base == other.base and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        E = self.field
        f = E.format
        if self.chart == 0:
            body = f"({f(self.coords[1])},{f(self.coords[2])})"
        else:
            body = "(" + ":".join(f(c) for c in self.coords) + ")"
        return body if self.degree == 1 else f"{body}[deg {self.degree}]"

    __repr__ = __str__


def residue_degree(x: ClosedPoint) -> int:
    return x.degree


def _points_from_affine(base: FiniteField, P: BiPoly, Q: BiPoly) -> set[ClosedPoint]:
    """Closed points of the affine chart-0 intersection P = Q = 0."""
    out: set[ClosedPoint] = set()
    if P.deg_y <= 0 and Q.deg_y <= 0:
        return out
    R = resultant_y(P, Q)
    if R.is_zero():
        raise ArithmeticError("internal error: components share a factor")
    if R.degree < 1:
        return out
    _, facs = factor(R)
    for r, _m in facs:
        E1 = gf(base.p, base.d * r.degree)
        emb1 = base.embedding(E1)
        x0 = roots_in(r, emb1)[0]
        A, B = P.eval_x(x0, emb1), Q.eval_x(x0, emb1)
        h = B if A.is_zero() else (A if B.is_zero() else ugcd(A, B))
        if h.degree < 1:
            continue
        _, hf = factor(h)
        for s, _n in hf:
            E2 = gf(base.p, base.d * r.degree * s.degree)
            e12 = E1.embedding(E2)
            y0 = roots_in(s, e12)[0]
            out.add(ClosedPoint(base, E2, (1, e12.code(x0), y0)))
    return out


def _points_at_infinity(base: FiniteField, C: Curve, D: Curve) -> set[ClosedPoint]:
    out: set[ClosedPoint] = set()
    ident = base.embedding(base)
    A = C.chart_poly(1).eval_x(0, ident)
    B = D.chart_poly(1).eval_x(0, ident)
    h = B if A.is_zero() else (A if B.is_zero() else ugcd(A, B))
    if not h.is_zero() and h.degree >= 1:
        _, facs = factor(h)
        for s, _ in facs:
            E = gf(base.p, base.d * s.degree)
            emb = base.embedding(E)
            m0 = roots_in(s, emb)[0]
            out.add(ClosedPoint(base, E, (0, 1, m0)))
    corner = ClosedPoint(base, gf(base.p, base.d), (0, 0, 1))
    if corner.on_curve(C) and corner.on_curve(D):
        out.add(corner)
    return out


def intersect(C: Curve, D: Curve) -> list[ClosedPoint]:
    """Closed points of C cap D for distinct irreducible curves."""
    if C == D:
        raise ValueError("cannot intersect a curve with itself")
    base = C.field
    pts: set[ClosedPoint] = set()
    if not C.is_infinity and not D.is_infinity:
        pts |= _points_from_affine(base, C.poly, D.poly)
    pts |= _points_at_infinity(base, C, D)
    return sorted(pts, key=lambda p: p.key())


def closed_points_on_curve(C: Curve, funcs: Sequence[RationalFunction]) -> list[ClosedPoint]:
    """Points of C on the other components of the divisors of funcs, or at infinity."""
    base = C.field
    others = [D for D in union_support(funcs) if D != C]
    inf = Curve.infinity(base)
    if not C.is_infinity and inf not in others:
        others.append(inf)
    pts: set[ClosedPoint] = set()
    for D in others:
        pts.update(intersect(C, D))
    return sorted(pts, key=lambda p: p.key())


# -- flags and branches --

def _bipoly_to_series_coeffs(H: BiPoly) -> list[LaurentSeries]:
    """Coefficients of H(U, V) as exact u-series, indexed by the V-degree."""
    E = H.field
    return [LaurentSeries.from_poly(E, c.coeffs) for c in H.in_y()]


def _eval_in_v(coeffs: list[LaurentSeries], w: LaurentSeries) -> LaurentSeries:
    E = w.field
    acc = LaurentSeries.zero(E)
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc


@dataclass(eq=False)
class Flag:
    """A flag {x in C} with local coordinates (u, t).

    ``swap`` is False when u is the first chart coordinate (centred at x);
    the branch of C is v = beta(u) with beta = u^k * w(u), where w solves
    H(u, w) = 0 from the simple root w(0) = w0 (k = 0 at smooth points,
    k = 1 on a node branch).
    """

    point: ClosedPoint
    curve: Curve
    swap: bool
    H: BiPoly
    k: int
    w0: int
    branch_index: int = 0
    nodal: bool = False
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self) -> FiniteField:
        return self.point.field

    @property
    def chart(self) -> int:
        return self.point.chart

    def ident(self) -> str:
        tail = f"#{self.branch_index}" if self.nodal else ""
        return f"{self.point} in {self.curve}{tail}"

    def coordinates(self) -> tuple[str, str]:
        names = {0: ("x", "y"), 1: ("s", "r"), 2: ("s", "r")}[self.chart]
        s0, r0 = self.point.chart_coords
        E = self.field
        c = [f"{names[0]}-({E.format(s0)})", f"{names[1]}-({E.format(r0)})"]
        u, v = (c[1], c[0]) if self.swap else (c[0], c[1])
        return u, f"{v}-beta(u)"

    def key(self) -> tuple:
        return (self.point.key(), self.curve.key(), self.branch_index)

    def branch(self, prec: int) -> LaurentSeries:
        """beta(u) with absolute u-precision at least ``prec`` (or exact)."""
        hit = self._cache.get("beta")
        if hit is not None and (hit.exact or hit.abs_prec >= prec):
            return hit
        w = _newton(self.H, self.w0, max(prec - self.k, 1))
        beta = w.shift(self.k)
        self._cache["beta"] = beta
        return beta

    def local_poly(self, P: BiPoly) -> BiPoly:
        """A chart polynomial P (over k) recentred at x, as Psi(U, V)."""
        s0, r0 = self.point.chart_coords
        S = P.shift(s0, r0, self.point.embedding)
        return S.swap() if self.swap else S

    def __str__(self) -> str:
        return self.ident()


def _newton(H: BiPoly, w0: int, prec: int) -> LaurentSeries:
    """The power series w(u) with H(u, w) = 0 and w(0) = w0, to u-precision prec."""
    E = H.field
    coeffs = _bipoly_to_series_coeffs(H)
    dcoeffs = _bipoly_to_series_coeffs(H.partial(1))
    w = LaurentSeries.from_poly(E, [w0])
    k = 1
    while True:
        val = _eval_in_v(coeffs, w)
        if val.is_zero():
            return w
        if k >= prec:
            return w.truncate(prec) if w.abs_prec > prec else LaurentSeries(E, w.val, w.coeffs, exact=False)
        k = min(2 * k, prec)
        step = val * _eval_in_v(dcoeffs, w).invert(prec=k)
        nw = (w - step).truncate(k)
        w = LaurentSeries.from_poly(E, [nw.coefficient(i) for i in range(k)])


def _quadratic_part(S: BiPoly) -> tuple[int, int, int]:
    t = S.terms
    return t.get((2, 0), 0), t.get((1, 1), 0), t.get((0, 2), 0)


def _flags_at(x: ClosedPoint, C: Curve, prefer_swap: bool = False) -> list[Flag]:
    E = x.field
    G = C.chart_poly(x.chart)
    S = G.shift(*x.chart_coords, x.embedding)
    gu, gv = S.terms.get((1, 0), 0), S.terms.get((0, 1), 0)
    if gu or gv:
        # smooth: u is a coordinate along which C is a graph
        swap = gv == 0 or (prefer_swap and gu != 0)
        H = S.swap() if swap else S
        return [Flag(x, C, swap, H, 0, 0)]
    if E.p == 2:
        raise UnsupportedGeometry(f"singular point {x} of {C} in characteristic 2")
    A, B, Cc = _quadratic_part(S)
    disc = E.sub(E.mul(B, B), E.mul(E.from_int(4), E.mul(A, Cc)))
    if (A, B, Cc) == (0, 0, 0) or disc == 0:
        raise UnsupportedGeometry(f"{C} has a non-nodal singularity at {x}")
    ident = E.embedding(E)
    flags = []
    # tangents V = lam*U from A + B lam + C lam^2 = 0; a vertical tangent when C = 0
    lams = roots_in(UPoly(E, (A, B, Cc)), ident) if Cc else roots_in(UPoly(E, (A, B)), ident)
    need = 2 if Cc else 1
    if len(lams) != need:
        raise UnsupportedGeometry(f"node of {C} at {x} has tangents outside the residue field")
    branches = [(False, lam) for lam in lams]
    if not Cc:
        branches.append((True, 0))
    for idx, (swap, lam) in enumerate(branches):
        Psi = S.swap() if swap else S
        # H(U, W) = Psi(U, U*W) / U^2
        terms = {}
        for (i, j), c in Psi.terms.items():
            terms[(i + j - 2, j)] = c
        H = BiPoly(E, terms)
        flags.append(Flag(x, C, swap, H, 1, lam, branch_index=idx, nodal=True))
    return flags


def flags_at(x: ClosedPoint, C: Curve, prefer_swap: bool = False) -> list[Flag]:
    """The branch flags of C at x (one if smooth, two at a split node)."""
    if not x.on_curve(C):
        raise ValueError(f"{x} does not lie on {C}")
    return _flags_at(x, C, prefer_swap)


def curves_through_point(x: ClosedPoint, funcs: Sequence[RationalFunction],
                         prefer_swap: bool = False) -> list[Flag]:
    flags = []
    for C in union_support(funcs):
        if x.on_curve(C):
            flags.extend(_flags_at(x, C, prefer_swap))
    return sorted(flags, key=lambda fl: fl.key())


# -- expansions --

def _component_expansion(Psi: BiPoly, flag: Flag, uprec: int, on_flag_curve: bool
                         ) -> TwoLocalElement:
    """Psi(u, beta(u) + t) as an element of E((u))((t)), exact in t."""
    E = flag.field
    beta = flag.branch(uprec)
    A = _bipoly_to_series_coeffs(Psi)
    top = len(A) - 1
    bpows = [LaurentSeries.one(E)]
    for _ in range(top):
        bpows.append(bpows[-1] * beta)
    coeffs = []
    for m in range(top + 1):
        acc = LaurentSeries.zero(E)
        for j in range(m, top + 1):
            b = comb(j, m) % E.p
            if b and not A[j].is_zero():
                acc = acc + (A[j] * bpows[j - m]).scale(E.from_int(b))
        coeffs.append(acc)
    if on_flag_curve:
        if coeffs and coeffs[0].coeffs:
            raise ArithmeticError("internal error: curve equation does not vanish on its branch")
        # t * H(u, t): return H, shifted down by one
        return TwoLocalElement(E, 0, coeffs[1:], exact=True)
    return TwoLocalElement(E, 0, coeffs, exact=True)


def _factor_list(f: RationalFunction, chart: int) -> list[tuple[Curve, int]]:
    facs = list(f.factors)
    m = f.infinity_multiplicity
    if chart and m:
        facs.append((Curve.infinity(f.field), m))
    return facs


def _uprec_for(f: RationalFunction, flag: Flag, prec: int) -> int:
    bound = sum(abs(e) * C.degree for C, e in _factor_list(f, flag.chart))
    return prec + bound * max(flag.curve.degree, 1) + 2


def expand_at_flag(f: RationalFunction, flag: Flag, prec: int = DEFAULT_PREC) -> TwoLocalElement:
    """Image of f in k(x)((u))((t)), with a regenerator for more precision."""
    E = flag.field
    uprec = _uprec_for(f, flag, prec)
    result = TwoLocalElement.constant(E, E.element(flag.point.embedding.code(f.unit)))
    for C, e in _factor_list(f, flag.chart):
        Psi = flag.local_poly(C.chart_poly(flag.chart))
        X = _component_expansion(Psi, flag, uprec, C == flag.curve)
        if C == flag.curve:
            X = X * TwoLocalElement.t(E)
        if e < 0:
            X = X.invert(prec=prec)
        result = result * X ** abs(e)
    if result.is_fully_exact():
        return result
    out = _with_regen(result, lambda n: expand_at_flag(f, flag, n))
    return out


def _with_regen(x: TwoLocalElement, regen) -> TwoLocalElement:
    y = TwoLocalElement(x.field, x.val, x.coeffs, x.exact)
    y.regen = regen
    return y


def component_lead(C: Curve, flag: Flag, cap: int = PREC_CAP) -> tuple[int, int, int]:
    """Leading data (t-val, u-val, code) of the local equation of C at the flag."""
    cache = flag._cache.setdefault("leads", {})
    if C in cache:
        return cache[C]
    Psi = flag.local_poly(C.chart_poly(flag.chart))
    on = C == flag.curve
    uprec = DEFAULT_PREC + C.degree * flag.curve.degree
    while True:
        X = _component_expansion(Psi, flag, uprec, on)
        s = X.coefficient(0)
        if s.coeffs:
            lead = (1 if on else 0, s.val, s.coeffs[0])
            cache[C] = lead
            return lead
        if s.exact:
            raise ArithmeticError(f"internal error: {C} vanishes along {flag}")
        if uprec >= cap:
            raise PrecisionError(f"precision exhausted expanding {C} at {flag}")
        uprec = min(2 * uprec, cap)


def leading_data_at_flag(f: RationalFunction, flag: Flag, cap: int = PREC_CAP
                         ) -> tuple[int, int, int]:
    """Leading monomial data of expand_at_flag(f, flag), factor by factor."""
    E = flag.field
    a, alpha, c = 0, 0, flag.point.embedding.code(f.unit)
    for C, e in _factor_list(f, flag.chart):
        ta, ua, cc = component_lead(C, flag, cap)
        a += e * ta
        alpha += e * ua
        c = E.mul(c, E.pow(cc, e))
    return a, alpha, c


def restriction_at_flag(f: RationalFunction, flag: Flag, prec: int = DEFAULT_PREC) -> LaurentSeries:
    """The restriction of f to the flag curve, expanded in u (needs nu_K(f) = 0)."""
    X = expand_at_flag(f, flag, prec)
    if X.valuation() != 0:
        raise ValueError(f"{f} has a zero or pole along {flag.curve}")
    return X.lead_series()
