"""Univariate and bivariate polynomials over finite fields.

Coefficients are raw field codes.  Univariate factorization is the usual
squarefree / distinct-degree / equal-degree pipeline; the equal-degree
step draws its splitting polynomials from a fixed-seed generator so that
results are reproducible (factors are returned sorted anyway).
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .gfield import FiniteField


class UPoly:
    """Polynomial in one variable, coefficients little-endian."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[int]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, field: FiniteField) -> "UPoly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FiniteField, c: int) -> "UPoly":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: "UPoly") -> "UPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UPoly(F, [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
                         for i in range(n)])

    def __neg__(self) -> "UPoly":
        return UPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly(F, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return UPoly(F, out)

    def scale(self, c: int) -> "UPoly":
        return UPoly(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lead()))

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        inv = F.inv(other.lead())
        q = [0] * max(0, len(r) - d)
        b = other.coeffs
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if c == 0:
                continue
            c = F.mul(c, inv)
            q[k - d] = c
            for i, y in enumerate(b):
                if y:
                    r[k - d + i] = F.sub(r[k - d + i], F.mul(c, y))
        return UPoly(F, q), UPoly(F, r[:d] if d > 0 else [])

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def divexact(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self) -> "UPoly":
        F = self.field
        return UPoly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, mod: "UPoly") -> "UPoly":
        result = UPoly.const(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def embed(self, emb) -> "UPoly":
        return UPoly(emb.target, [emb.code(c) for c in self.coeffs])

    def __repr__(self) -> str:
        return f"UPoly({list(self.coeffs)} over {self.field!r})"


def ugcd(a: UPoly, b: UPoly) -> UPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _pth_root(f: UPoly) -> UPoly:
    F = f.field
    p = F.p
    inv_frob = F.q // p  # x -> x^(q/p) inverts Frobenius on F
    return UPoly(F, [F.pow(f.coeffs[i], inv_frob) for i in range(0, len(f.coeffs), p)])


def squarefree_factorization(f: UPoly) -> list[tuple[UPoly, int]]:
    """Monic squarefree factors with multiplicities."""
    out: list[tuple[UPoly, int]] = []
    f = f.monic()
    if f.degree < 1:
        return out
    p = f.field.p

    def rec(g: UPoly, mult: int):
        if g.degree < 1:
            return
        d = g.derivative()
        if d.is_zero():
            rec(_pth_root(g), mult * p)
            return
        c = ugcd(g, d)
        w = g.divexact(c)
        i = 1
        while w.degree > 0:
            y = ugcd(w, c)
            z = w.divexact(y)
            if z.degree > 0:
                out.append((z, i * mult))
            i += 1
            w = y
            c = c.divexact(y)
        if c.degree > 0:
            rec(_pth_root(c), mult * p)

    rec(f, 1)
    return out


def distinct_degree(f: UPoly) -> list[tuple[UPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    F = f.field
    out = []
    x = UPoly.x(F)
    h = x
    d = 0
    g = f
    while g.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(F.q, g)
        c = ugcd(g, h - x)
        if c.degree > 0:
            out.append((c, d))
            g = g.divexact(c)
            h = h % g
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def equal_degree(f: UPoly, d: int, rng: random.Random | None = None) -> list[UPoly]:
    """Irreducible factors of a monic squarefree f whose factors all have degree d."""
    if f.degree == d:
        return [f]
    F = f.field
    rng = rng or random.Random(0x5EED)
    n = f.degree
    while True:
        a = UPoly(F, [rng.randrange(F.q) for _ in range(n)])
        if a.degree < 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1)) with q = 2^k
            k = F.d
            t = a
            s = a
            for _ in range(k * d - 1):
                t = (t * t) % f
                s = s + t
            b = s
        else:
            b = a.powmod((F.q**d - 1) // 2, f) - UPoly.const(F, 1)
        g = ugcd(f, b)
        if 0 < g.degree < n:
            return equal_degree(g, d, rng) + equal_degree(f.divexact(g), d, rng)


def factor(f: UPoly) -> tuple[int, list[tuple[UPoly, int]]]:
    """(leading coefficient, sorted monic irreducible factors with multiplicity)."""
    if f.is_zero():
        raise ZeroDivisionError("cannot factor zero")
    lc = f.lead()
    out = []
    for g, m in squarefree_factorization(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d):
                out.append((irr, m))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return lc, out


def roots_in(f: UPoly, emb) -> list[int]:
    """Distinct roots (codes) of f in the target of ``emb``, sorted."""
    E = emb.target
    g = f.embed(emb).monic()
    if g.degree < 1:
        return []
    x = UPoly.x(E)
    h = ugcd(g, x.powmod(E.q, g) - x)
    if h.degree < 1:
        return []
    roots = []
    for lin in equal_degree(h, 1):
        roots.append(E.neg(lin.coeffs[0]))
    return sorted(roots)


# -- bivariate polynomials --

Monomial = tuple[int, int]


class BiPoly:
    """Polynomial in two variables as {(i, j): code} meaning c * x^i * y^j."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FiniteField, terms: dict[Monomial, int] | Iterable = ()):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        self.field = field
        self.terms = {m: c for m, c in items if c}

    @classmethod
    def const(cls, field: FiniteField, c: int) -> "BiPoly":
        return cls(field, {(0, 0): c})

    @classmethod
    def x(cls, field: FiniteField) -> "BiPoly":
        return cls(field, {(1, 0): 1})

    @classmethod
    def y(cls, field: FiniteField) -> "BiPoly":
        return cls(field, {(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def lead_monomial(self) -> Monomial:
        """Largest monomial in graded order: total degree, then y-degree."""
        return max(self.terms, key=lambda m: (m[0] + m[1], m[1]))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, 0), c)
        return BiPoly(F, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.field, {m: self.field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        F = self.field
        out: dict[Monomial, int] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                m = (i + k, j + l)
                out[m] = F.add(out.get(m, 0), F.mul(c, d))
        return BiPoly(F, out)

    def __pow__(self, e: int) -> "BiPoly":
        result = BiPoly.const(self.field, 1)
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c: int) -> "BiPoly":
        return BiPoly(self.field, {m: self.field.mul(c, v) for m, v in self.terms.items()})

    def normalized(self) -> tuple[int, "BiPoly"]:
        """(c, P/c) with the graded-lead coefficient of P/c equal to 1."""
        c = self.terms[self.lead_monomial()]
        return c, self.scale(self.field.inv(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def key(self) -> tuple:
        """Canonical sort key."""
        return (self.degree, tuple(sorted(self.terms.items(), key=lambda mc: (-mc[0][0] - mc[0][1], -mc[0][1], mc[0][0]))))

    def in_y(self) -> list[UPoly]:
        """Coefficients as a polynomial in y over k[x]."""
        F = self.field
        dy = self.deg_y
        cols: list[dict[int, int]] = [dict() for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            cols[j][i] = c
        return [UPoly(F, [col.get(i, 0) for i in range(max(col, default=-1) + 1)]) for col in cols]

    def eval_x(self, x0: int, emb) -> UPoly:
        """P(x0, y) as a polynomial in y over the target of ``emb``."""
        E = emb.target
        return UPoly(E, [c.embed(emb)(x0) for c in self.in_y()])

    def eval_y(self, y0: int, emb) -> UPoly:
        return self.swap().eval_x(y0, emb)

    def eval(self, x0: int, y0: int, emb) -> int:
        E = emb.target
        acc = 0
        for (i, j), c in self.terms.items():
            acc = E.add(acc, E.mul(emb.code(c), E.mul(E.pow(x0, i), E.pow(y0, j))))
        return acc

    def swap(self) -> "BiPoly":
        return BiPoly(self.field, {(j, i): c for (i, j), c in self.terms.items()})

    def substitute_y_linear(self, a: int, b: int) -> UPoly:
        """P(x, a*x + b) as a polynomial in x."""
        F = self.field
        lin = UPoly(F, (b, a))
        acc = UPoly(F, ())
        for cy in reversed(self.in_y()):
            acc = acc * lin + cy
        return acc

    def partial(self, var: int) -> "BiPoly":
        F = self.field
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[var]
            if e % F.p:
                m = (i - 1, j) if var == 0 else (i, j - 1)
                out[m] = F.mul(F.from_int(e), c)
        return BiPoly(F, out)

    def shift(self, x0: int, y0: int, emb) -> "BiPoly":
        """P(x0 + X, y0 + Y) over the target of ``emb``."""
        E = emb.target
        X = BiPoly(E, {(1, 0): 1, (0, 0): x0})
        Y = BiPoly(E, {(0, 1): 1, (0, 0): y0})
        xp = [BiPoly.const(E, 1)]
        yp = [BiPoly.const(E, 1)]
        for _ in range(self.deg_x):
            xp.append(xp[-1] * X)
        for _ in range(self.deg_y):
            yp.append(yp[-1] * Y)
        acc = BiPoly(E, {})
        for (i, j), c in self.terms.items():
            acc = acc + (xp[i] * yp[j]).scale(emb.code(c))
        return acc

    def divmod(self, other: "BiPoly") -> tuple["BiPoly", "BiPoly"]:
        """Division with respect to the lex order y > x."""
        F = self.field
        key = lambda m: (m[1], m[0])
        lm = max(other.terms, key=key)
        inv = F.inv(other.terms[lm])
        q: dict[Monomial, int] = {}
        r = BiPoly(F, dict(self.terms))
        rem: dict[Monomial, int] = {}
        while r.terms:
            m = max(r.terms, key=key)
            c = r.terms[m]
            if m[0] >= lm[0] and m[1] >= lm[1]:
                qm = (m[0] - lm[0], m[1] - lm[1])
                qc = F.mul(c, inv)
                q[qm] = F.add(q.get(qm, 0), qc)
                r = r - BiPoly(F, {qm: qc}) * other
            else:
                rem[m] = c
                del r.terms[m]
        return BiPoly(F, q), BiPoly(F, rem)

    def divexact(self, other: "BiPoly") -> "BiPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact bivariate division")
        return q

    def homogeneous_chart(self, chart: int, D: int | None = None) -> "BiPoly":
        """Dehomogenize the degree-D homogenization in chart 1 or 2.

        Chart 1 uses (s, r) = (X0/X1, X2/X1), chart 2 uses (X0/X2, X1/X2).
        """
        D = self.degree if D is None else D
        out = {}
        for (i, j), c in self.terms.items():
            s = D - i - j
            m = (s, j) if chart == 1 else (s, i)
            out[m] = c
        if chart == 0:
            return self
        return BiPoly(self.field, out)

    def __repr__(self) -> str:
        return f"BiPoly({format_bipoly(self)})"


def format_bipoly(P: BiPoly, names: Sequence[str] = ("x", "y")) -> str:
    F = P.field
    if not P.terms:
        return "0"
    parts = []
    for (i, j) in sorted(P.terms, key=lambda m: (-(m[0] + m[1]), -m[0])):
        c = P.terms[(i, j)]
        mono = []
        if i:
            mono.append(names[0] if i == 1 else f"{names[0]}^{i}")
        if j:
            mono.append(names[1] if j == 1 else f"{names[1]}^{j}")
        cs = F.format(c)
        if "+" in cs:
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif c == 1:
            parts.append("*".join(mono))
        else:
            parts.append("*".join([cs] + mono))
    return " + ".join(parts)


def resultant_y(P: BiPoly, Q: BiPoly) -> UPoly:
    """Res_y(P, Q) in k[x], via a fraction-free Sylvester determinant."""
    F = P.field
    a = P.in_y()
    b = Q.in_y()
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return UPoly(F, ())
    if m == 0:
        return _upow(a[0], n)
    if n == 0:
        return _upow(b[0], m)
    size = m + n
    zero = UPoly(F, ())
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + k] = a[m - k]
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + k] = b[n - k]
        rows.append(row)
    return _bareiss(rows)


def _upow(a: UPoly, e: int) -> UPoly:
    r = UPoly.const(a.field, 1)
    for _ in range(e):
        r = r * a
    return r


def _bareiss(M: list[list[UPoly]]) -> UPoly:
    n = len(M)
    F = M[0][0].field
    M = [list(r) for r in M]
    sign = 1
    prev = UPoly.const(F, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return UPoly(F, ())
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).divexact(prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det
