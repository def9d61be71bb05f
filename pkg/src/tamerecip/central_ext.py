"""The symbol central extension of GL_n(K) restricted to monomial matrices.

A monomial matrix is stored as ``D * P_pi`` with D diagonal, so that
``g e_k = D[pi(k)] e_pi(k)``.  On the diagonal torus the extension is
given by the bimultiplicative cocycle

    sigma(diag(x), diag(y)) = prod_{i<j} {y_j, x_i},

where ``{f, g} = Nm tame2(f, g, a)``.  The orientation (which argument
comes first in the cross term) is fixed so that the commutator of lifts
of ``diag(y, 1, ...)`` and ``diag(1, x, 1, ...)`` is ``{x, y}``.  Lifts
to monomial matrices use the reordering factor of the permutation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .gfield import FieldElement, FiniteField, norm_to_base
from .laurent import TwoLocalElement
from .poly import BiPoly
from .reciprocity import SymbolReport, along_curve, around_point, global_product
from .surface import ClosedPoint, Curve, Flag, RationalFunction, expand_at_flag
from .symbols import tame2


class SymbolCocycle:
    """{f, g} = Nm_{k'/k} tame2(f, g, a) on K* x K*, extended to monomial matrices."""

    def __init__(self, a: TwoLocalElement, base: FiniteField | None = None,
                 flag: Flag | None = None):
        self.a = a
        self.base = base or a.field
        self.flag = flag

    @classmethod
    def at_flag(cls, a: RationalFunction, flag: Flag) -> "SymbolCocycle":
        return cls(expand_at_flag(a, flag), flag.point.base, flag)

    def entry(self, x) -> TwoLocalElement:
        if isinstance(x, TwoLocalElement):
            return x
        if isinstance(x, RationalFunction):
            if self.flag is None:
                raise ValueError("rational function entries need a flag")
            return expand_at_flag(x, self.flag)
        F = self.a.field
        return TwoLocalElement.constant(F, F.element(F.from_int(x)) if isinstance(x, int) else x)

    def symbol(self, f, g) -> FieldElement:
        v = tame2(self.entry(f), self.entry(g), self.a).value
        return norm_to_base(v, self.base)

    def torus(self, xs: Sequence, ys: Sequence) -> FieldElement:
        out = self.base.one
        n = len(xs)
        for i in range(n):
            for j in range(i + 1, n):
                out = out * self.symbol(ys[j], xs[i])
        return out

    def __call__(self, g1: "MonomialMatrix", g2: "MonomialMatrix") -> FieldElement:
        _same_size(g1, g2)
        moved = g2.conjugated_diag(g1.perm)
        return self.torus(g1.diag, moved) * self._reorder(g1.perm, g2.diag)

    def _reorder(self, perm: Sequence[int], diag: Sequence) -> FieldElement:
        out = self.base.one
        n = len(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    out = out * self.symbol(diag[i], diag[j])
        return out


@dataclass(frozen=True)
class MonomialMatrix:
    """D * P_pi: column k holds diag[pi(k)] in row pi(k)."""

    perm: tuple[int, ...]
    diag: tuple

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.diag) != n:
            raise ValueError("invalid monomial matrix")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def diagonal(cls, entries: Sequence) -> "MonomialMatrix":
        return cls(tuple(range(len(entries))), tuple(entries))

    @classmethod
    def identity(cls, n: int, one) -> "MonomialMatrix":
        return cls.diagonal([one] * n)

    def conjugated_diag(self, perm: Sequence[int]) -> tuple:
        """P_perm D P_perm^{-1} as a diagonal tuple: entry perm(k) is diag[k]."""
        out = [None] * len(perm)
        for k, pk in enumerate(perm):
            out[pk] = self.diag[k]
        return tuple(out)

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        _same_size(self, other)
        moved = other.conjugated_diag(self.perm)
        diag = tuple(a * b for a, b in zip(self.diag, moved))
        perm = tuple(self.perm[other.perm[k]] for k in range(self.n))
        return MonomialMatrix(perm, diag)

    def inverse(self) -> "MonomialMatrix":
        inv = [0] * self.n
        for k, pk in enumerate(self.perm):
            inv[pk] = k
        # (D P)^-1 = P^-1 D^-1 = (P^-1 D^-1 P) P^-1
        dinv = [x ** -1 for x in self.diag]
        moved = [None] * self.n
        for k in range(self.n):
            moved[inv[k]] = dinv[k]
        return MonomialMatrix(tuple(inv), tuple(moved))

    def equals(self, other: "MonomialMatrix") -> bool:
        return self.perm == other.perm and all(_entries_equal(a, b)
                                               for a, b in zip(self.diag, other.diag))

    def embed(self, n: int, one) -> "MonomialMatrix":
        """Upper-left corner embedding into GL_n."""
        if n < self.n:
            raise ValueError("cannot embed into a smaller group")
        perm = self.perm + tuple(range(self.n, n))
        return MonomialMatrix(perm, self.diag + (one,) * (n - self.n))


def _entries_equal(a, b) -> bool:
    if isinstance(a, TwoLocalElement) and isinstance(b, TwoLocalElement):
        return a.agrees_with(b)
    return a == b


def _same_size(g1: MonomialMatrix, g2: MonomialMatrix) -> None:
    if g1.n != g2.n:
        raise ValueError(f"size mismatch: {g1.n} vs {g2.n}")


@dataclass(frozen=True)
class LiftedElement:
    g: MonomialMatrix
    z: FieldElement

    def __post_init__(self):
        if self.z.code == 0:
            raise ValueError("central coordinate must be nonzero")


def ext_multiply(A: LiftedElement, B: LiftedElement, c: SymbolCocycle) -> LiftedElement:
    return LiftedElement(A.g * B.g, A.z * B.z * c(A.g, B.g))


def ext_inverse(A: LiftedElement, c: SymbolCocycle) -> LiftedElement:
    ginv = A.g.inverse()
    return LiftedElement(ginv, (A.z * c(A.g, ginv)).inverse())


def commutator_of_lifts(g1: MonomialMatrix, g2: MonomialMatrix, c: SymbolCocycle,
                        z1: FieldElement | None = None, z2: FieldElement | None = None
                        ) -> FieldElement:
    """Central coordinate of A B A^-1 B^-1 for lifts A of g1 and B of g2."""
    if not (g1 * g2).equals(g2 * g1):
        raise ValueError("commutator_of_lifts needs commuting matrices")
    one = c.base.one
    A = LiftedElement(g1, z1 or one)
    B = LiftedElement(g2, z2 or one)
    AB = ext_multiply(A, B, c)
    ABAi = ext_multiply(AB, ext_inverse(A, c), c)
    return ext_multiply(ABAi, ext_inverse(B, c), c).z


def canonical_pair(x, y, n: int, one) -> tuple[MonomialMatrix, MonomialMatrix]:
    """diag(y, 1, ..., 1) and diag(1, x, 1, ..., 1) in GL_n."""
    if n < 2:
        raise ValueError("the canonical pair needs n >= 2")
    d1 = [one] * n
    d2 = [one] * n
    d1[0] = y
    d2[1] = x
    return MonomialMatrix.diagonal(d1), MonomialMatrix.diagonal(d2)


def restriction_check(n: int, m: int, c: SymbolCocycle, pairs: Sequence[tuple] | None = None,
                      a_variant: SymbolCocycle | None = None) -> bool:
    """Corner restriction GL_m -> GL_n and flag-locality of the cocycle.

    ``pairs`` are (x, y) entries for canonical pairs; ``a_variant`` is a
    cocycle built from a datum differing from c's away from the flag.
    """
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    F = c.a.field
    one = TwoLocalElement.constant(F, F.one)
    if pairs is None:
        u, t = TwoLocalElement.u(F), TwoLocalElement.t(F)
        pairs = [(u, t), (t, u), (u * t, TwoLocalElement.constant(F, F.generator()))]
    ok = True
    for x, y in pairs:
        if m >= 2:
            g1, g2 = canonical_pair(x, y, m, one)
        else:
            g1, g2 = MonomialMatrix.diagonal([y]), MonomialMatrix.diagonal([x])
        native = commutator_of_lifts(g1, g2, c)
        corner = commutator_of_lifts(g1.embed(n, one), g2.embed(n, one), c)
        ok = ok and native == corner
        if a_variant is not None:
            ok = ok and native == commutator_of_lifts(g1, g2, a_variant)
    return ok


def principal_twist(a: RationalFunction, C: Curve) -> RationalFunction:
    """a * (1 + F_C): changes a away from C but not its class at flags on C."""
    if C.is_infinity:
        raise ValueError("the twist needs an affine curve")
    h = RationalFunction.from_poly(BiPoly.const(a.field, 1) + C.poly)
    return a * h


def default_generators(a: RationalFunction) -> list[RationalFunction]:
    F = a.field
    P = lambda s: RationalFunction.parse(s, F)
    return [P("x"), P("y"), P("1+x"), a]


def splitting_certificate(kind: str, a: RationalFunction, *, point: ClosedPoint | None = None,
                          curve: Curve | None = None,
                          samples: Sequence[RationalFunction] | None = None) -> SymbolReport:
    """Symbol triviality of the extension on a subgroup, over all sample pairs.

    ``kind`` is ``point``, ``curve``, ``global`` or ``scalar`` (n = 1,
    where the extension splits for any datum).
    """
    F = a.field
    rep = SymbolReport(f"certify_{kind}", F, label=f"a={a}")
    if kind == "scalar":
        return rep
    gens = list(samples) if samples is not None else default_generators(a)
    for f, g in combinations_with_replacement(gens, 2):
        if kind == "point":
            if point is None:
                raise ValueError("point certificate needs a point")
            part = around_point(point, f, g, a)
        elif kind == "curve":
            if curve is None:
                raise ValueError("curve certificate needs a curve")
            part = along_curve(curve, f, g, a)
        elif kind == "global":
            part = global_product(f, g, a)
        else:
            raise ValueError(f"unknown subgroup kind {kind!r}")
        part.label = f"f={f} g={g}"
        rep.parts.append(part)
        rep.product = rep.product * part.product
    return rep


def random_two_local(F: FiniteField, rng: random.Random, span: int = 2, terms: int = 3
                     ) -> TwoLocalElement:
    """A random nonzero exact element c u^i t^j (1 + small corrections)."""
    i, j = rng.randint(-span, span), rng.randint(-span, span)
    x = TwoLocalElement.monomial(F, F.element(rng.randrange(1, F.q)), i, j)
    for _ in range(terms - 1):
        c = F.element(rng.randrange(F.q))
        x = x + TwoLocalElement.monomial(F, c, i + rng.randint(1, 2), j) \
            + TwoLocalElement.monomial(F, c, i + rng.randint(-1, 1), j + 1)
    return x
