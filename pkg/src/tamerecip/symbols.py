"""Valuation pairing, sign term, tame symbols and the Kummer map.

Everything here depends only on the leading monomial ``c * u^alpha * t^a``
of each argument (see :meth:`TwoLocalElement.leading_data`), which is
certified at the minimal precision by the series layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .gfield import FieldElement, FiniteField, element_order, norm_to_base
from .laurent import LaurentSeries, TwoLocalElement


class KummerError(ValueError):
    """The Kummer hypothesis m | q - 1 fails."""


@dataclass(frozen=True)
class SymbolValue:
    """A symbol value in k'*, optionally with its norm to the base field."""

    value: FieldElement
    normed: FieldElement | None = None

    @property
    def field(self) -> FiniteField:
        return self.value.field

    def norm(self, base: FiniteField) -> "SymbolValue":
        return SymbolValue(self.value, norm_to_base(self.value, base))

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolValue):
            return self.value == other.value
        return self.value == other

    def __hash__(self) -> int:
        return hash(self.value)

    def __mul__(self, other: "SymbolValue") -> "SymbolValue":
        return SymbolValue(self.value * other.value)

    def __pow__(self, e: int) -> "SymbolValue":
        return SymbolValue(self.value ** e)

    def inverse(self) -> "SymbolValue":
        return SymbolValue(self.value.inverse())

    def __str__(self) -> str:
        return str(self.value)


def _lead(f: TwoLocalElement) -> tuple[int, int, int]:
    return f.leading_data()


def _pair(lf: tuple[int, int, int], lg: tuple[int, int, int]) -> int:
    # nu_Kbar of f^{nu(g)} / g^{nu(f)} read off the leading monomials
    return lg[0] * lf[1] - lf[0] * lg[1]


def nu_pair(f: TwoLocalElement, g: TwoLocalElement) -> int:
    """nu_K(f, g) = nu_Kbar(f^{nu_K(g)} / g^{nu_K(f)} mod m_K)."""
    return _pair(_lead(f), _lead(g))


def _sign_exponent(fg: int, gh: int, hf: int) -> int:
    # A with nu(g,f) = -nu(f,g) etc.
    return fg * (-hf) + gh * (-fg) + hf * (-gh) + fg * gh * hf


def sign3(f: TwoLocalElement, g: TwoLocalElement, h: TwoLocalElement) -> FieldElement:
    """(-1)^A as an element of the coefficient field."""
    lf, lg, lh = _lead(f), _lead(g), _lead(h)
    A = _sign_exponent(_pair(lf, lg), _pair(lg, lh), _pair(lh, lf))
    F = f.field
    return F.one if A % 2 == 0 else -F.one


def tame2_from_leads(field: FiniteField, lf, lg, lh) -> FieldElement:
    """The two-dimensional tame symbol from leading data (a, alpha, c)."""
    fg, gh, hf = _pair(lf, lg), _pair(lg, lh), _pair(lh, lf)
    # the t- and u-exponents of f^gh g^hf h^fg cancel identically
    if (gh * lf[0] + hf * lg[0] + fg * lh[0] != 0
            or gh * lf[1] + hf * lg[1] + fg * lh[1] != 0):
        raise ArithmeticError("internal error: monomial part of tame symbol is not a unit")
    F = field
    code = F.mul(F.mul(F.pow(lf[2], gh), F.pow(lg[2], hf)), F.pow(lh[2], fg))
    if _sign_exponent(fg, gh, hf) % 2:
        code = F.neg(code)
    return FieldElement(F, code)


def tame2(f: TwoLocalElement, g: TwoLocalElement, h: TwoLocalElement) -> SymbolValue:
    """(f, g, h)_K = sgn(f,g,h) f^{nu(g,h)} g^{nu(h,f)} h^{nu(f,g)} mod m_K mod m_Kbar."""
    F = f.field
    if g.field != F or h.field != F:
        raise ValueError("arguments over different fields")
    return SymbolValue(tame2_from_leads(F, _lead(f), _lead(g), _lead(h)))


def tame1(f: LaurentSeries, g: LaurentSeries) -> FieldElement:
    """(-1)^{nu(f)nu(g)} f^{nu(g)} g^{-nu(f)} mod m_Kbar."""
    F = f.field
    if g.field != F:
        raise ValueError("arguments over different fields")
    fs, gs = f.resolved(), g.resolved()
    m, n = fs.val, gs.val
    code = F.mul(F.pow(fs.coeffs[0], n), F.pow(gs.coeffs[0], -m))
    if (m * n) % 2:
        code = F.neg(code)
    return FieldElement(F, code)


def _check_kummer(field: FiniteField, m: int) -> None:
    if m < 1 or (field.q - 1) % m:
        raise KummerError(f"Kummer hypothesis violated: {m} does not divide {field.q - 1}")


def kummer_map(f: TwoLocalElement, g: TwoLocalElement, a: TwoLocalElement, m: int) -> FieldElement:
    """phi_{L/K}((f, g)) = (f, g, a)_K^{(q-1)/m}, an element of mu_m."""
    F = f.field
    _check_kummer(F, m)
    return tame2(f, g, a).value ** ((F.q - 1) // m)


def _cyclic_order(k: int, m: int) -> int:
    return m // gcd(k, m)


def kummer_galois_order(a: TwoLocalElement, m: int) -> int:
    """Order of the class of ``a`` in K*/K*^m.

    K* splits as t^Z x u^Z x k'* x (1 + m), and principal units are m-th
    powers since p does not divide m, so the class is read off the
    t-valuation, the u-valuation of the unit part and the last residue.
    """
    F = a.field
    _check_kummer(F, m)
    ta, ua, c = _lead(a)
    l_t = _cyclic_order(ta, m)
    l_u = _cyclic_order(ua, m)
    l_c = element_order(FieldElement(F, F.pow(c, (F.q - 1) // m)))
    l = 1
    for x in (l_t, l_u, l_c):
        l = l * x // gcd(l, x)
    return l


def kummer_generator_values(a: TwoLocalElement, m: int) -> list[FieldElement]:
    """kummer_map on the pairs (u, t), (c, t), (c, u) with c a generator of k'*."""
    F = a.field
    u, t = TwoLocalElement.u(F), TwoLocalElement.t(F)
    c = TwoLocalElement.constant(F, F.generator())
    return [kummer_map(x, y, a, m) for x, y in ((u, t), (c, t), (c, u))]


def is_unit_reduction_triple(*args: TwoLocalElement) -> bool:
    """All arguments units of O_K whose reductions are units of k'[[u]]."""
    return all(x.leading_data()[:2] == (0, 0) for x in args)
