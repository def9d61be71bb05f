"""Verifiers for the reciprocity laws around a point, along a curve and globally.

Each verifier returns a :class:`SymbolReport` listing one factor per
branch flag: the local symbol in the residue field of the point and its
norm down to the base field.  Factors whose three arguments are units with
unit reductions are kept but marked trivial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .gfield import FieldElement, FiniteField, gf, norm_to_base
from .laurent import LaurentSeries
from .surface import (ClosedPoint, Curve, Flag, RationalFunction, closed_points_on_curve,
                      curves_through_point, expand_at_flag, flags_at, leading_data_at_flag,
                      union_support)
from .symbols import tame1, tame2, tame2_from_leads


@dataclass(frozen=True)
class ReportEntry:
    ident: str
    degree: int
    value: str
    normed: str
    trivial: bool = False


@dataclass
class SymbolReport:
    """Per-flag factors of a reciprocity product and the resulting verdict."""

    kind: str
    base: FiniteField
    entries: list[ReportEntry] = dc_field(default_factory=list)
    product: FieldElement | None = None
    parts: list["SymbolReport"] = dc_field(default_factory=list)
    label: str = ""

    def __post_init__(self):
        if self.product is None:
            self.product = self.base.one

    @property
    def verdict(self) -> bool:
        return self.product == self.base.one and all(p.verdict for p in self.parts)

    def add(self, ident: str, value: FieldElement, trivial: bool = False) -> None:
        normed = norm_to_base(value, self.base)
        self.entries.append(ReportEntry(ident, value.field.d // self.base.d,
                                        str(value), str(normed), trivial))
        self.product = self.product * normed

    def to_dict(self) -> dict:
        doc = {
            "kind": self.kind,
            "field": self.base.descriptor(),
            "label": self.label,
            "entries": [
                {"flag": e.ident, "degree": e.degree, "value": e.value,
                 "normed": e.normed, "trivial": e.trivial}
                for e in self.entries
            ],
            "product": str(self.product),
            "verdict": self.verdict,
        }
        if self.parts:
            doc["parts"] = [p.to_dict() for p in self.parts]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{self.kind} {self.label}".rstrip()]
        for e in self.entries:
            mark = "  [trivial factor]" if e.trivial else ""
            lines.append(f"  {e.ident}  d={e.degree}  value={e.value}  norm={e.normed}{mark}")
        for p in self.parts:
            lines.extend("  " + ln for ln in p.to_text().splitlines())
        lines.append(f"product = {self.product}")
        lines.append(f"verdict = {'true' if self.verdict else 'false'}")
        return "\n".join(lines)

    __str__ = to_text


def report_from_dict(doc: dict) -> tuple[str, bool]:
    """(product text, verdict) recovered from a serialized report."""
    return doc["product"], bool(doc["verdict"])


def _is_trivial(leads) -> bool:
    return all(l[:2] == (0, 0) for l in leads)


def _flag_symbol(flag: Flag, f, g, a) -> tuple[FieldElement, bool]:
    leads = [leading_data_at_flag(h, flag) for h in (f, g, a)]
    return tame2_from_leads(flag.field, *leads), _is_trivial(leads)


def flag_symbol(f: RationalFunction, g: RationalFunction, a: RationalFunction, flag: Flag
                ) -> FieldElement:
    """tame2 of the expansions of f, g, a at the flag, in the residue field of x."""
    return _flag_symbol(flag, f, g, a)[0]


def around_point(x: ClosedPoint, f: RationalFunction, g: RationalFunction,
                 a: RationalFunction, prefer_swap: bool = False) -> SymbolReport:
    rep = SymbolReport("around_point", f.field, label=str(x))
    for flag in curves_through_point(x, [f, g, a], prefer_swap):
        val, triv = _flag_symbol(flag, f, g, a)
        rep.add(flag.ident(), val, triv)
    return rep


def along_curve(C: Curve, f: RationalFunction, g: RationalFunction,
                a: RationalFunction, prefer_swap: bool = False) -> SymbolReport:
    rep = SymbolReport("along_curve", f.field, label=str(C))
    for x in closed_points_on_curve(C, [f, g, a]):
        for flag in flags_at(x, C, prefer_swap):
            val, triv = _flag_symbol(flag, f, g, a)
            rep.add(flag.ident(), val, triv)
    return rep


def global_product(f: RationalFunction, g: RationalFunction,
                   a: RationalFunction) -> SymbolReport:
    rep = SymbolReport("global", f.field, label=f"f={f} g={g} a={a}")
    for C in union_support([f, g, a]):
        part = along_curve(C, f, g, a)
        rep.parts.append(part)
        rep.product = rep.product * part.product
    return rep


def p1_line(field: FiniteField) -> Curve:
    """The line y = 0, our model of P^1 with coordinate x."""
    return Curve.parse("y", field)


def _restricted_lead(h: RationalFunction, flag: Flag) -> LaurentSeries:
    ta, ua, c = leading_data_at_flag(h, flag)
    if ta != 0:
        raise ValueError(f"{h} has a zero or pole along {flag.curve}")
    return LaurentSeries.monomial(flag.field, flag.field.element(c), ua)


def weil_on_curve(C: Curve | None, fbar: RationalFunction, gbar: RationalFunction
                  ) -> SymbolReport:
    """Product over the closed points of C of the normed tame1 of (fbar, gbar).

    ``C = None`` means P^1, modeled as the line y = 0 of P^2.
    """
    if C is None:
        C = p1_line(fbar.field)
    rep = SymbolReport("weil", fbar.field, label=str(C))
    for x in closed_points_on_curve(C, [fbar, gbar]):
        for flag in flags_at(x, C):
            val = tame1(_restricted_lead(fbar, flag), _restricted_lead(gbar, flag))
            rep.add(flag.ident(), val)
    return rep


def steinberg_check(f: RationalFunction, h: RationalFunction, flag: Flag,
                    a: RationalFunction | None = None) -> bool:
    """tame2(f, 1-f, h) = 1 and tame2(h, h, a) = tame2(-1, h, a) at the flag."""
    if f == RationalFunction.constant(f.field, 1):
        raise ValueError("Steinberg check needs f != 1")
    one_minus = 1 - f
    if a is None:
        a = f
    F, G, H, A = (expand_at_flag(r, flag) for r in (f, one_minus, h, a))
    minus_one = expand_at_flag(RationalFunction.constant(f.field, -1), flag)
    first = tame2(F, G, H) == flag.field.one
    second = tame2(H, H, A) == tame2(minus_one, H, A)
    return first and second
