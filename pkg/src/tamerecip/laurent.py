"""Precision-tracked Laurent series, iterated once to model k'((u))((t)).

A :class:`LaurentSeries` stores a valuation offset ``val`` and a window of
coefficient codes for ``u^val, u^(val+1), ...``.  An inexact series knows
its coefficients only below ``val + len(coeffs)`` (its absolute
precision); an exact one is a finite Laurent polynomial.  A series whose
window is empty and which is inexact is "zero within precision": its
offset is then only a lower bound for the true valuation.

:class:`TwoLocalElement` is the same structure one layer up, with
coefficients that are themselves ``LaurentSeries`` in ``u``.

Both carry an optional *regenerator*, a pure function ``n -> series``
returning the same element with at least ``n`` known coefficients in each
layer.  Arithmetic propagates regenerators, so a value derived from exact
rational data can always be recomputed at doubled precision instead of
reporting a wrong zero.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .gfield import FieldElement, FiniteField

DEFAULT_PREC = 8
PREC_CAP = 128


class PrecisionError(ArithmeticError):
    """Precision exhausted: a value cannot be certified within the cap."""


class ConvergenceError(ValueError):
    """A substitution is not adically convergent."""


def _check_field(a, b):
    if a.field != b.field:
        raise ValueError(f"series over different fields {a.field} and {b.field}")


class LaurentSeries:
    """Element of k'((u)) known to finite precision (or exactly)."""

    __slots__ = ("field", "val", "coeffs", "exact", "regen")

    def __init__(self, field: FiniteField, val: int, coeffs: Sequence[int],
                 exact: bool = False,
                 regen: Callable[[int], "LaurentSeries"] | None = None):
        coeffs = list(coeffs)
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        val += start
        coeffs = coeffs[start:]
        if exact:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if not coeffs:
                val = 0
            regen = None
        self.field = field
        self.val = val
        self.coeffs = tuple(coeffs)
        self.exact = exact
        self.regen = regen

    # -- constructors --

    @classmethod
    def zero(cls, field: FiniteField) -> "LaurentSeries":
        return cls(field, 0, (), exact=True)

    @classmethod
    def one(cls, field: FiniteField) -> "LaurentSeries":
        return cls(field, 0, (1,), exact=True)

    @classmethod
    def monomial(cls, field: FiniteField, c: int | FieldElement, i: int) -> "LaurentSeries":
        code = c.code if isinstance(c, FieldElement) else field.from_int(c)
        return cls(field, i, (code,), exact=True)

    @classmethod
    def big_o(cls, field: FiniteField, k: int) -> "LaurentSeries":
        """The unknown term O(u^k)."""
        return cls(field, k, (), exact=False)

    @classmethod
    def from_poly(cls, field: FiniteField, coeffs: Sequence[int], val: int = 0) -> "LaurentSeries":
        return cls(field, val, coeffs, exact=True)

    # -- inspection --

    @property
    def abs_prec(self) -> float:
        return float("inf") if self.exact else self.val + len(self.coeffs)

    @property
    def rel_prec(self) -> float:
        return float("inf") if self.exact else len(self.coeffs)

    def is_zero(self) -> bool:
        """True only for the exact zero."""
        return self.exact and not self.coeffs

    def is_known_nonzero(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, i: int) -> int:
        if i < self.val:
            if self.coeffs or self.exact:
                return 0
        if i >= self.abs_prec:
            raise PrecisionError(f"coefficient of u^{i} beyond precision {self.abs_prec}")
        k = i - self.val
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def extend(self, n: int, cap: int = PREC_CAP) -> "LaurentSeries":
        """Return the same element with relative precision >= n if possible."""
        if self.exact or len(self.coeffs) >= n or self.regen is None:
            return self
        m = n
        best = self
        while m <= cap:
            s = self.regen(m)
            if s.exact or len(s.coeffs) >= n:
                return s
            best = s
            m *= 2
        return best

    def resolved(self, cap: int = PREC_CAP) -> "LaurentSeries":
        """Same element with a certified nonzero leading coefficient."""
        if self.coeffs:
            return self
        if self.exact:
            raise ZeroDivisionError("exact zero has no valuation")
        if self.regen is not None:
            m = DEFAULT_PREC
            while m <= cap:
                s = self.regen(m)
                if s.coeffs:
                    return s
                if s.exact:
                    raise ZeroDivisionError("series is exactly zero")
                m *= 2
        raise PrecisionError("precision exhausted: series is zero within precision")

    def valuation(self, cap: int = PREC_CAP) -> int:
        return self.resolved(cap).val

    def lead(self, cap: int = PREC_CAP) -> FieldElement:
        s = self.resolved(cap)
        return FieldElement(self.field, s.coeffs[0])

    def truncate(self, abs_prec: int) -> "LaurentSeries":
        """Drop information at and above u^abs_prec."""
        if abs_prec >= self.abs_prec:
            return self
        k = max(0, abs_prec - self.val)
        kept = tuple(self.coeffs[:k]) + (0,) * max(0, k - len(self.coeffs))
        return LaurentSeries(self.field, min(self.val, abs_prec) if self.coeffs else abs_prec,
                             kept, exact=False, regen=self.regen)

    # -- arithmetic --

    def _derive(self, others, op) -> Callable[[int], "LaurentSeries"] | None:
        args = (self,) + tuple(others)
        if all(a.exact or a.regen is None for a in args):
            if any(not a.exact for a in args):
                return None
        if all(a.exact for a in args):
            return None
        return lambda n: op(*(a.extend(n) for a in args))

    def _add(self, other: "LaurentSeries", neg: bool) -> "LaurentSeries":
        F = self.field
        exact = self.exact and other.exact
        lo = min(self.val, other.val)
        if exact:
            hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        else:
            hi = int(min(self.abs_prec, other.abs_prec))
        if hi <= lo:
            return LaurentSeries(F, hi, (), exact=exact)
        out = [0] * (hi - lo)
        for k, c in enumerate(self.coeffs):
            i = self.val + k - lo
            if i < len(out):
                out[i] = c
        add = F.sub if neg else F.add
        for k, c in enumerate(other.coeffs):
            i = other.val + k - lo
            if i < len(out):
                out[i] = add(out[i], c)
        return LaurentSeries(F, lo, out, exact=exact)

    def __add__(self, other):
        other = _as_series(other, self.field)
        _check_field(self, other)
        r = self._add(other, False)
        r.regen = self._derive((other,), LaurentSeries.__add__)
        return r

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_series(other, self.field)
        _check_field(self, other)
        r = self._add(other, True)
        r.regen = self._derive((other,), LaurentSeries.__sub__)
        return r

    def __rsub__(self, other):
        return _as_series(other, self.field) - self

    def __neg__(self):
        F = self.field
        r = LaurentSeries(F, self.val, [F.neg(c) for c in self.coeffs], self.exact)
        r.regen = self._derive((), LaurentSeries.__neg__)
        return r

    def __mul__(self, other):
        other = _as_series(other, self.field)
        _check_field(self, other)
        F = self.field
        a, b = self, other
        val = a.val + b.val
        if a.exact and b.exact:
            n = len(a.coeffs) + len(b.coeffs) - 1 if a.coeffs and b.coeffs else 0
        else:
            # absolute precision of the product, valuations taken as lower bounds
            bounds = []
            if not a.exact:
                bounds.append(a.abs_prec + (b.val if b.coeffs or not b.exact else 0))
            if not b.exact:
                bounds.append(b.abs_prec + (a.val if a.coeffs or not a.exact else 0))
            if (a.exact and not a.coeffs) or (b.exact and not b.coeffs):
                return LaurentSeries.zero(F)
            n = max(0, int(min(bounds)) - val)
        out = [0] * n
        mul, add = F.mul, F.add
        ac, bc = a.coeffs, b.coeffs
        for i, x in enumerate(ac):
            if x == 0 or i >= n:
                continue
            for j in range(min(len(bc), n - i)):
                y = bc[j]
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
        r = LaurentSeries(F, val, out, exact=a.exact and b.exact)
        r.regen = self._derive((other,), LaurentSeries.__mul__)
        return r

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentSeries":
        F = self.field
        if c == 0:
            return LaurentSeries.zero(F)
        r = LaurentSeries(F, self.val, [F.mul(c, x) for x in self.coeffs], self.exact)
        r.regen = None if self.regen is None else (lambda n: self.extend(n).scale(c))
        return r

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by u^k."""
        r = LaurentSeries(self.field, self.val + k, self.coeffs, self.exact)
        r.regen = None if self.regen is None else (lambda n: self.extend(n).shift(k))
        return r

    def invert(self, prec: int | None = None, cap: int = PREC_CAP) -> "LaurentSeries":
        s = self.resolved(cap)
        F = self.field
        c = s.coeffs
        if s.exact and len(c) == 1:
            return LaurentSeries(F, -s.val, (F.inv(c[0]),), exact=True)
        if s.exact:
            n = prec or DEFAULT_PREC
            regen = lambda m: s.invert(prec=m, cap=cap)
        else:
            n = len(c)
            regen = None if s.regen is None else (lambda m: s.extend(m).invert(cap=cap))
        inv0 = F.inv(c[0])
        out = [inv0]
        mul, add, neg = F.mul, F.add, F.neg
        for j in range(1, n):
            acc = 0
            for i in range(1, min(j, len(c) - 1) + 1):
                if c[i]:
                    acc = add(acc, mul(c[i], out[j - i]))
            out.append(neg(mul(inv0, acc)))
        return LaurentSeries(F, -s.val, out, exact=False, regen=regen)

    def __truediv__(self, other):
        other = _as_series(other, self.field)
        return self * other.invert()

    def __rtruediv__(self, other):
        return _as_series(other, self.field) * self.invert()

    def __pow__(self, e: int):
        if e < 0:
            return self.invert() ** (-e)
        result = LaurentSeries.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """True if the two series coincide on their common window."""
        d = self - other
        return not d.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field == other.field and self.val == other.val
                and self.coeffs == other.coeffs and self.exact == other.exact)

    def __hash__(self) -> int:
        return hash((self.val, self.coeffs, self.exact))

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"LaurentSeries({format_series(self)})"


def _as_series(x, field: FiniteField) -> LaurentSeries:
    if isinstance(x, LaurentSeries):
        return x
    if isinstance(x, FieldElement):
        if x.field != field:
            raise ValueError("scalar from another field")
        return LaurentSeries(field, 0, (x.code,), exact=True)
    if isinstance(x, int):
        return LaurentSeries(field, 0, (field.from_int(x),), exact=True)
    raise TypeError(f"cannot use {type(x).__name__} as a series")


def _coef_text(field: FiniteField, c: int) -> str:
    s = field.format(c)
    return f"({s})" if "+" in s else s


def _mono(field: FiniteField, c: int, parts: list[str]) -> str:
    if not parts:
        return _coef_text(field, c)
    body = "*".join(parts)
    if c == 1:
        return body
    return f"{_coef_text(field, c)}*{body}"


def _upow(i: int) -> str:
    return "u" if i == 1 else f"u^{i}"


def _tpow(j: int) -> str:
    return "t" if j == 1 else f"t^{j}"


def _series_terms(s: LaurentSeries, tpart: list[str]) -> list[str]:
    terms = []
    for k, c in enumerate(s.coeffs):
        if c:
            i = s.val + k
            parts = ([_upow(i)] if i else []) + tpart
            terms.append(_mono(s.field, c, parts))
    if not s.exact:
        terms.append("*".join([f"O({_upow(int(s.abs_prec))})"] + tpart))
    return terms


def format_series(s: LaurentSeries) -> str:
    terms = _series_terms(s, [])
    return " + ".join(terms) if terms else "0"


class TwoLocalElement:
    """Element of K = k'((u))((t)), with LaurentSeries coefficients in u."""

    __slots__ = ("field", "val", "coeffs", "exact", "regen", "_lead_cache")

    def __init__(self, field: FiniteField, val: int, coeffs: Sequence[LaurentSeries],
                 exact: bool = False,
                 regen: Callable[[int], "TwoLocalElement"] | None = None):
        coeffs = list(coeffs)
        start = 0
        while start < len(coeffs) and coeffs[start].is_zero():
            start += 1
        val += start
        coeffs = coeffs[start:]
        if exact:
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
            if not coeffs:
                val = 0
        for c in coeffs:
            if c.field != field:
                raise ValueError("coefficient over a different field")
        self.field = field
        self.val = val
        self.coeffs = tuple(coeffs)
        self.exact = exact
        self.regen = None if self.is_fully_exact() else regen
        self._lead_cache = None

    # -- constructors --

    @classmethod
    def zero(cls, field: FiniteField) -> "TwoLocalElement":
        return cls(field, 0, (), exact=True)

    @classmethod
    def constant(cls, field: FiniteField, c: int | FieldElement) -> "TwoLocalElement":
        return cls.monomial(field, c, 0, 0)

    @classmethod
    def monomial(cls, field: FiniteField, c: int | FieldElement, i: int, j: int) -> "TwoLocalElement":
        """c * u^i * t^j."""
        return cls(field, j, (LaurentSeries.monomial(field, c, i),), exact=True)

    @classmethod
    def u(cls, field: FiniteField) -> "TwoLocalElement":
        return cls.monomial(field, 1, 1, 0)

    @classmethod
    def t(cls, field: FiniteField) -> "TwoLocalElement":
        return cls.monomial(field, 1, 0, 1)

    @classmethod
    def from_series(cls, s: LaurentSeries, j: int = 0) -> "TwoLocalElement":
        """s(u) * t^j."""
        regen = None
        if s.regen is not None:
            regen = lambda n: TwoLocalElement.from_series(s.extend(n), j)
        return cls(s.field, j, (s,), exact=True, regen=regen)

    @classmethod
    def big_o(cls, field: FiniteField, k: int) -> "TwoLocalElement":
        """The unknown term O(t^k)."""
        return cls(field, k, (), exact=False)

    # -- inspection --

    def is_fully_exact(self) -> bool:
        return self.exact and all(c.exact for c in self.coeffs)

    @property
    def abs_prec(self) -> float:
        return float("inf") if self.exact else self.val + len(self.coeffs)

    def is_zero(self) -> bool:
        return self.exact and not self.coeffs

    def coefficient(self, j: int) -> LaurentSeries:
        """The coefficient of t^j, a LaurentSeries in u."""
        if j >= self.abs_prec:
            raise PrecisionError(f"coefficient of t^{j} beyond precision")
        k = j - self.val
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        if k < 0 and not self.coeffs and not self.exact:
            raise PrecisionError("element is zero within precision")
        return LaurentSeries.zero(self.field)

    def extend(self, n: int, cap: int = PREC_CAP) -> "TwoLocalElement":
        """Same element with at least n known coefficients in each layer."""
        if self.regen is None:
            return self
        if self._has_prec(n):
            return self
        m = n
        best = self
        while m <= cap:
            s = self.regen(m)
            if s._has_prec(n):
                return s
            best = s
            m *= 2
        return best

    def _has_prec(self, n: int) -> bool:
        if not self.exact and len(self.coeffs) < n:
            return False
        return all(c.exact or len(c.coeffs) >= n for c in self.coeffs[:n])

    def resolved(self, cap: int = PREC_CAP) -> "TwoLocalElement":
        """Same element whose leading t-coefficient is certified nonzero."""
        if self.coeffs and self.coeffs[0].is_known_nonzero():
            return self
        if self.is_zero():
            raise ZeroDivisionError("exact zero")
        if self.regen is not None:
            m = DEFAULT_PREC
            while m <= cap:
                s = self.regen(m)
                if s.coeffs and s.coeffs[0].is_known_nonzero():
                    return s
                if s.is_zero():
                    raise ZeroDivisionError("element is exactly zero")
                m *= 2
            raise PrecisionError("precision exhausted: leading t-coefficient not certified")
        if self.coeffs:
            lead = self.coeffs[0].resolved(cap)
            return TwoLocalElement(self.field, self.val, (lead,) + self.coeffs[1:],
                                   self.exact)
        raise PrecisionError("precision exhausted: element is zero within precision")

    def valuation(self, cap: int = PREC_CAP) -> int:
        """nu_K: the t-adic valuation."""
        return self.resolved(cap).val

    def lead_series(self, cap: int = PREC_CAP) -> LaurentSeries:
        """The leading t-coefficient, certified nonzero."""
        return self.resolved(cap).coeffs[0].resolved(cap)

    def leading_data(self, cap: int = PREC_CAP) -> tuple[int, int, int]:
        """(t-valuation, u-valuation of the t-lead, last-residue code).

        The leading monomial c*u^alpha*t^a; tame symbols depend only on it.
        """
        if self._lead_cache is None:
            r = self.resolved(cap)
            s = r.coeffs[0].resolved(cap)
            self._lead_cache = (r.val, s.val, s.coeffs[0])
        return self._lead_cache

    # -- arithmetic --

    def _derive(self, others, op):
        args = (self,) + tuple(others)
        if any(a.regen is not None for a in args):
            return lambda n: op(*(a.extend(n) for a in args))
        return None

    def _add(self, other: "TwoLocalElement", neg: bool) -> "TwoLocalElement":
        F = self.field
        exact = self.exact and other.exact
        lo = min(self.val, other.val)
        if exact:
            hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        else:
            hi = int(min(self.abs_prec, other.abs_prec))
        if hi <= lo:
            return TwoLocalElement(F, hi, (), exact=exact)
        zero = LaurentSeries.zero(F)
        out = [zero] * (hi - lo)
        for k, c in enumerate(self.coeffs):
            i = self.val + k - lo
            if i < len(out):
                out[i] = c
        for k, c in enumerate(other.coeffs):
            i = other.val + k - lo
            if i < len(out):
                out[i] = out[i] - c if neg else out[i] + c
        return TwoLocalElement(F, lo, out, exact=exact)

    def __add__(self, other):
        other = _as_two(other, self.field)
        _check_field(self, other)
        r = self._add(other, False)
        r.regen = None if r.is_fully_exact() else self._derive((other,), TwoLocalElement.__add__)
        return r

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_two(other, self.field)
        _check_field(self, other)
        r = self._add(other, True)
        r.regen = None if r.is_fully_exact() else self._derive((other,), TwoLocalElement.__sub__)
        return r

    def __rsub__(self, other):
        return _as_two(other, self.field) - self

    def __neg__(self):
        r = TwoLocalElement(self.field, self.val, [-c for c in self.coeffs], self.exact)
        r.regen = None if r.is_fully_exact() else self._derive((), TwoLocalElement.__neg__)
        return r

    def __mul__(self, other):
        other = _as_two(other, self.field)
        _check_field(self, other)
        F = self.field
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return TwoLocalElement.zero(F)
        val = a.val + b.val
        if a.exact and b.exact:
            n = len(a.coeffs) + len(b.coeffs) - 1
        else:
            bounds = []
            if not a.exact:
                bounds.append(len(a.coeffs))
            if not b.exact:
                bounds.append(len(b.coeffs))
            n = min(bounds)
        out = []
        for k in range(n):
            acc = None
            for i in range(max(0, k - len(b.coeffs) + 1), min(k, len(a.coeffs) - 1) + 1):
                term = a.coeffs[i] * b.coeffs[k - i]
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else LaurentSeries.zero(F))
        r = TwoLocalElement(F, val, out, exact=a.exact and b.exact)
        r.regen = None if r.is_fully_exact() else self._derive((other,), TwoLocalElement.__mul__)
        return r

    __rmul__ = __mul__

    def shift(self, j: int) -> "TwoLocalElement":
        """Multiply by t^j."""
        r = TwoLocalElement(self.field, self.val + j, self.coeffs, self.exact)
        if self.regen is not None:
            r.regen = lambda n: self.extend(n).shift(j)
        return r

    def invert(self, prec: int | None = None, cap: int = PREC_CAP) -> "TwoLocalElement":
        s = self.resolved(cap)
        F = self.field
        c = list(s.coeffs)
        c[0] = c[0].resolved(cap)
        b0 = c[0].invert(prec=prec or DEFAULT_PREC, cap=cap)
        if s.exact and len(c) == 1:
            r = TwoLocalElement(F, -s.val, (b0,), exact=True)
            if not r.is_fully_exact():
                r.regen = (lambda m: s.extend(m).invert(cap=cap)) if s.regen else \
                    (lambda m: TwoLocalElement(F, -s.val, (c[0].invert(prec=m, cap=cap),), exact=True))
            return r
        if s.exact:
            n = prec or DEFAULT_PREC
            regen = lambda m: s.invert(prec=m, cap=cap)
        else:
            n = len(c)
            regen = None if s.regen is None else (lambda m: s.extend(m).invert(cap=cap))
        out = [b0]
        for j in range(1, n):
            acc = None
            for i in range(1, min(j, len(c) - 1) + 1):
                term = c[i] * out[j - i]
                acc = term if acc is None else acc + term
            out.append(-(b0 * acc) if acc is not None else LaurentSeries.zero(F))
        return TwoLocalElement(F, -s.val, out, exact=False, regen=regen)

    def __truediv__(self, other):
        return self * _as_two(other, self.field).invert()

    def __rtruediv__(self, other):
        return _as_two(other, self.field) * self.invert()

    def __pow__(self, e: int):
        if e < 0:
            return self.invert() ** (-e)
        result = TwoLocalElement.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def agrees_with(self, other: "TwoLocalElement") -> bool:
        d = self - other
        return all(not c.coeffs for c in d.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoLocalElement):
            return NotImplemented
        return (self.field == other.field and self.val == other.val
                and self.coeffs == other.coeffs and self.exact == other.exact)

    def __hash__(self) -> int:
        return hash((self.val, self.coeffs, self.exact))

    def __str__(self) -> str:
        return format_two_local(self)

    def __repr__(self) -> str:
        return f"TwoLocalElement({format_two_local(self)})"


def _as_two(x, field: FiniteField) -> TwoLocalElement:
    if isinstance(x, TwoLocalElement):
        return x
    if isinstance(x, LaurentSeries):
        return TwoLocalElement.from_series(x)
    return TwoLocalElement.from_series(_as_series(x, field))


def format_two_local(f: TwoLocalElement) -> str:
    terms = []
    for k, c in enumerate(f.coeffs):
        j = f.val + k
        terms += _series_terms(c, [_tpow(j)] if j else [])
    if not f.exact:
        terms.append(f"O({_tpow(int(f.abs_prec))})")
    return " + ".join(terms) if terms else "0"


def valuation(f: LaurentSeries | TwoLocalElement, cap: int = PREC_CAP) -> int:
    return f.valuation(cap)


def reduce_mod_m(f: TwoLocalElement, cap: int = PREC_CAP) -> LaurentSeries:
    """Image of a unit of O_K in the residue field k'((u)): its t^0 coefficient."""
    v = f.valuation(cap)
    if v != 0:
        raise ValueError(f"reduce_mod_m needs nu_K(f) = 0, got {v}")
    return f.lead_series(cap)


def reduce_to_last_residue(f: TwoLocalElement, cap: int = PREC_CAP) -> FieldElement:
    """Constant term of the constant term, for f with both valuations 0."""
    s = reduce_mod_m(f, cap)
    if s.val != 0:
        raise ValueError(f"reduction has u-valuation {s.val}, not a unit")
    return FieldElement(f.field, s.coeffs[0])


def _bound_prefix_min(vals: list[float]) -> list[float]:
    out, cur = [], float("inf")
    for v in vals:
        cur = min(cur, v)
        out.append(cur)
    return out


def substitute(f: TwoLocalElement, phi: TwoLocalElement, psi: TwoLocalElement,
               prec: int = DEFAULT_PREC) -> TwoLocalElement:
    """f(u -> phi, t -> psi), computed to t-precision ``prec``.

    Convergence requires nu_K(psi) >= 1 unless f is a t-polynomial with
    nonnegative exponents, and nu_K(phi) >= 0 with the reduction of phi of
    positive u-valuation when nu_K(phi) = 0, unless every u-coefficient of
    f is a polynomial with nonnegative exponents.
    """
    F = f.field
    t_poly = f.exact and f.val >= 0
    u_poly = all(c.exact and c.val >= 0 for c in f.coeffs)
    psi_v = psi.valuation()
    if psi_v < 1 and not t_poly:
        raise ConvergenceError("t-substitution must have positive t-valuation")
    if psi_v < 0 or (psi_v == 0 and f.val < 0):
        raise ConvergenceError("negative t-powers of a non-unit substitution diverge")
    phi_v = phi.valuation()
    phi_ok = phi_v > 0 or (phi_v == 0 and phi.lead_series().val > 0)
    if not phi_ok and not u_poly:
        raise ConvergenceError("u-substitution must be topologically nilpotent")

    exact_mode = t_poly and u_poly and phi.is_fully_exact() and psi.is_fully_exact()

    def trunc(x: TwoLocalElement) -> TwoLocalElement:
        return x if exact_mode else x + TwoLocalElement.big_o(F, prec)

    result = TwoLocalElement.zero(F) if exact_mode else TwoLocalElement.big_o(F, prec)
    phi_pows: dict[int, TwoLocalElement] = {}

    def phi_pow(i: int) -> TwoLocalElement:
        if i not in phi_pows:
            phi_pows[i] = trunc(phi ** i)
        return phi_pows[i]

    for k, c in enumerate(f.coeffs):
        j = f.val + k
        low = min(0, c.val * phi_v) if c.coeffs else 0
        if not exact_mode and j * psi_v + low >= prec:
            continue
        inner = TwoLocalElement.zero(F)
        for m, code in enumerate(c.coeffs):
            if code:
                inner = inner + phi_pow(c.val + m) * TwoLocalElement.constant(F, F.element(code))
        if not c.exact:
            # O(u^k) -> phi^k * (unknown unit); bound each t-coefficient
            err = phi_pow(int(c.abs_prec))
            bounds = []
            for jj in range(err.val, err.val + len(err.coeffs)):
                bounds.append(err.coefficient(jj).val if err.coefficient(jj).coeffs
                              else err.coefficient(jj).abs_prec)
            bounds = _bound_prefix_min(bounds)
            errs = [LaurentSeries.big_o(F, int(b)) if b != float("inf")
                    else LaurentSeries.zero(F) for b in bounds]
            inner = inner + TwoLocalElement(F, err.val, errs, exact=err.exact)
        result = result + trunc(inner * trunc(psi ** j))
    if not f.exact:
        result = result + TwoLocalElement.big_o(F, int(f.abs_prec) * psi_v)
    return result
