"""Exact arithmetic in finite fields F_{p^d}.

Elements are encoded as integers in ``range(p**d)``: the base-p digits,
little-endian, are the coefficients of the element in the power basis of
the field generator ``z`` (a root of the modulus).  Multiplication uses
log/exp tables and addition uses Zech logarithms, so every operation is a
couple of table lookups.  Fields are small here (``p**d <= 2**20``).

The default modulus for ``F_{p^d}`` is the smallest monic primitive
polynomial of degree ``d`` (coefficients compared from the constant term
up), which makes ``z`` a multiplicative generator.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

MAX_ORDER = 1 << 20


class FieldError(ArithmeticError):
    """Raised on invalid field construction or a field mismatch."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    i = 2
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            while n % i == 0:
                n //= i
        i += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as little-endian int lists, used for moduli only --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _pmod(prod, m, p)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return a


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible_mod_p(m: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p."""
    m = _trim([c % p for c in m])
    d = len(m) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**d, m, p), x, p):
        return False
    for r in prime_factors(d):
        h = _psub(_ppowmod(x, p ** (d // r), m, p), x, p)
        if len(_pgcd(m, h, p)) > 1:
            return False
    return True


def is_primitive_mod_p(m: Sequence[int], p: int) -> bool:
    """True when ``m`` is irreducible and ``x`` generates the unit group."""
    m = _trim([c % p for c in m])
    if not is_irreducible_mod_p(m, p):
        return False
    d = len(m) - 1
    n = p**d - 1
    x = [0, 1]
    return all(_ppowmod(x, n // r, m, p) != [1] for r in prime_factors(n))


def default_modulus(p: int, d: int) -> tuple[int, ...]:
    """Smallest monic primitive polynomial of degree ``d`` over F_p."""
    for code in range(p**d):
        low = [(code // p**i) % p for i in range(d)]
        cand = low + [1]
        if cand[0] == 0:
            continue
        if is_primitive_mod_p(cand, p):
            return tuple(cand)
    raise FieldError(f"no primitive polynomial of degree {d} over F_{p}")


class FiniteField:
    """The field F_{p^d} with a fixed modulus.

    Field arithmetic on raw integer codes is exposed through ``add``,
    ``sub``, ``mul``, ``inv``, ``neg`` and ``pow``; :class:`FieldElement`
    wraps a code together with its field for user-facing work.
    """

    def __init__(self, p: int, d: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if d < 1:
            raise FieldError("degree must be at least 1")
        if p**d > MAX_ORDER:
            raise FieldError(f"field of order {p}^{d} exceeds supported size")
        if modulus is None:
            mod = default_modulus(p, d)
        else:
            mod = tuple(c % p for c in modulus)
            if len(mod) != d + 1 or mod[-1] != 1:
                raise FieldError("modulus must be monic of degree d")
            if not is_irreducible_mod_p(mod, p):
                raise FieldError("modulus is not irreducible")
        self.p = p
        self.d = d
        self.q = p**d
        self.modulus = mod
        self._build_tables()

    # -- table construction --

    def _poly_to_code(self, c: Sequence[int]) -> int:
        return sum(v * self.p**i for i, v in enumerate(c))

    def _code_to_poly(self, code: int) -> list[int]:
        p = self.p
        return [(code // p**i) % p for i in range(self.d)]

    def _slow_mul(self, a: int, b: int) -> int:
        r = _pmulmod(self._code_to_poly(a), self._code_to_poly(b),
                     list(self.modulus), self.p)
        return self._poly_to_code(r)

    def _find_generator(self) -> int:
        n = self.q - 1
        primes = prime_factors(n)
        start = self.p if self.d > 1 else 2
        for g in list(range(start, self.q)) + list(range(1, start)):
            if g == 0:
                continue
            if all(self._slow_pow(g, n // r) != 1 for r in primes):
                return g
        return 1  # only for F_2

    def _slow_pow(self, a: int, e: int) -> int:
        r, b = 1, a
        while e:
            if e & 1:
                r = self._slow_mul(r, b)
            b = self._slow_mul(b, b)
            e >>= 1
        return r

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        n = q - 1
        self.gen = 1 if q == 2 else self._find_generator()
        exp = [0] * (2 * n if n else 1)
        log = [0] * q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, self.gen)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log
        # zech[i] = log(1 + g^i), or -1 when 1 + g^i == 0
        zech = [0] * n
        for i in range(n):
            s = self._digit_add(1, exp[i])
            zech[i] = -1 if s == 0 else log[s]
        self._zech = zech
        self.minus_one = self._digit_neg(1)

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        if self.d == 1:
            return (a + b) % p
        out, mult = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _digit_neg(self, a: int) -> int:
        p = self.p
        out, mult = 0, 1
        while a:
            out += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return out

    # -- arithmetic on codes --

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        if self.d == 1:
            return (a + b) % self.p
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.d == 1:
            return (-a) % self.p
        if a == 0 or self.p == 2:
            return a
        return self._exp[self._log[a] + self._log[self.minus_one]]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.d == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if a == 1:
            return 1
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log of a nonzero code with respect to ``self.gen``."""
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Code of the image of the integer ``n`` in the prime field."""
        return n % self.p

    # -- user-facing helpers --

    def __call__(self, value: int | Sequence[int] | "FieldElement") -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to another field; use embed")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        coeffs = [c % self.p for c in value]
        if len(coeffs) > self.d:
            raise FieldError("too many coefficients")
        return FieldElement(self, self._poly_to_code(coeffs))

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for F_{self.q}")
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def z(self) -> "FieldElement":
        """The class of ``x`` modulo the modulus."""
        if self.d > 1:
            return FieldElement(self, self.p)
        return FieldElement(self, (-self.modulus[0]) % self.p)

    def generator(self) -> "FieldElement":
        return FieldElement(self, self.gen)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    def units(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(1, self.q)]

    def coefficients(self, code: int) -> list[int]:
        return self._code_to_poly(code)

    def descriptor(self) -> tuple[int, int, list[int]]:
        """Serializable (p, d, modulus coefficients little-endian)."""
        return (self.p, self.d, list(self.modulus))

    def roots_of_unity(self, m: int) -> list["FieldElement"]:
        """All solutions of x^m = 1, sorted by code."""
        if m < 1:
            raise FieldError("m must be positive")
        if (self.q - 1) % m:
            raise FieldError(f"{m} does not divide {self.q - 1}: mu_{m} not in F_{self.q}")
        step = (self.q - 1) // m
        return sorted((FieldElement(self, self.exp(step * i)) for i in range(m)),
                      key=lambda e: e.code)

    def is_subfield_of(self, other: "FiniteField") -> bool:
        return self.p == other.p and other.d % self.d == 0

    def embedding(self, other: "FiniteField") -> "Embedding":
        return _embedding(self, other)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.d == other.d and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    def __repr__(self) -> str:
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.d})"

    def format(self, code: int) -> str:
        """Text form: an integer for prime fields, a polynomial in z otherwise."""
        if self.d == 1:
            return str(code)
        terms = []
        for i, c in reversed(list(enumerate(self._code_to_poly(code)))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return "+".join(terms)


class FieldElement:
    """An element of a :class:`FiniteField`."""

    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"{self.field!r}({self.field.format(self.code)})"

    def __str__(self) -> str:
        return self.field.format(self.code)

    def coefficients(self) -> list[int]:
        return self.field.coefficients(self.code)

    def order(self) -> int:
        return element_order(self)

    def frobenius(self, k: int = 1) -> "FieldElement":
        return self ** (self.field.p ** k)

    def embed(self, target: FiniteField) -> "FieldElement":
        return self.field.embedding(target)(self)


def element_order(e: FieldElement) -> int:
    """Least n >= 1 with e^n = 1."""
    if e.code == 0:
        raise ZeroDivisionError("zero has no multiplicative order")
    f = e.field
    n = f.q - 1
    order = n
    for r in prime_factors(n):
        while order % r == 0 and f.pow(e.code, order // r) == 1:
            order //= r
    return order


class Embedding:
    """The embedding F_{p^a} -> F_{p^b} sending ``z`` to a fixed root.

    The root is the smallest code among the roots of the source modulus in
    the target, so embeddings are deterministic and compose consistently
    for default fields built by :func:`gf`.
    """

    def __init__(self, source: FiniteField, target: FiniteField):
        if not source.is_subfield_of(target):
            raise FieldError(f"{source} is not a subfield of {target}")
        self.source = source
        self.target = target
        if source == target:
            self._table = list(range(source.q))
        else:
            root = self._find_root()
            powers = [1]
            for _ in range(source.d - 1):
                powers.append(target.mul(powers[-1], root))
            table = []
            for code in range(source.q):
                acc = 0
                for c, pw in zip(source.coefficients(code), powers):
                    if c:
                        acc = target.add(acc, target.mul(c, pw))
                table.append(acc)
            self._table = table
        self._back = {v: i for i, v in enumerate(self._table)}

    def _find_root(self) -> int:
        s, t = self.source, self.target
        step = (t.q - 1) // (s.q - 1)
        cands = sorted([0] + [t.exp(step * i) for i in range(s.q - 1)])
        for y in cands:
            acc = 0
            for c in reversed(s.modulus):
                acc = t.add(t.mul(acc, y), c)
            if acc == 0:
                return y
        raise FieldError("modulus has no root in target field")

    def __call__(self, e: FieldElement | int) -> FieldElement:
        if isinstance(e, FieldElement):
            if e.field != self.source:
                raise FieldError("element not in embedding source")
            return FieldElement(self.target, self._table[e.code])
        return FieldElement(self.target, self._table[e])

    def code(self, c: int) -> int:
        return self._table[c]

    def preimage(self, e: FieldElement | int) -> FieldElement:
        """Inverse image of an element lying in the embedded subfield."""
        c = e.code if isinstance(e, FieldElement) else e
        try:
            return FieldElement(self.source, self._back[c])
        except KeyError:
            raise FieldError("element does not lie in the subfield") from None


@lru_cache(maxsize=None)
def _embedding(source: FiniteField, target: FiniteField) -> Embedding:
    return Embedding(source, target)


@lru_cache(maxsize=None)
def gf(p: int, d: int = 1) -> FiniteField:
    """Cached field F_{p^d} with the default modulus."""
    return FiniteField(p, d)


def field_of_order(q: int) -> FiniteField:
    for p in prime_factors(q)[:1]:
        d, n = 0, q
        while n % p == 0:
            n //= p
            d += 1
        if n == 1:
            return gf(p, d)
    raise FieldError(f"{q} is not a prime power")


def norm_to_base(e: FieldElement, base: FiniteField) -> FieldElement:
    """Norm from the field of ``e`` down to ``base``: e^{(Q-1)/(q-1)}."""
    emb = base.embedding(e.field)
    if e.code == 0:
        return base.zero
    n = e ** ((e.field.q - 1) // (base.q - 1))
    return emb.preimage(n)


def roots_of_unity(field: FiniteField, m: int) -> list[FieldElement]:
    return field.roots_of_unity(m)


def prod(elems: Iterable[FieldElement], field: FiniteField) -> FieldElement:
    acc = 1
    for e in elems:
        if e.field != field:
            raise FieldError("mixed fields in product")
        acc = field.mul(acc, e.code)
    return FieldElement(field, acc)
