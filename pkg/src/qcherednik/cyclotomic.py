"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored canonically as vectors of rationals in the power
basis {zeta^k : 0 <= k < phi(N)} modulo the N-th cyclotomic polynomial,
so equality of elements is equality of coefficient vectors.  All
coefficients are arbitrary-precision `fractions.Fraction`; nothing here
ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class FieldMismatch(ValueError):
    """Two elements of cyclotomic fields of different orders were combined."""


class NotASubfield(ValueError):
    """Promotion was requested into a field whose order is not a multiple."""


class DivisionByZero(ZeroDivisionError):
    """Inversion of the zero element."""


# ---------------------------------------------------------------------------
# rational polynomial helpers (dense coefficient lists, low degree first)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a, b):
    """Divide a by b (b nonzero, treated exactly); returns (quotient, remainder)."""
    a = list(a)
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = ONE / b[-1]
    while len(a) >= len(b) and _poly_trim(a):
        if len(a) < len(b):
            break
        c = a[-1] * inv_lead
        d = len(a) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] -= c * bi
        _poly_trim(a)
    return _poly_trim(q), _poly_trim(a)


def _poly_xgcd(a, b):
    """Extended Euclid over Q[x]: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while _poly_trim(list(r1)):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_trim([x - y for x, y in _zip_pad(s0, _poly_mul(q, s1))])
        t0, t1 = t1, _poly_trim([x - y for x, y in _zip_pad(t0, _poly_mul(q, t1))])
    return r0, s0, t0


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [ZERO] * (n - len(a)), b + [ZERO] * (n - len(b)))


_CYCLO_CACHE: dict[int, tuple] = {}


def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients of Phi_n, computed by dividing x^n - 1 by Phi_d, d|n, d<n."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    if n < 1:
        raise ValueError("order must be a positive integer")
    p = [ZERO] * (n + 1)
    p[0], p[n] = -ONE, ONE
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(p, list(cyclotomic_polynomial(d)))
            if r:
                raise AssertionError("cyclotomic division left a remainder")
            p = q
    result = tuple(p)
    _CYCLO_CACHE[n] = result
    return result


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def ambient_order(*orders: int) -> int:
    """lcm of the root-of-unity orders a computation session declares."""
    out = 1
    for m in orders:
        out = out * m // gcd(out, m)
    return out


# ---------------------------------------------------------------------------


_FIELDS: dict[int, "CycloField"] = {}


def field_create(n: int) -> "CycloField":
    """The cyclotomic field Q(zeta_n); instances are cached per order."""
    if n not in _FIELDS:
        _FIELDS[n] = CycloField(n)
    return _FIELDS[n]


class CycloField:
    """Q(zeta_N) presented as Q[x]/(Phi_N); immutable and shareable."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be a positive integer")
        self.order = order
        self.minimal_polynomial = cyclotomic_polynomial(order)
        self.degree = len(self.minimal_polynomial) - 1
        # x^(degree+k) mod Phi for k = 0 .. degree-2, used by _reduce
        self._high = []
        d = self.degree
        row = [-c for c in self.minimal_polynomial[:d]]
        self._high.append(list(row))
        for _ in range(d - 2):
            prev = self._high[-1]
            nxt = [ZERO] + prev[:]
            if len(nxt) > d:
                top = nxt.pop()
                if top != 0:
                    nxt = [c + top * h for c, h in zip(nxt, self._high[0])]
            self._high.append(nxt)
        # zeta^k for k = 0 .. order-1
        self._pow = []
        v = [ONE] + [ZERO] * (d - 1)
        for _ in range(self.order):
            self._pow.append(tuple(v))
            v = [ZERO] + v[:]
            if len(v) > d:
                top = v.pop()
                if top != 0:
                    v = [c + top * h for c, h in zip(v, self._high[0])]

    def _reduce(self, coeffs) -> tuple:
        d = self.degree
        out = list(coeffs[:d]) + [ZERO] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c == 0:
                continue
            high = self._high[k - d]
            for i, h in enumerate(high):
                out[i] += c * h
        return tuple(out)

    def element(self, coeffs) -> "CycloElement":
        return CycloElement(self, self._reduce([Fraction(c) for c in coeffs]))

    def zero(self) -> "CycloElement":
        return CycloElement(self, tuple([ZERO] * self.degree))

    def one(self) -> "CycloElement":
        return self.from_rational(1)

    def from_rational(self, r) -> "CycloElement":
        v = [ZERO] * self.degree
        v[0] = Fraction(r)
        return CycloElement(self, tuple(v))

    def root_of_unity(self, k: int) -> "CycloElement":
        return CycloElement(self, self._pow[k % self.order])

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.order == self.order

    def __hash__(self):
        return hash(("CycloField", self.order))

    def __repr__(self):
        return f"CycloField({self.order})"


def root_of_unity(field: CycloField, k: int) -> "CycloElement":
    """zeta_N^k in the given field; the result has order N/gcd(N,k)."""
    return field.root_of_unity(k)


class CycloElement:
    """An element of Q(zeta_N) in canonical power-basis form."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> "CycloElement":
        if isinstance(other, CycloElement):
            if other.field.order != self.field.order:
                raise FieldMismatch(
                    f"orders {self.field.order} and {other.field.order} differ; "
                    "promote explicitly"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycloElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycloElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycloElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.degree
        out = [ZERO] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b == 0:
                    continue
                out[i + j] += a * b
        return CycloElement(self.field, self.field._reduce(out))

    __rmul__ = __mul__

    def invert(self) -> "CycloElement":
        if self.is_zero():
            raise DivisionByZero("cannot invert zero")
        g, u, _ = _poly_xgcd(list(self.coeffs), list(self.field.minimal_polynomial))
        if len(g) != 1:
            raise AssertionError("element not invertible modulo the minimal polynomial")
        inv_g = ONE / g[0]
        return CycloElement(self.field, self.field._reduce([c * inv_g for c in u]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, e: int):
        if e < 0:
            return self.invert() ** (-e)
        acc = self.field.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.field.order == other.field.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.order, self.coeffs))

    def __repr__(self):
        return render_scalar(self)


# ---------------------------------------------------------------------------


def promote(a: CycloElement, target: CycloField) -> CycloElement:
    """Image of a under zeta_M -> zeta_N^(N/M); a ring homomorphism."""
    m, n = a.field.order, target.order
    if n % m != 0:
        raise NotASubfield(f"Q(zeta_{m}) is not a subfield of Q(zeta_{n})")
    step = n // m
    out = [ZERO] * target.degree
    for k, c in enumerate(a.coeffs):
        if c == 0:
            continue
        p = target._pow[(k * step) % n]
        for i, pi in enumerate(p):
            out[i] += c * pi
    return CycloElement(target, tuple(out))


def as_element(x: Union[int, Fraction, CycloElement], field: CycloField) -> CycloElement:
    """Coerce an int, Fraction, or element of a subfield into `field`."""
    if isinstance(x, CycloElement):
        if x.field.order == field.order:
            return x
        return promote(x, field)
    return field.from_rational(Fraction(x))


def multiplicative_order(a: CycloElement, bound: int = 1000) -> int:
    """Order of a as a root of unity; raises if no power <= bound is 1."""
    acc = a
    for k in range(1, bound + 1):
        if acc == 1:
            return k
        acc = acc * a
    raise ValueError(f"no power up to {bound} equals 1")


# ---------------------------------------------------------------------------
# text format used by the CLI:  {"order": N, "coeffs": {"k": "p/q", ...}},
# with plain "p/q" / "p" strings and ints accepted for rationals.


def parse_scalar(obj, field: CycloField = None) -> CycloElement:
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, int):
        lit_field = field or field_create(1)
        return as_element(obj, lit_field)
    if isinstance(obj, str):
        lit_field = field or field_create(1)
        return as_element(Fraction(obj), lit_field)
    if isinstance(obj, dict):
        n = obj["order"]
        f = field_create(n)
        out = f.zero()
        for k, v in obj.get("coeffs", {}).items():
            out = out + f.root_of_unity(int(k)) * Fraction(v)
        if field is not None:
            out = promote(out, field)
        return out
    raise ValueError(f"cannot parse scalar literal: {obj!r}")


def scalar_to_literal(a: CycloElement):
    if a.is_rational():
        return str(a.as_fraction())
    return {
        "order": a.field.order,
        "coeffs": {str(k): str(c) for k, c in enumerate(a.coeffs) if c != 0},
    }


def render_scalar(a: CycloElement) -> str:
    """Human-readable form, e.g. '1/2', 'z4', '(1-2*z6^2)'."""
    if a.is_rational():
        return str(a.coeffs[0])
    sym = f"z{a.field.order}"
    parts = []
    for k, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
            continue
        mon = sym if k == 1 else f"{sym}^{k}"
        if c == 1:
            term = mon
        elif c == -1:
            term = f"-{mon}"
        else:
            term = f"{c}*{mon}"
        parts.append(term)
    s = parts[0]
    for t in parts[1:]:
        s += t if t.startswith("-") else "+" + t
    return f"({s})" if len(parts) > 1 else s
