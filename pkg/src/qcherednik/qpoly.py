"""q-symmetric algebras S_q(V): normal-ordered monomials, multiplication with
q-factors, centrality tests and the exact divisions Dunkl operators need.

Normal order is ascending variable index; every q-factor comes from the
single adjacent swap x_j x_i -> q_ji x_i x_j for j > i.  Indices are
0-based throughout; rendering is 1-based (x1 = index 0).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .cyclotomic import CycloElement, CycloField, as_element, render_scalar


class InvalidQMatrix(ValueError):
    pass


class QMatrixMismatch(ValueError):
    pass


class NotCentral(ValueError):
    pass


class NotDivisible(ValueError):
    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class QMatrix:
    """Deformation matrix q = (q_ij) with q_ii = 1 and q_ij q_ji = 1."""

    def __init__(self, entries):
        n = len(entries)
        field = None
        rows = []
        for row in entries:
            if len(row) != n:
                raise InvalidQMatrix("entries must form a square array")
            rows.append(tuple(row))
            for e in row:
                if not isinstance(e, CycloElement):
                    raise InvalidQMatrix("entries must be CycloElement values")
                if field is None:
                    field = e.field
                elif e.field.order != field.order:
                    raise InvalidQMatrix("entries must share one ambient field")
        self.n = n
        self.field = field
        self.entries = tuple(rows)
        for i in range(n):
            if self.entries[i][i] != 1:
                raise InvalidQMatrix(f"q[{i}][{i}] != 1")
            for j in range(n):
                if self.entries[i][j].is_zero():
                    raise InvalidQMatrix(f"q[{i}][{j}] is zero")
                if self.entries[i][j] * self.entries[j][i] != 1:
                    raise InvalidQMatrix(f"q[{i}][{j}]*q[{j}][{i}] != 1")

    def entry(self, i, j):
        return self.entries[i][j]

    @staticmethod
    def ones(field: CycloField, n: int) -> "QMatrix":
        one = field.one()
        return QMatrix([[one] * n for _ in range(n)])

    @staticmethod
    def minus_one(field: CycloField, n: int) -> "QMatrix":
        one, m1 = field.one(), -field.one()
        return QMatrix([[one if i == j else m1 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_exponents(field: CycloField, exps) -> "QMatrix":
        """q_ij = zeta_N^exps[i][j]; exps must satisfy exps[i][j] + exps[j][i] = 0 mod N."""
        return QMatrix([[field.root_of_unity(e) for e in row] for row in exps])

    def transpose(self) -> "QMatrix":
        n = self.n
        return QMatrix([[self.entries[j][i] for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"QMatrix(n={self.n}, order={self.field.order})"


def qmatrix_create(entries) -> QMatrix:
    return QMatrix(entries)


# -- monomials ---------------------------------------------------------------
# a monomial is a tuple of non-negative exponents, x_0^a0 ... x_{n-1}^a{n-1}


def mono_degree(m) -> int:
    return sum(m)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of total degree d, lexicographic; count C(n+d-1, d)."""
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    out.sort()
    return out


def monomials_up_to(n: int, dmax: int):
    out = []
    for d in range(dmax + 1):
        out.extend(monomials_of_degree(n, d))
    return out


def reorder_factor(Q: QMatrix, a, b) -> CycloElement:
    """q-factor for normal-ordering x^a * x^b: product of q_ji^(a_j b_i), i < j."""
    out = Q.field.one()
    for j in range(Q.n):
        if a[j] == 0:
            continue
        for i in range(j):
            if b[i] == 0:
                continue
            out = out * Q.entries[j][i] ** (a[j] * b[i])
    return out


def _grlex_key(m):
    return (sum(m), m)


class QPolynomial:
    """Element of S_q(V) as a finite map from normal-ordered monomials to scalars."""

    __slots__ = ("qmatrix", "terms")

    def __init__(self, qmatrix: QMatrix, terms: dict):
        self.qmatrix = qmatrix
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(Q: QMatrix) -> "QPolynomial":
        return QPolynomial(Q, {})

    @staticmethod
    def one(Q: QMatrix) -> "QPolynomial":
        return QPolynomial(Q, {(0,) * Q.n: Q.field.one()})

    @staticmethod
    def variable(Q: QMatrix, i: int) -> "QPolynomial":
        m = [0] * Q.n
        m[i] = 1
        return QPolynomial(Q, {tuple(m): Q.field.one()})

    @staticmethod
    def monomial(Q: QMatrix, m, coeff=1) -> "QPolynomial":
        return QPolynomial(Q, {tuple(m): as_element(coeff, Q.field)})

    @staticmethod
    def scalar(Q: QMatrix, c) -> "QPolynomial":
        return QPolynomial(Q, {(0,) * Q.n: as_element(c, Q.field)})

    # -- linear structure ----------------------------------------------------

    def _check(self, other):
        if self.qmatrix is not other.qmatrix and self.qmatrix != other.qmatrix:
            raise QMatrixMismatch("polynomials live over different q-matrices")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return QPolynomial(self.qmatrix, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = -c if s is None else s - c
        return QPolynomial(self.qmatrix, out)

    def __neg__(self):
        return QPolynomial(self.qmatrix, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "QPolynomial":
        c = as_element(c, self.qmatrix.field)
        return QPolynomial(self.qmatrix, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloElement)):
            return self.scale(other)
        self._check(other)
        Q = self.qmatrix
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                c = ca * cb * reorder_factor(Q, ma, mb)
                s = out.get(m)
                out[m] = c if s is None else s + c
        return QPolynomial(Q, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycloElement)):
            return self.scale(other)
        return NotImplemented

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloElement)):
            other = QPolynomial.scalar(self.qmatrix, other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.qmatrix == other.qmatrix and self.terms == other.terms

    def __hash__(self):
        return hash((self.qmatrix, frozenset(self.terms.items())))

    def degree(self):
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(mono_degree(m) for m in self.terms)

    def leading(self):
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def __repr__(self):
        return render_poly(self)


def multiply(p: QPolynomial, r: QPolynomial) -> QPolynomial:
    return p * r


def is_central(p: QPolynomial) -> bool:
    """True iff x_k p = p x_k for every variable x_k."""
    for k in range(p.qmatrix.n):
        xk = QPolynomial.variable(p.qmatrix, k)
        if xk * p != p * xk:
            return False
    return True


def divide_by_central(p: QPolynomial, d: QPolynomial) -> QPolynomial:
    """The g with d*g = p, by leading-monomial elimination in graded-lex order.

    Raises NotCentral if d is not central, NotDivisible (with the residual
    attached) if no exact quotient exists.
    """
    if d.is_zero():
        raise NotCentral("divisor is zero")
    if not is_central(d):
        raise NotCentral("divisor is not central")
    Q = p.qmatrix
    lead_d, lc_d = d.leading()
    quotient = QPolynomial.zero(Q)
    rem = p
    while not rem.is_zero():
        lead_p, lc_p = rem.leading()
        diff = tuple(a - b for a, b in zip(lead_p, lead_d))
        if any(e < 0 for e in diff):
            raise NotDivisible("leading monomial not divisible", remainder=rem)
        coeff = lc_p / (lc_d * reorder_factor(Q, lead_d, diff))
        t = QPolynomial.monomial(Q, diff, coeff)
        quotient = quotient + t
        rem = rem - d * t
    return quotient


def left_divide_by_variable(p: QPolynomial, i: int) -> QPolynomial:
    """The g with x_i * g = p; every monomial of p must contain x_i."""
    Q = p.qmatrix
    out = {}
    for m, c in p.terms.items():
        if m[i] == 0:
            raise NotDivisible(
                f"monomial {m} has no x_{i + 1} factor",
                remainder=QPolynomial.monomial(Q, m, c),
            )
        stripped = tuple(e - 1 if k == i else e for k, e in enumerate(m))
        # x_i * stripped picks up q_ik^stripped_k for k < i on reordering
        fac = Q.field.one()
        for k in range(i):
            if stripped[k]:
                fac = fac * Q.entries[i][k] ** stripped[k]
        out[stripped] = c / fac
    return QPolynomial(Q, out)


def dimension_of_degree(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def render_mono(m) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 0:
            continue
        parts.append(f"x{i + 1}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) if parts else "1"


def render_poly(p: QPolynomial) -> str:
    if p.is_zero():
        return "0"
    bits = []
    for m in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[m]
        cs = render_scalar(c)
        ms = render_mono(m)
        if ms == "1":
            bits.append(cs)
        elif cs == "1":
            bits.append(ms)
        elif cs == "-1":
            bits.append(f"-{ms}")
        else:
            bits.append(f"{cs}*{ms}")
    return " + ".join(bits)
