"""Degree-truncated linear operators on S_q(V): braided derivatives, twisted
derivations, divided differences, the explicit Dunkl families and braided
tensor products of them.

Operators are stored extensionally (image of every basis monomial up to a
degree bound), so composition and equality are exact linear algebra over
finitely many monomials.  Divided differences over a root-of-unity orbit are
assembled over one common central denominator before dividing: individual
orbit terms are not polynomial, only suitable sums are.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycloElement, as_element, field_create
from .qpoly import (
    NotDivisible,
    QMatrix,
    QPolynomial,
    divide_by_central,
    left_divide_by_variable,
    mono_degree,
    monomials_up_to,
)
from .wgroup import InvalidParameters, MonomialMatrix, act_on_poly, make_sigma, make_t


class DegreeWindowEmpty(ValueError):
    pass


class Operator:
    """Linear endomorphism of S_q(V) known on all monomials of degree <= max_degree."""

    __slots__ = ("qmatrix", "max_degree", "degree_shift", "action")

    def __init__(self, qmatrix, max_degree, degree_shift, action):
        self.qmatrix = qmatrix
        self.max_degree = max_degree
        self.degree_shift = degree_shift
        self.action = action

    @staticmethod
    def build(Q: QMatrix, max_degree: int, degree_shift: int, fn) -> "Operator":
        if max_degree < 0:
            raise DegreeWindowEmpty("empty degree window")
        action = {m: fn(m) for m in monomials_up_to(Q.n, max_degree)}
        return Operator(Q, max_degree, degree_shift, action)

    def on_monomial(self, m) -> QPolynomial:
        return self.action[m]

    def apply(self, p: QPolynomial) -> QPolynomial:
        out = QPolynomial.zero(self.qmatrix)
        for m, c in p.terms.items():
            if mono_degree(m) > self.max_degree:
                raise DegreeWindowEmpty(
                    f"operator only known up to degree {self.max_degree}"
                )
            out = out + self.action[m].scale(c)
        return out

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.action.values())

    def __add__(self, other):
        if self.degree_shift != other.degree_shift:
            raise ValueError("cannot add operators of different degree shift")
        D = min(self.max_degree, other.max_degree)
        return Operator.build(self.qmatrix, D, self.degree_shift,
                              lambda m: self.action[m] + other.action[m])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Operator":
        c = as_element(c, self.qmatrix.field)
        return Operator(self.qmatrix, self.max_degree, self.degree_shift,
                        {m: p.scale(c) for m, p in self.action.items()})

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        if self.qmatrix != other.qmatrix or self.degree_shift != other.degree_shift:
            return False
        D = min(self.max_degree, other.max_degree)
        return all(self.action[m] == other.action[m]
                   for m in monomials_up_to(self.qmatrix.n, D))

    def __repr__(self):
        return (f"Operator(n={self.qmatrix.n}, shift={self.degree_shift}, "
                f"up to degree {self.max_degree})")


def zero_operator(Q, D, shift=0) -> Operator:
    return Operator.build(Q, D, shift, lambda m: QPolynomial.zero(Q))


def identity_operator(Q, D) -> Operator:
    return Operator.build(Q, D, 0, lambda m: QPolynomial.monomial(Q, m))


def mult_by_poly(Q, p: QPolynomial, D) -> Operator:
    """Left multiplication by a homogeneous polynomial."""
    degs = {mono_degree(m) for m in p.terms}
    if len(degs) > 1:
        raise ValueError("multiplication operator needs a homogeneous polynomial")
    shift = degs.pop() if degs else 0
    return Operator.build(Q, D, shift, lambda m: p * QPolynomial.monomial(Q, m))


def mult_by_variable(Q, i, D) -> Operator:
    return mult_by_poly(Q, QPolynomial.variable(Q, i), D)


def group_operator(Q, g: MonomialMatrix, D) -> Operator:
    return Operator.build(Q, D, 0, lambda m: act_on_poly(g, QPolynomial.monomial(Q, m)))


def group_algebra_operator(Q, terms, D) -> Operator:
    """Action of a group-algebra element given as [(MonomialMatrix, coeff)]."""
    def fn(m):
        p = QPolynomial.monomial(Q, m)
        out = QPolynomial.zero(Q)
        for g, c in terms:
            out = out + act_on_poly(g, p).scale(c)
        return out
    return Operator.build(Q, D, 0, fn)


def op_compose(A: Operator, B: Operator) -> Operator:
    """A after B; the degree window shrinks by B's shift."""
    if A.qmatrix != B.qmatrix:
        raise ValueError("operators live over different q-matrices")
    D = min(B.max_degree, A.max_degree - B.degree_shift)
    if D < 0:
        raise DegreeWindowEmpty("composition window is empty")
    return Operator.build(A.qmatrix, D, A.degree_shift + B.degree_shift,
                          lambda m: A.apply(B.action[m]))


def op_add(A: Operator, B: Operator) -> Operator:
    return A + B


def op_scale(A: Operator, c) -> Operator:
    return A.scale(c)


def q_bracket(A: Operator, B: Operator, q, sign: int = 1) -> Operator:
    """A o B - sign * q * B o A   (sign +1: q-commutator, -1: q-anticommutator)."""
    q = as_element(q, A.qmatrix.field)
    return op_compose(A, B) + op_compose(B, A).scale(-sign * q)


def commutator_with_mult(A: Operator, i: int) -> Operator:
    """[A, x_i] = A o (x_i .) - (x_i .) o A on the largest common window."""
    X = mult_by_variable(A.qmatrix, i, A.max_degree)
    return op_compose(A, X) - op_compose(X, A)


# -- derivatives --------------------------------------------------------------


def braided_partial(Q: QMatrix, i: int, D: int) -> Operator:
    """a_i q_{1i}^{a_1} ... q_{i-1,i}^{a_{i-1}} x^(a - e_i); degree shift -1."""
    def fn(m):
        if m[i] == 0:
            return QPolynomial.zero(Q)
        c = Q.field.from_rational(m[i])
        for k in range(i):
            if m[k]:
                c = c * Q.entries[k][i] ** m[k]
        return QPolynomial.monomial(Q, tuple(e - 1 if k == i else e for k, e in enumerate(m)), c)
    return Operator.build(Q, D, -1, fn)


def heisenberg_partial(Q: QMatrix, i: int, D: int) -> Operator:
    """The gamma_i-twisted derivative: a_i q_{i,i+1}^{a_{i+1}} ... q_{in}^{a_n} x^(a-e_i).

    Satisfies d_i x_j - x_j d_i = delta_ij gamma_i; composing with gamma_i on the
    left recovers the braided partial derivative.
    """
    def fn(m):
        if m[i] == 0:
            return QPolynomial.zero(Q)
        c = Q.field.from_rational(m[i])
        for k in range(i + 1, Q.n):
            if m[k]:
                c = c * Q.entries[i][k] ** m[k]
        return QPolynomial.monomial(Q, tuple(e - 1 if k == i else e for k, e in enumerate(m)), c)
    return Operator.build(Q, D, -1, fn)


def twisted_derivation(Q: QMatrix, w: MonomialMatrix, values, D: int) -> Operator:
    """The degree -1 operator with d(x_i) = values[i] and the w-twisted Leibniz
    rule d(ab) = d(a) w(b) + a d(b), evaluated on normal-ordered monomials."""
    values = [as_element(v, Q.field) for v in values]
    action = {}
    for m in monomials_up_to(Q.n, D):
        d = mono_degree(m)
        if d == 0:
            action[m] = QPolynomial.zero(Q)
            continue
        i = next(k for k, e in enumerate(m) if e)
        rest = tuple(e - 1 if k == i else e for k, e in enumerate(m))
        # m = x_i * rest exactly (no q-factor: i is the leading variable)
        tail = QPolynomial.monomial(Q, rest)
        action[m] = act_on_poly(w, tail).scale(values[i]) + \
            QPolynomial.variable(Q, i) * action[rest]
    return Operator(Q, D, -1, action)


# -- divided differences -------------------------------------------------------


def divided_difference_t(Q: QMatrix, i: int, eps, D: int) -> Operator:
    """f -> (1/x_i)(1 - t_i^(eps)) f; always an exact division."""
    eps = as_element(eps, Q.field)
    t = make_t(Q.field, Q.n, i, eps)
    def fn(m):
        p = QPolynomial.monomial(Q, m)
        num = p - act_on_poly(t, p)
        if num.is_zero():
            return num
        return left_divide_by_variable(num, i)
    return Operator.build(Q, D, -1, fn)


def _dd_sigma_sum(Q: QMatrix, i: int, j: int, eps_list, D: int) -> Operator:
    """sum over eps of (x_i + eps x_j)/(x_i^2 - eps^2 x_j^2) (1 - sigma_ij^(eps)),
    assembled over the common central denominator and divided exactly."""
    xi, xj = QPolynomial.variable(Q, i), QPolynomial.variable(Q, j)
    xi2, xj2 = xi * xi, xj * xj
    classes = []  # distinct eps^2 values, with their quadratic factor
    for eps in eps_list:
        e2 = eps * eps
        if all(e2 != c for c, _ in classes):
            classes.append((e2, xi2 - xj2.scale(e2)))
    denom = QPolynomial.one(Q)
    for _, quad in classes:
        denom = denom * quad
    sigmas = [(eps, make_sigma(Q.field, Q.n, i, j, eps)) for eps in eps_list]
    cofactors = {}
    for e2, _ in classes:
        cof = QPolynomial.one(Q)
        for c2, quad in classes:
            if c2 != e2:
                cof = cof * quad
        cofactors[e2] = cof
    def fn(m):
        p = QPolynomial.monomial(Q, m)
        num = QPolynomial.zero(Q)
        for eps, sig in sigmas:
            diff = p - act_on_poly(sig, p)
            if diff.is_zero():
                continue
            num = num + (xi + xj.scale(eps)) * cofactors[eps * eps] * diff
        if num.is_zero():
            return num
        return divide_by_central(num, denom)
    return Operator.build(Q, D, -1, fn)


def divided_difference_sigma(Q: QMatrix, i: int, j: int, m: int, D: int) -> Operator:
    """The full orbit sum over eps in mu_m (m even); ambient q must be -1."""
    if m % 2 != 0:
        raise InvalidParameters("the orbit group must have even order")
    step = Q.field.order // m
    eps_list = [Q.field.root_of_unity(k * step) for k in range(m)]
    return _dd_sigma_sum(Q, i, j, eps_list, D)


def d_ij(Q: QMatrix, i: int, j: int, D: int) -> Operator:
    """D_ij = (1/(x_i^2 - x_j^2)) ((x_i+x_j)(1-sigma_ij) + (x_i-x_j)(1-sigma_ji))."""
    one = Q.field.one()
    return _dd_sigma_sum(Q, i, j, [one, -one], D)


def d_i_eps(Q: QMatrix, i: int, eps, D: int) -> Operator:
    """D_i^(eps') = (1/x_i)(1 - t_i^(eps'))."""
    return divided_difference_t(Q, i, eps, D)


# -- the Dunkl families ----------------------------------------------------------


class DunklParams:
    """Parameters of one Dunkl family.

    negative:  m, m_prime, c1 (scalar, or dict keyed by ordered index pairs),
               c1_prime (rank-2 only), c_t (dict k -> scalar for eps' =
               zeta_{m'}^k, k = 1..m'-1), degenerate flag.
    abelian:   orders (per-variable cyclic orders), c_ab (dict (i, k) -> scalar
               for eps = zeta_{orders[i]}^k).
    symmetric: c (one scalar).
    """

    def __init__(self, family, n, *, m=None, m_prime=None, c1=None, c1_prime=None,
                 c_t=None, degenerate=False, orders=None, c_ab=None, c=None):
        self.family = family
        self.n = n
        self.m = m
        self.m_prime = m_prime
        self.c1 = c1
        self.c1_prime = c1_prime
        self.c_t = dict(c_t or {})
        self.degenerate = degenerate
        self.orders = list(orders or [])
        self.c_ab = dict(c_ab or {})
        self.c = c
        if family == "negative":
            if m is None or m % 2 != 0:
                raise InvalidParameters("negative family needs even m")
            if m_prime is None or m % m_prime != 0:
                raise InvalidParameters("m' must divide m")
            if c1_prime is not None and n != 2:
                raise InvalidParameters("the extra rank-2 parameter needs n = 2")
        elif family == "abelian":
            if len(self.orders) != n:
                raise InvalidParameters("abelian family needs one cyclic order per variable")
        elif family != "symmetric":
            raise InvalidParameters(f"unknown family {family!r}")

    def field_order(self) -> int:
        if self.family == "negative":
            return self.m
        if self.family == "abelian":
            out = 1
            for m in self.orders:
                out = out * m // _gcd(out, m)
            return out
        return 1


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _c1_value(params, field, i, j):
    if isinstance(params.c1, dict):
        return as_element(params.c1[(i, j)], field)
    return as_element(params.c1, field)


def dunkl_negative(params: DunklParams, D: int, field=None):
    """The braided Dunkl operators for W_{C,C'} on S_{-1}(V), degree shift -1."""
    if params.family != "negative":
        raise InvalidParameters("expected negative-family parameters")
    n, m = params.n, params.m
    field = field or field_create(m)
    Q = QMatrix.minus_one(field, n)
    step = field.order // m
    ops = []
    for i in range(n):
        if params.degenerate:
            op = zero_operator(Q, D, -1)
        else:
            op = braided_partial(Q, i, D)
        for j in range(n):
            if j == i:
                continue
            if params.c1_prime is None:
                full = divided_difference_sigma(Q, i, j, m, D)
                op = op + full.scale(_c1_value(params, field, i, j))
            else:
                if (m // 2) % 2 != 0:
                    raise InvalidParameters(
                        "rank-2 coefficient split requires 4 | m: each "
                        "divided-difference +-eps pair must carry one coefficient")
                squares = [field.root_of_unity(k * step) for k in range(0, m, 2)]
                others = [field.root_of_unity(k * step) for k in range(1, m, 2)]
                op = op + _dd_sigma_sum(Q, i, j, squares, D).scale(
                    as_element(params.c1, field))
                op = op + _dd_sigma_sum(Q, i, j, others, D).scale(
                    as_element(params.c1_prime, field))
        for k, cval in params.c_t.items():
            eps = field.root_of_unity(k * (field.order // params.m_prime))
            if eps == 1:
                continue
            coeff = as_element(cval, field) / (field.one() - eps)
            op = op + divided_difference_t(Q, i, eps, D).scale(coeff)
        ops.append(op)
    return ops


def dunkl_negative_via_dij(params: DunklParams, D: int, field=None):
    """Same operators through the conjugated-D_ij expansion:
    nabla_i = gamma_i o (d_i + gamma_i c1 sum_j,eps t_j^(eps) D_ij t_j^(-eps)
              + gamma_i sum_eps' c_eps'/(1-eps') D_i^(eps'))
    with d_i the gamma_i-twisted Heisenberg derivative."""
    if params.family != "negative":
        raise InvalidParameters("expected negative-family parameters")
    n, m = params.n, params.m
    field = field or field_create(m)
    Q = QMatrix.minus_one(field, n)
    step = field.order // m
    # gamma_i on S_{-1}: acts by -1 on every variable except x_i
    def gamma_op(i):
        g = MonomialMatrix(field, range(n),
                           [field.one() if k == i else -field.one() for k in range(n)])
        return group_operator(Q, g, D)
    ops = []
    for i in range(n):
        if params.degenerate:
            inner = zero_operator(Q, D, -1)
        else:
            inner = heisenberg_partial(Q, i, D)
        gi = gamma_op(i)
        reflect = zero_operator(Q, D, -1)
        for j in range(n):
            if j == i:
                continue
            for k in range(m // 2):  # representatives of C modulo +-1
                eps = field.root_of_unity(k * step)
                tj = group_operator(Q, make_t(field, n, j, eps), D)
                tj_inv = group_operator(Q, make_t(field, n, j, eps.invert()), D)
                conj = op_compose(tj, op_compose(d_ij(Q, i, j, D), tj_inv))
                reflect = reflect + conj.scale(_pair_coefficient(params, field, i, j, k, m))
        tpart = zero_operator(Q, D, -1)
        for k, cval in params.c_t.items():
            eps = field.root_of_unity(k * (field.order // params.m_prime))
            if eps == 1:
                continue
            coeff = as_element(cval, field) / (field.one() - eps)
            tpart = tpart + d_i_eps(Q, i, eps, D).scale(coeff)
        total = inner + op_compose(gi, reflect) + op_compose(gi, tpart)
        ops.append(op_compose(gi, total))
    return ops


def _pair_coefficient(params, field, i, j, k, m):
    """Coefficient of the +-pair t_j^(eps) D_ij t_j^(-eps), eps = zeta_m^k.

    The pair covers eps exponents {k, k + m/2}; with the rank-2 split these lie
    in one coefficient class (squares take c1, non-squares c1') only when 4 | m.
    """
    if params.c1_prime is None:
        return _c1_value(params, field, i, j)
    if (m // 2) % 2 != 0:
        raise InvalidParameters(
            "rank-2 coefficient split requires 4 | m: the +-eps orbit pairs "
            "cross the two coefficient classes otherwise")
    if k % 2 == 0:
        return _c1_value(params, field, i, j)
    return as_element(params.c1_prime, field)


def dunkl_abelian(Q: QMatrix, params: DunklParams, D: int):
    """nabla_i = partial_i + sum_{eps in C_i minus 1} c_{i,eps}/(1-eps) (1/x_i)(1-t_i^(eps))."""
    if params.family != "abelian":
        raise InvalidParameters("expected abelian-family parameters")
    field = Q.field
    ops = []
    for i in range(Q.n):
        if params.degenerate:
            op = zero_operator(Q, D, -1)
        else:
            op = braided_partial(Q, i, D)
        mi = params.orders[i]
        for k in range(1, mi):
            cval = params.c_ab.get((i, k))
            if cval is None:
                continue
            eps = field.root_of_unity(k * (field.order // mi))
            coeff = as_element(cval, field) / (field.one() - eps)
            op = op + divided_difference_t(Q, i, eps, D).scale(coeff)
        ops.append(op)
    return ops


def dunkl_symmetric(n: int, c, D: int, field=None):
    """Classical Dunkl operators for S_n on the commutative polynomial ring."""
    field = field or field_create(1)
    Q = QMatrix.ones(field, n)
    c = as_element(c, field)
    ops = []
    for i in range(n):
        op = braided_partial(Q, i, D)
        for j in range(n):
            if j == i:
                continue
            xi_minus_xj = QPolynomial.variable(Q, i) - QPolynomial.variable(Q, j)
            perm = list(range(n))
            perm[i], perm[j] = j, i
            s = MonomialMatrix(field, perm, [field.one()] * n)
            def fn(mono, s=s, d=xi_minus_xj):
                p = QPolynomial.monomial(Q, mono)
                num = p - act_on_poly(s, p)
                if num.is_zero():
                    return num
                return divide_by_central(num, d)
            op = op + Operator.build(Q, D, -1, fn).scale(c)
        ops.append(op)
    return ops


def dunkl_family(params: DunklParams, D: int, field=None, Q: QMatrix = None):
    """Dispatch a parameter set to its family constructor."""
    if params.family == "negative":
        return dunkl_negative(params, D, field)
    if params.family == "symmetric":
        return dunkl_symmetric(params.n, params.c, D, field)
    if Q is None:
        field = field or field_create(params.field_order())
        Q = QMatrix.ones(field, params.n)
    return dunkl_abelian(Q, params, D)


# -- braided tensor products -------------------------------------------------------


def factor_qmatrix(params: DunklParams, field) -> QMatrix:
    if params.family == "negative":
        return QMatrix.minus_one(field, params.n)
    return QMatrix.ones(field, params.n)


def composite_qmatrix(factors, r, field) -> QMatrix:
    """Block q-matrix: factor blocks on the diagonal, constant r_kl off it."""
    ranks = [p.n for p in factors]
    n = sum(ranks)
    one = field.one()
    entries = [[one] * n for _ in range(n)]
    offs = [0]
    for nk in ranks:
        offs.append(offs[-1] + nk)
    for k, pk in enumerate(factors):
        Qk = factor_qmatrix(pk, field)
        for a in range(pk.n):
            for b in range(pk.n):
                entries[offs[k] + a][offs[k] + b] = Qk.entries[a][b]
    for k in range(len(factors)):
        for l in range(k + 1, len(factors)):
            rkl = as_element(r[(k, l)], field)
            if rkl.is_zero():
                raise InvalidParameters("r parameters must be nonzero")
            for a in range(offs[k], offs[k + 1]):
                for b in range(offs[l], offs[l + 1]):
                    entries[a][b] = rkl
                    entries[b][a] = rkl.invert()
    return QMatrix(entries)


def dunkl_product(factors, r, D: int, field=None):
    """Braided product of Dunkl families.

    factors: list of DunklParams; r: dict (k,l) -> nonzero scalar for k < l.
    Returns (composite QMatrix, operators).  The operator of variable i of
    factor k acts on a factor-grouped monomial as
    prod_{l<k} r_lk^(deg m_l) * m_1 ... (nabla_i^(k) m_k) ... m_M.
    """
    if not factors:
        raise InvalidParameters("need at least one factor")
    if field is None:
        from .cyclotomic import ambient_order
        orders = [p.field_order() for p in factors]
        for v in r.values():
            if isinstance(v, CycloElement):
                orders.append(v.field.order)
        field = field_create(ambient_order(*orders))
    Q = composite_qmatrix(factors, r, field)
    ranks = [p.n for p in factors]
    offs = [0]
    for nk in ranks:
        offs.append(offs[-1] + nk)
    factor_ops = []
    for p in factors:
        Qk = factor_qmatrix(p, field)
        factor_ops.append(dunkl_family(p, D, field=field, Q=Qk))
    ops = []
    for k, p in enumerate(factors):
        for i in range(p.n):
            def fn(mono, k=k, i=i):
                segs = [mono[offs[l]:offs[l + 1]] for l in range(len(factors))]
                pref = field.one()
                for l in range(k):
                    deg = sum(segs[l])
                    if deg:
                        pref = pref * as_element(r[(l, k)], field) ** deg
                img = factor_ops[k][i].on_monomial(segs[k])
                out = {}
                for fm, c in img.terms.items():
                    full = mono[:offs[k]] + fm + mono[offs[k + 1]:]
                    out[full] = c * pref
                return QPolynomial(Q, out)
            ops.append(Operator.build(Q, D, -1, fn))
    return Q, ops


# -- reports -------------------------------------------------------------------


def operator_report(op: Operator):
    from .qpoly import render_mono, render_poly
    return [[render_mono(m), render_poly(p)] for m, p in sorted(op.action.items())]
