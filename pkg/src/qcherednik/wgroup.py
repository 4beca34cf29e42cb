"""Monomial matrices over cyclotomic fields, the group families W_{C,C'} and
G(m,p,n), q-preservation predicates, and the block structure of a q-matrix.

A MonomialMatrix sends x_j to scalars[j] * x_{perm[j]}.  Products compose as
functions: (g*h)(x) = g(h(x)).  Only monomial matrices are group elements;
dense matrices appear solely as inputs to the predicate `preserves_q`.
"""

from __future__ import annotations

from itertools import product as iter_product

from .cyclotomic import CycloField, as_element, field_create, render_scalar
from .qpoly import QMatrix, QPolynomial


class BadIndices(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class InvalidParameters(ValueError):
    pass


class MonomialMatrix:
    __slots__ = ("n", "field", "perm", "scalars")

    def __init__(self, field: CycloField, perm, scalars):
        self.field = field
        self.n = len(perm)
        self.perm = tuple(perm)
        self.scalars = tuple(as_element(s, field) for s in scalars)
        if sorted(self.perm) != list(range(self.n)):
            raise BadIndices("perm must be a permutation of 0..n-1")
        if any(s.is_zero() for s in self.scalars):
            raise BadIndices("all scalars must be nonzero")

    @staticmethod
    def identity(field, n) -> "MonomialMatrix":
        return MonomialMatrix(field, range(n), [field.one()] * n)

    def key(self):
        return (self.perm, tuple(s.coeffs for s in self.scalars))

    def __eq__(self, other):
        return isinstance(other, MonomialMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def compose(self, other: "MonomialMatrix") -> "MonomialMatrix":
        """(self o other): x_j -> other, then self."""
        perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
        scal = tuple(other.scalars[j] * self.scalars[other.perm[j]] for j in range(self.n))
        return MonomialMatrix(self.field, perm, scal)

    __mul__ = compose

    def inverse(self) -> "MonomialMatrix":
        inv_perm = [0] * self.n
        for j, p in enumerate(self.perm):
            inv_perm[p] = j
        scal = tuple(self.scalars[inv_perm[k]].invert() for k in range(self.n))
        return MonomialMatrix(self.field, inv_perm, scal)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(s == 1 for s in self.scalars)

    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.n))

    def det(self):
        sign = perm_sign(self.perm)
        out = self.field.from_rational(sign)
        for s in self.scalars:
            out = out * s
        return out

    def order(self, cap: int = 10000) -> int:
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc.compose(self)
        raise CapExceeded(f"no power up to {cap} is the identity")

    def to_dense(self):
        """Dense column-convention matrix M with M[perm[j]][j] = scalars[j]."""
        z = self.field.zero()
        rows = [[z] * self.n for _ in range(self.n)]
        for j in range(self.n):
            rows[self.perm[j]][j] = self.scalars[j]
        return rows

    def __repr__(self):
        imgs = ", ".join(
            f"x{j + 1}->{render_scalar(self.scalars[j])}*x{self.perm[j] + 1}"
            for j in range(self.n)
        )
        return f"[{imgs}]"


def perm_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- the generators from the negative-family presentations -------------------


def make_t(field, n, i, eps) -> MonomialMatrix:
    """t_i^(eps): multiplies x_i by eps, fixes the other variables."""
    eps = as_element(eps, field)
    if eps.is_zero():
        raise BadIndices("eps must be nonzero")
    scal = [field.one()] * n
    scal[i] = eps
    return MonomialMatrix(field, range(n), scal)


def make_sigma(field, n, i, j, eps) -> MonomialMatrix:
    """sigma_ij^(eps): x_i -> eps x_j, x_j -> -eps^{-1} x_i, rest fixed."""
    if i == j:
        raise BadIndices("sigma needs distinct indices")
    eps = as_element(eps, field)
    if eps.is_zero():
        raise BadIndices("eps must be nonzero")
    perm = list(range(n))
    perm[i], perm[j] = j, i
    scal = [field.one()] * n
    scal[i] = eps
    scal[j] = -eps.invert()
    return MonomialMatrix(field, perm, scal)


def make_srefl(field, n, i, j, eps) -> MonomialMatrix:
    """s_ij^(eps) = (ij) t_i^(eps) t_j^(eps^-1): x_i -> eps x_j, x_j -> eps^-1 x_i."""
    if i == j:
        raise BadIndices("s needs distinct indices")
    eps = as_element(eps, field)
    perm = list(range(n))
    perm[i], perm[j] = j, i
    scal = [field.one()] * n
    scal[i] = eps
    scal[j] = eps.invert()
    return MonomialMatrix(field, perm, scal)


def minus_identity(field, n) -> MonomialMatrix:
    return MonomialMatrix(field, range(n), [-field.one()] * n)


# -- actions ------------------------------------------------------------------


def act_on_poly(g: MonomialMatrix, p: QPolynomial) -> QPolynomial:
    """Multiplicative extension of x_j -> d_j x_{perm(j)} with q-reordering."""
    Q = p.qmatrix
    out = {}
    for m, c in p.terms.items():
        b = [0] * Q.n
        coeff = c
        for j, e in enumerate(m):
            if e:
                b[g.perm[j]] = e
                coeff = coeff * g.scalars[j] ** e
        # sort the image blocks back into ascending order
        for j in range(Q.n):
            if m[j] == 0:
                continue
            for k in range(j + 1, Q.n):
                if m[k] and g.perm[j] > g.perm[k]:
                    coeff = coeff * Q.entries[g.perm[j]][g.perm[k]] ** (m[j] * m[k])
        b = tuple(b)
        s = out.get(b)
        out[b] = coeff if s is None else s + coeff
    return QPolynomial(Q, out)


def act_on_dual(g: MonomialMatrix) -> MonomialMatrix:
    """Action on the dual basis: y_j -> d_j^{-1} y_{perm(j)}, so <g x, g y> = <x, y>."""
    return MonomialMatrix(g.field, g.perm, [s.invert() for s in g.scalars])


# -- groups by closure ----------------------------------------------------------


class Group:
    def __init__(self, field, n, generators, elements):
        self.field = field
        self.n = n
        self.generators = list(generators)
        self.elements = list(elements)
        self._keys = {m.key() for m in self.elements}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, m: MonomialMatrix):
        return m.key() in self._keys

    def element_keys(self):
        return set(self._keys)

    def identity(self):
        return MonomialMatrix.identity(self.field, self.n)


def generate_group(gens, cap: int = 100000) -> Group:
    """Breadth-first closure of a generator list under multiplication."""
    gens = list(gens)
    if not gens:
        raise InvalidParameters("need at least one generator")
    field, n = gens[0].field, gens[0].n
    for g in gens:
        if g.n != n or g.field.order != field.order:
            raise InvalidParameters("generators must share rank and ambient field")
    ident = MonomialMatrix.identity(field, n)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = m.compose(g)
                k = prod.key()
                if k not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"closure exceeded cap {cap}")
                    seen[k] = prod
                    nxt.append(prod)
        frontier = nxt
    elements = sorted(seen.values(), key=lambda m: repr(m.key()))
    return Group(field, n, gens, elements)


def build_w_cc(m: int, mprime: int, n: int, field=None, cap: int = 100000) -> Group:
    """W_{C,C'} with C = mu_m (m even), C' = mu_m' (m'|m), generated by all
    sigma_ij^(eps), eps in C, and t_i^(eps'), eps' in C'."""
    if m % 2 != 0:
        raise InvalidParameters("|C| must be even (so -1 lies in C)")
    if m % mprime != 0:
        raise InvalidParameters("|C'| must divide |C|")
    if n < 2:
        raise InvalidParameters("rank must be at least 2")
    field = field or field_create(m)
    if field.order % m != 0:
        raise InvalidParameters("ambient field must contain mu_m")
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(m):
                gens.append(make_sigma(field, n, i, j, field.root_of_unity(k * (field.order // m))))
    for i in range(n):
        for k in range(1, mprime):
            gens.append(make_t(field, n, i, field.root_of_unity(k * (field.order // mprime))))
    return generate_group(gens, cap)


def build_gmpn(m: int, p: int, n: int, field=None) -> Group:
    """G(m,p,n) enumerated directly; order m^n n!/p."""
    if m % p != 0:
        raise InvalidParameters("p must divide m")
    field = field or field_create(m)
    if field.order % m != 0:
        raise InvalidParameters("ambient field must contain mu_m")
    step = field.order // m
    elements = []
    exps = range(m)
    for perm in _permutations(n):
        for ks in iter_product(exps, repeat=n):
            if (sum(ks) * (m // p)) % m != 0:
                continue
            scal = [field.root_of_unity(k * step) for k in ks]
            elements.append(MonomialMatrix(field, perm, scal))
    # standard generating set: adjacent transpositions, t_1^(zeta^p),
    # and t_1^(zeta) t_2^(zeta^-1)
    gens = []
    for i in range(n - 1):
        pm = list(range(n))
        pm[i], pm[i + 1] = i + 1, i
        gens.append(MonomialMatrix(field, pm, [field.one()] * n))
    if p < m:
        gens.append(make_t(field, n, 0, field.root_of_unity(p * step)))
    if m > 1 and n >= 2:
        gens.append(
            make_t(field, n, 0, field.root_of_unity(step)).compose(
                make_t(field, n, 1, field.root_of_unity(-step % field.order))
            )
        )
    return Group(field, n, gens, elements)


def build_gmpn_plus(m: int, p: int, n: int, det_power: int, field=None) -> Group:
    """Elements g of G(m,p,n) with det(g)^det_power = 1."""
    g = build_gmpn(m, p, n, field)
    elements = [e for e in g if (e.det() ** det_power) == 1]
    gens = [e for e in elements if not e.is_identity()]
    return Group(g.field, n, gens, elements)


def _permutations(n):
    if n == 0:
        return [()]
    out = []
    for rest in _permutations(n - 1):
        for pos in range(n):
            out.append(rest[:pos] + (n - 1,) + rest[pos:])
    return sorted(out)


# -- predicates ----------------------------------------------------------------


def preserves_q(A, Q: QMatrix) -> bool:
    """(q_kl - q_ij) A^i_k A^j_l = 0 for all quadruples; A dense column-convention
    (A[i][k] = coefficient of x_i in A x_k) or a MonomialMatrix."""
    if isinstance(A, MonomialMatrix):
        A = A.to_dense()
    n = Q.n
    for k in range(n):
        for l in range(n):
            qkl = Q.entries[k][l]
            for i in range(n):
                if A[i][k].is_zero():
                    continue
                for j in range(n):
                    if (qkl - Q.entries[i][j]) * A[i][k] * A[j][l] != 0:
                        return False
    return True


# -- block structure -------------------------------------------------------------


class BlockStructure:
    def __init__(self, Q: QMatrix, blocks, signs):
        self.qmatrix = Q
        self.blocks = [tuple(b) for b in blocks]
        self.signs = list(signs)
        self._block_of = {}
        for bi, b in enumerate(self.blocks):
            for i in b:
                self._block_of[i] = bi

    def block_of(self, i: int) -> int:
        return self._block_of[i]

    def pair_value(self, bi: int, bj: int):
        Q = self.qmatrix
        if bi == bj:
            one = Q.field.one()
            return one if self.signs[bi] > 0 else -one
        return Q.entries[self.blocks[bi][0]][self.blocks[bj][0]]

    def gamma(self, bi: int) -> MonomialMatrix:
        """gamma_B: acts on V_C by the scalar q_{B,C}."""
        Q = self.qmatrix
        scal = [self.pair_value(bi, self.block_of(j)) for j in range(Q.n)]
        return MonomialMatrix(Q.field, range(Q.n), scal)

    def gammas(self):
        return [self.gamma(bi) for bi in range(len(self.blocks))]


def block_structure(Q: QMatrix) -> BlockStructure:
    """Partition by 'q_ik = q_jk for k != i,j and q_ij = +-1', signed per block."""
    n = Q.n
    one = Q.field.one()

    def same_block(i, j):
        if Q.entries[i][j] != one and Q.entries[i][j] != -one:
            return False
        return all(Q.entries[i][k] == Q.entries[j][k] for k in range(n) if k not in (i, j))

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if same_block(i, j):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    blocks = sorted(sorted(b) for b in groups.values())
    signs = []
    for b in blocks:
        if len(b) == 1:
            signs.append(1)
        else:
            sign = 1 if Q.entries[b[0]][b[1]] == one else -1
            for a in b:
                for c in b:
                    if a != c:
                        expected = one if sign > 0 else -one
                        if Q.entries[a][c] != expected:
                            raise InvalidParameters("mixed signs inside a block")
            signs.append(sign)
    return BlockStructure(Q, blocks, signs)


def gamma_generators(Q: QMatrix):
    """The diagonal matrices gamma_i with gamma_i(x_j) = q_ij x_j, generating Gamma_q."""
    return [
        MonomialMatrix(Q.field, range(Q.n), [Q.entries[i][j] for j in range(Q.n)])
        for i in range(Q.n)
    ]


def gamma_group(Q: QMatrix, cap: int = 100000) -> Group:
    return generate_group(gamma_generators(Q), cap)


def normalizes_gamma(g: MonomialMatrix, Q: QMatrix, cap: int = 100000) -> bool:
    """g Gamma_q g^{-1} = Gamma_q, checked on the generators gamma_i."""
    lattice = gamma_group(Q, cap)
    ginv = g.inverse()
    return all(g.compose(gam).compose(ginv) in lattice for gam in gamma_generators(Q))


# -- JSON group specs (CLI surface) ----------------------------------------------


def matrix_from_spec(spec, field) -> MonomialMatrix:
    from .cyclotomic import parse_scalar

    return MonomialMatrix(
        field, spec["perm"], [parse_scalar(s, field) for s in spec["scalars"]]
    )


def matrix_to_spec(m: MonomialMatrix):
    from .cyclotomic import scalar_to_literal

    return {"perm": list(m.perm), "scalars": [scalar_to_literal(s) for s in m.scalars]}


def group_from_spec(spec) -> Group:
    fam = spec["family"]
    if fam == "w_cc":
        return build_w_cc(spec["m"], spec["m_prime"], spec["n"],
                          field=field_create(spec["field_order"]) if "field_order" in spec else None,
                          cap=spec.get("cap", 100000))
    if fam == "gmpn":
        return build_gmpn(spec["m"], spec["p"], spec["n"],
                          field=field_create(spec["field_order"]) if "field_order" in spec else None)
    if fam == "gmpn_plus":
        return build_gmpn_plus(spec["m"], spec["p"], spec["n"], spec["det_power"],
                               field=field_create(spec["field_order"]) if "field_order" in spec else None)
    if fam == "generators":
        field = field_create(spec["field_order"])
        gens = [matrix_from_spec(s, field) for s in spec["generators"]]
        return generate_group(gens, cap=spec.get("cap", 100000))
    raise InvalidParameters(f"unknown group family {fam!r}")
