"""Quadratic-double machinery over a group algebra: commutator parameters,
equivariance and q-commutativity predicates, maximal relation spaces via exact
kernel intersections, the diamond/star operations, Yetter-Drinfeld braidings,
Hilbert functions of quadratic algebras, and the q-reflections module with its
mu_c / nu maps.

Vectors in V are coefficient lists over the x-basis; matrices use the column
convention M(x_j) = sum_i M[i][j] x_i.  V (x) V is indexed by i*n + j for
x_i (x) x_j.  Relation spaces are kept in reduced row echelon form so equality
of spaces is equality of representations.
"""

from __future__ import annotations

from .cyclotomic import (
    CycloElement,
    as_element,
    field_create,
    parse_scalar,
    scalar_to_literal,
)
from .qpoly import QMatrix
from .wgroup import (
    Group,
    MonomialMatrix,
    act_on_dual,
    block_structure,
    gamma_generators,
    matrix_from_spec,
    matrix_to_spec,
)


class NotEquivariant(ValueError):
    pass


class NotYetterDrinfeld(ValueError):
    pass


class TooLarge(ValueError):
    pass


class NotInGroup(ValueError):
    pass


class NotConjugationInvariant(ValueError):
    pass


class NotNormalized(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense exact linear algebra


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = None
            for t in range(k):
                term = A[i][t] * B[t][j]
                s = term if s is None else s + term
            row.append(s)
        out.append(row)
    return out


def mat_is_zero(A):
    return all(e.is_zero() for row in A for e in row)


def rref(rows):
    """Reduced row echelon form; returns (rows as tuples, pivot columns)."""
    rows = [list(r) for r in rows if any(not e.is_zero() for e in r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].invert()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    rows = [tuple(row) for row in rows if any(not e.is_zero() for e in row)]
    return rows, pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def kernel_basis(rows, ncols, field):
    """Basis of the solution space of (rows) v = 0, deterministic RREF form."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero, one = field.zero(), field.one()
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


class RelationSpace:
    """A subspace of V(x)V or V*(x)V* in canonical reduced row echelon form."""

    def __init__(self, n, ambient, vectors, field):
        self.n = n
        self.ambient = ambient
        self.field = field
        self.rows, _ = rref(vectors)

    @property
    def dim(self):
        return len(self.rows)

    def contains_vector(self, v) -> bool:
        v = list(v)
        for row in self.rows:
            lead = next(i for i, e in enumerate(row) if not e.is_zero())
            if not v[lead].is_zero():
                f = v[lead]
                v = [a - f * b for a, b in zip(v, row)]
        return all(e.is_zero() for e in v)

    def contains(self, other: "RelationSpace") -> bool:
        return all(self.contains_vector(r) for r in other.rows)

    def intersect(self, other: "RelationSpace") -> "RelationSpace":
        """Zassenhaus: rref of [A|A; B|0], intersection read off rows with zero left half."""
        N = self.n * self.n
        zero = self.field.zero()
        big = []
        for r in self.rows:
            big.append(list(r) + list(r))
        for r in other.rows:
            big.append(list(r) + [zero] * N)
        red, _ = rref(big)
        vectors = [row[N:] for row in red if all(e.is_zero() for e in row[:N])]
        return RelationSpace(self.n, self.ambient, vectors, self.field)

    def __eq__(self, other):
        return (isinstance(other, RelationSpace) and self.ambient == other.ambient
                and self.rows == other.rows)

    def __repr__(self):
        return f"RelationSpace({self.ambient}, dim={self.dim})"


def full_tensor_square(n, ambient, field) -> RelationSpace:
    one, zero = field.one(), field.zero()
    vecs = []
    for i in range(n * n):
        v = [zero] * (n * n)
        v[i] = one
        vecs.append(v)
    return RelationSpace(n, ambient, vecs, field)


def wedge_sq(Q: QMatrix) -> RelationSpace:
    """ker(id + tau_q) in V(x)V: span of x_i(x)x_j - q_ij x_j(x)x_i."""
    n, field = Q.n, Q.field
    zero = field.zero()
    vecs = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [zero] * (n * n)
            v[i * n + j] = field.one()
            v[j * n + i] = -Q.entries[i][j]
            vecs.append(v)
    return RelationSpace(n, "VV", vecs, field)


def wedge_sq_dual(Q: QMatrix, transpose: bool = True) -> RelationSpace:
    """Relations of the dual polynomial ring: y_i y_j = q_ji y_j y_i when
    transpose=True (the q-Cherednik side S_{q^T}(V*)), q_ij otherwise."""
    n, field = Q.n, Q.field
    zero = field.zero()
    vecs = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [zero] * (n * n)
            v[i * n + j] = field.one()
            q = Q.entries[j][i] if transpose else Q.entries[i][j]
            v[j * n + i] = -q
            vecs.append(v)
    return RelationSpace(n, "V*V*", vecs, field)


# ---------------------------------------------------------------------------
# commutator parameters beta = sum_w delta_w (x) L_w


class CommutatorMap:
    """A CW-valued pairing beta(f(x)v) = sum_w <L_w(v), f> w with finite support.

    Support elements are monomial matrices (hashable, exactly conjugatable);
    the L_w are dense matrices over the module.  `n` is the module dimension,
    which for q-reflection modules can differ from the matrix rank of w.
    """

    def __init__(self, n, field, entries):
        self.n = n
        self.field = field
        self.entries = {}
        for w, L in entries:
            if mat_is_zero(L):
                continue
            key = w.key()
            if key in self.entries:
                raise ValueError("duplicate support element")
            self.entries[key] = (w, [list(row) for row in L])

    def support(self):
        return list(self.entries.values())

    def matrix_for(self, w: MonomialMatrix):
        got = self.entries.get(w.key())
        if got is None:
            zero = self.field.zero()
            return [[zero] * self.n for _ in range(self.n)]
        return got[1]

    def __eq__(self, other):
        if not isinstance(other, CommutatorMap):
            return NotImplemented
        if set(self.entries) != set(other.entries):
            return False
        for k, (_, L) in self.entries.items():
            M = other.entries[k][1]
            if any(a != b for ra, rb in zip(L, M) for a, b in zip(ra, rb)):
                return False
        return True

    def __repr__(self):
        return f"CommutatorMap(n={self.n}, support={len(self.entries)})"


def diamond(beta: CommutatorMap, gamma: CommutatorMap) -> CommutatorMap:
    """Parameter sum: support-wise L_w + M_w, zero entries pruned."""
    keys = set(beta.entries) | set(gamma.entries)
    out = []
    for k in keys:
        w = (beta.entries.get(k) or gamma.entries.get(k))[0]
        L = beta.matrix_for(w)
        M = gamma.matrix_for(w)
        out.append((w, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(L, M)]))
    return CommutatorMap(beta.n, beta.field, out)


def star(beta: CommutatorMap, gamma: CommutatorMap) -> CommutatorMap:
    """Parameter product: support-wise L_w M_w, zero entries pruned."""
    keys = set(beta.entries) & set(gamma.entries)
    out = []
    for k in keys:
        w, L = beta.entries[k]
        M = gamma.entries[k][1]
        out.append((w, mat_mul(L, M)))
    return CommutatorMap(beta.n, beta.field, out)


def check_equivariance(beta: CommutatorMap, group) -> bool:
    """beta(w(f), w(v)) = w beta(f,v) w^{-1}, as matrix identities
    L_{gwg^{-1}} = g L_w g^{-1} over the group's generators."""
    gens = group.generators if isinstance(group, Group) else list(group)
    for g in gens:
        G = g.to_dense()
        Ginv = g.inverse().to_dense()
        for _, (w, L) in beta.entries.items():
            target = g.compose(w).compose(g.inverse())
            conj = mat_mul(G, mat_mul(L, Ginv))
            expected = beta.matrix_for(target)
            if any(a != b for ra, rb in zip(conj, expected) for a, b in zip(ra, rb)):
                return False
    return True


def check_q_commutativity(beta: CommutatorMap, Q: QMatrix) -> bool:
    """Both tensor equations, for V and for V*, for every support element."""
    n = Q.n
    for _, (w, L) in beta.entries.items():
        W = w.to_dense()
        Wd = act_on_dual(w).to_dense()
        for i in range(n):
            for j in range(n):
                qij = Q.entries[i][j]
                for a in range(n):
                    u1 = (Q.field.one() if a == i else Q.field.zero()) - qij * W[a][i]
                    u2 = qij * (Q.field.one() if a == j else Q.field.zero()) - W[a][j]
                    for b in range(n):
                        if u1 * L[b][j] != u2 * L[b][i]:
                            return False
                qji = Q.entries[j][i]
                for a in range(n):
                    u1 = (Q.field.one() if a == i else Q.field.zero()) - qji * Wd[a][i]
                    u2 = qji * (Q.field.one() if a == j else Q.field.zero()) - Wd[a][j]
                    for b in range(n):
                        if u1 * L[j][b] != u2 * L[i][b]:
                            return False
    return True


def t_minus(w: MonomialMatrix, L, n: int, field):
    """Matrix of u(x)v -> (L(x)id)(u(x)w(v) + v(x)u) on V(x)V."""
    W = w.to_dense() if isinstance(w, MonomialMatrix) else w
    N = n * n
    zero = field.zero()
    T = [[zero] * N for _ in range(N)]
    for a in range(n):
        for b in range(n):
            col = a * n + b
            for c in range(n):
                for d in range(n):
                    val = L[c][a] * W[d][b]
                    if d == a:
                        val = val + L[c][b]
                    if not val.is_zero():
                        T[c * n + d][col] = T[c * n + d][col] + val
    return T


def t_plus(w: MonomialMatrix, L, n: int, field):
    """Matrix of f(x)g -> (id(x)L^*)(w^{-1}(f)(x)g + g(x)f) on V*(x)V*."""
    U = act_on_dual(w.inverse()).to_dense()
    N = n * n
    zero = field.zero()
    T = [[zero] * N for _ in range(N)]
    for a in range(n):
        for b in range(n):
            col = a * n + b
            for c in range(n):
                for d in range(n):
                    val = U[c][a] * L[b][d]
                    if c == b:
                        val = val + L[a][d]
                    if not val.is_zero():
                        T[c * n + d][col] = T[c * n + d][col] + val
    return T


def r_max(beta: CommutatorMap, group=None):
    """(R^-_max, R^+_max) = intersections of ker T^-_w, ker T^+_w over the support.

    If a group is supplied, W-equivariance of beta is checked first.
    """
    if group is not None and not check_equivariance(beta, group):
        raise NotEquivariant("the commutator map is not W-equivariant")
    n, field = beta.n, beta.field
    rows_minus, rows_plus = [], []
    for _, (w, L) in beta.entries.items():
        rows_minus.extend(t_minus(w, L, n, field))
        rows_plus.extend(t_plus(w, L, n, field))
    km = kernel_basis(rows_minus, n * n, field) if rows_minus else None
    kp = kernel_basis(rows_plus, n * n, field) if rows_plus else None
    if km is None:
        return full_tensor_square(n, "VV", field), full_tensor_square(n, "V*V*", field)
    return (RelationSpace(n, "VV", km, field), RelationSpace(n, "V*V*", kp, field))


# ---------------------------------------------------------------------------
# Yetter-Drinfeld modules and braidings


class YDModule:
    """A W-module with W-grading: action matrices per group element, grading
    per basis vector; the YD condition sigma(Y_w) = Y_{sigma w sigma^-1} is
    checked by validate()."""

    def __init__(self, labels, group: Group, action, grading, field):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.group = group
        self.action = dict(action)  # group element key -> dim x dim matrix
        self.grading = list(grading)  # per basis vector, a MonomialMatrix
        self.field = field

    def act(self, w: MonomialMatrix):
        return self.action[w.key()]

    def validate(self):
        for g in self.group.generators:
            A = self.act(g)
            for a in range(self.dim):
                target = g.compose(self.grading[a]).compose(g.inverse())
                for c in range(self.dim):
                    if not A[c][a].is_zero() and self.grading[c] != target:
                        raise NotYetterDrinfeld(
                            f"action of a generator moves degree {a} off its "
                            f"conjugated component")
        return True


def yd_braiding(Y: YDModule):
    """Psi(y(x)z) = |y|(z)(x)y as a dim^2 x dim^2 matrix; validates first."""
    Y.validate()
    d = Y.dim
    zero = Y.field.zero()
    P = [[zero] * (d * d) for _ in range(d * d)]
    for a in range(d):
        A = Y.act(Y.grading[a])
        for b in range(d):
            col = a * d + b
            for c in range(d):
                if not A[c][b].is_zero():
                    P[c * d + a][col] = A[c][b]
    return P


def braiding_dual(P, field):
    """The adjoint braiding on the dual: the transpose matrix."""
    N = len(P)
    return [[P[j][i] for j in range(N)] for i in range(N)]


def braid_equation_holds(P, dim, field) -> bool:
    """(Psi(x)id)(id(x)Psi)(Psi(x)id) = (id(x)Psi)(Psi(x)id)(id(x)Psi) on basis triples."""

    def apply12(vec):
        out = {}
        for (a, b, c), v in vec.items():
            for r in range(dim * dim):
                coeff = P[r][a * dim + b]
                if not coeff.is_zero():
                    key = (r // dim, r % dim, c)
                    out[key] = out.get(key, field.zero()) + coeff * v
        return out

    def apply23(vec):
        out = {}
        for (a, b, c), v in vec.items():
            for r in range(dim * dim):
                coeff = P[r][b * dim + c]
                if not coeff.is_zero():
                    key = (a, r // dim, r % dim)
                    out[key] = out.get(key, field.zero()) + coeff * v
        return out

    for a in range(dim):
        for b in range(dim):
            for c in range(dim):
                start = {(a, b, c): field.one()}
                lhs = apply12(apply23(apply12(start)))
                rhs = apply23(apply12(apply23(start)))
                keys = set(lhs) | set(rhs)
                for k in keys:
                    if lhs.get(k, field.zero()) != rhs.get(k, field.zero()):
                        return False
    return True


def heisenberg_beta(Y: YDModule) -> CommutatorMap:
    """beta_Y(f(x)v) = <v,f>|v|: support = occurring degrees, L_w = projection."""
    zero, one = Y.field.zero(), Y.field.one()
    by_degree = {}
    for a, g in enumerate(Y.grading):
        by_degree.setdefault(g.key(), (g, []))[1].append(a)
    entries = []
    for _, (g, idxs) in by_degree.items():
        L = [[zero] * Y.dim for _ in range(Y.dim)]
        for a in idxs:
            L[a][a] = one
        entries.append((g, L))
    return CommutatorMap(Y.dim, Y.field, entries)


def v_module_over_gamma(Q: QMatrix) -> YDModule:
    """V as a Yetter-Drinfeld module over Gamma_q, graded by |x_i| = gamma_i."""
    from .wgroup import gamma_group

    gammas = gamma_generators(Q)
    grp = gamma_group(Q)
    field = Q.field
    action = {g.key(): g.to_dense() for g in grp}
    return YDModule([f"x{i+1}" for i in range(Q.n)], grp, action, gammas, field)


def heisenberg_beta_v(Q: QMatrix) -> CommutatorMap:
    """The q-Heisenberg commutator on V: [y_j, x_i] = delta_ij gamma_i."""
    return heisenberg_beta(v_module_over_gamma(Q))


# ---------------------------------------------------------------------------
# Hilbert functions of quadratic algebras T(Y)/<R>


def quad_algebra_dims(dim, relation_rows, d_max, cap: int = 200000):
    """Hilbert function of T(Y)/<R> in degrees 0..d_max by exact sparse
    row reduction of sum_k Y^k (x) R (x) Y^(d-2-k) inside Y^d."""
    if d_max >= 2 and dim ** d_max > cap:
        raise TooLarge(f"{dim}^{d_max} exceeds the {cap} vector cap")
    sparse_rels = []
    for row in relation_rows:
        entries = {i: c for i, c in enumerate(row) if not c.is_zero()}
        if entries:
            sparse_rels.append(entries)
    dims = [1]
    if d_max >= 1:
        dims.append(dim)
    for d in range(2, d_max + 1):
        pivots = {}
        count = 0
        width = dim ** d
        for rel in sparse_rels:
            for k in range(d - 1):
                hi = dim ** (d - 2 - k)
                for pre in range(dim ** k):
                    base_pre = pre * (dim * dim) * hi
                    for suf in range(hi):
                        row = {}
                        for ab, c in rel.items():
                            col = base_pre + ab * hi + suf
                            row[col] = c
                        row = _reduce_sparse(row, pivots)
                        if row:
                            lead = min(row)
                            inv = row[lead].invert()
                            row = {c: v * inv for c, v in row.items()}
                            pivots[lead] = row
                            count += 1
        dims.append(width - count)
    return dims


def _reduce_sparse(row, pivots):
    row = dict(row)
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            return row
        f = row[lead]
        for c, v in piv.items():
            s = row.get(c)
            s = -f * v if s is None else s - f * v
            if s.is_zero():
                row.pop(c, None)
            else:
                row[c] = s
    return row


# ---------------------------------------------------------------------------
# the q-reflections module


class RootDatum:
    """A q-reflection gamma_B s with its root, coroot, and parameter value."""

    __slots__ = ("label", "block", "element", "reflection", "alpha", "alpha_check", "c")

    def __init__(self, label, block, element, reflection, alpha, alpha_check, c=None):
        self.label = label
        self.block = block
        self.element = element
        self.reflection = reflection
        self.alpha = alpha
        self.alpha_check = alpha_check
        self.c = c

    def __repr__(self):
        return f"RootDatum(block={self.block}, element={self.element!r})"


def enumerate_q_reflections(Wtilde: Group, Q: QMatrix):
    """All pairs (block B, g in Wtilde) with gamma_B^{-1} g a complex reflection
    whose root lies in V_B; returns RootDatum list without parameter values."""
    bs = block_structure(Q)
    field = Q.field
    n = Q.n
    out = []
    for bi, block in enumerate(bs.blocks):
        gam = bs.gamma(bi)
        if gam not in Wtilde:
            raise NotInGroup(f"gamma of block {block} is not in the group")
        for g in Wtilde:
            s = gam.inverse().compose(g)
            S = s.to_dense()
            one_minus = [[(field.one() if i == j else field.zero()) - S[i][j]
                          for j in range(n)] for i in range(n)]
            cols = [[one_minus[i][j] for i in range(n)] for j in range(n)]
            nonzero_cols = [c for c in cols if any(not e.is_zero() for e in c)]
            if not nonzero_cols:
                continue
            if rank(nonzero_cols) != 1:
                continue
            alpha = list(nonzero_cols[0])
            lead = next(i for i, e in enumerate(alpha) if not e.is_zero())
            inv = alpha[lead].invert()
            alpha = [e * inv for e in alpha]
            if any(not alpha[i].is_zero() for i in range(n) if i not in block):
                continue
            # (1 - s) x_j = alpha_check[j] * alpha, read off at alpha's lead coord
            alpha_check = [cols[j][lead] for j in range(n)]
            if any(not alpha_check[i].is_zero() for i in range(n) if i not in block):
                continue
            if bs.signs[bi] < 0 and not s.is_diagonal():
                # On a negative block the structure line of every q-commutative
                # table is the (-1)-eigenline of gamma_B s on the reflection
                # plane (x_i + eps x_j, the eps-flipped reflection root), and
                # likewise for the coroot; flip the non-lead support coordinate.
                other = next(k for k in range(n)
                             if k != lead and not alpha[k].is_zero())
                alpha[other] = -alpha[other]
                alpha_check[other] = -alpha_check[other]
            out.append(RootDatum((bi, g.key()), block, g, s, alpha, alpha_check))
    return out


def build_q_reflections(Wtilde: Group, Q: QMatrix, c):
    """The YD module Y_q with basis the q-reflections of Wtilde, the maps
    mu_c(x) = sum c_s <x, alpha_s^v> [gamma_B s] and nu(y) = sum <alpha_s, y>
    [gamma_B s]*, and the root data.

    `c` assigns parameters: a dict keyed by RootDatum.label, or a callable
    RootDatum -> scalar.  It must be conjugation-invariant.
    """
    field = Q.field
    n = Q.n
    for gam in gamma_generators(Q):
        if gam not in Wtilde:
            raise NotInGroup("the group does not contain Gamma_q")
    data = enumerate_q_reflections(Wtilde, Q)
    index = {d.label: a for a, d in enumerate(data)}
    bs = block_structure(Q)
    for d in data:
        if callable(c):
            d.c = as_element(c(d), field)
        else:
            d.c = as_element(c[d.label], field)

    def conj_label(w, datum):
        g2 = w.compose(datum.element).compose(w.inverse())
        b2 = bs.block_of(w.perm[datum.block[0]])
        return (b2, g2.key()), g2

    # conjugation invariance of c
    for w in Wtilde.generators:
        for d in data:
            lab2, _ = conj_label(w, d)
            if lab2 not in index:
                raise NotConjugationInvariant(
                    "q-reflections are not closed under conjugation")
            if data[index[lab2]].c != d.c:
                raise NotConjugationInvariant(
                    f"c is not constant on the conjugacy class of {d.label}")

    # action of every group element, via [gamma_B s] = gamma_B s (x) alpha_s
    action = {}
    for w in Wtilde:
        W = w.to_dense()
        zero = field.zero()
        M = [[zero] * len(data) for _ in range(len(data))]
        for a, d in enumerate(data):
            lab2, _ = conj_label(w, d)
            a2 = index[lab2]
            target = data[a2]
            img = [sum_vec(W, d.alpha, field, i) for i in range(n)]
            lead = next(i for i, e in enumerate(target.alpha) if not e.is_zero())
            chi = img[lead] * target.alpha[lead].invert()
            # img must be chi * target.alpha
            for i in range(n):
                if img[i] != chi * target.alpha[i]:
                    raise NotYetterDrinfeld("conjugated root is not proportional")
            M[a2][a] = chi
        action[w.key()] = M
    Y = YDModule([d.label for d in data], Wtilde, action, [d.element for d in data], field)
    mu = [[d.c * d.alpha_check[k] for k in range(n)] for d in data]
    nu = [[d.alpha[k] for k in range(n)] for d in data]
    return Y, mu, nu, data


def sum_vec(W, v, field, i):
    s = field.zero()
    for j, e in enumerate(v):
        if not e.is_zero():
            s = s + W[i][j] * e
    return s


def with_gamma_bar_grading(Y: YDModule, Q: QMatrix, data) -> YDModule:
    """The second YD structure on Y_q: |[gamma_B s]| = gamma_B."""
    bs = block_structure(Q)
    grading = [bs.gamma(d.label[0]) for d in data]
    return YDModule(Y.labels, Y.group, Y.action, grading, Y.field)


def root_span_ok(data, n, field) -> bool:
    """Injectivity certificate: the roots with c_s != 0 span V."""
    rows = [d.alpha for d in data if d.c is not None and not d.c.is_zero()]
    return bool(rows) and rank(rows) == n


# ---------------------------------------------------------------------------
# the morphism-existence certificate of the embedding route


def beta_through_module(mu, nu, Y: YDModule) -> CommutatorMap:
    """beta_Y o (nu (x) mu) as a CommutatorMap on V: L_g[k][i] =
    sum over labels A of degree g of nu[A][k] mu[A][i]."""
    n = len(mu[0])
    zero = Y.field.zero()
    by_degree = {}
    for a, g in enumerate(Y.grading):
        by_degree.setdefault(g.key(), (g, []))[1].append(a)
    entries = []
    for _, (g, idxs) in by_degree.items():
        L = [[zero] * n for _ in range(n)]
        for a in idxs:
            for k in range(n):
                if nu[a][k].is_zero():
                    continue
                for i in range(n):
                    L[k][i] = L[k][i] + nu[a][k] * mu[a][i]
        entries.append((g, L))
    return CommutatorMap(n, Y.field, entries)


def embedding_conditions(beta: CommutatorMap, gamma: CommutatorMap, mu, nu,
                         Y: YDModule, r_minus: RelationSpace, r_plus: RelationSpace):
    """The three exact linear-algebra conditions for mu, nu to define a
    morphism A_beta star A_gamma -> A_Y:

      (1) beta*gamma = beta_Y o (nu (x) mu);
      (2) (mu (x) mu) R^-  inside ker(id + Psi_Y);
      (3) (nu (x) nu) R^+  inside ker(id + Psi_Y^*).

    Returns a dict of the three booleans.
    """
    field = Y.field
    d = Y.dim
    n = len(mu[0])
    cond1 = star(beta, gamma) == beta_through_module(mu, nu, Y)
    P = yd_braiding(Y)

    def plus_id(M):
        return [[M[i][j] + field.one() if i == j else M[i][j]
                 for j in range(d * d)] for i in range(d * d)]

    ker_minus = RelationSpace(d, "YY", kernel_basis(plus_id(P), d * d, field), field)
    Pt = braiding_dual(P, field)
    ker_plus = RelationSpace(d, "Y*Y*", kernel_basis(plus_id(Pt), d * d, field), field)

    def push(vec, mat):
        out = [field.zero()] * (d * d)
        for idx in range(n * n):
            cv = vec[idx]
            if cv.is_zero():
                continue
            a, b = divmod(idx, n)
            for A in range(d):
                if mat[A][a].is_zero():
                    continue
                for B in range(d):
                    if mat[B][b].is_zero():
                        continue
                    out[A * d + B] = out[A * d + B] + cv * mat[A][a] * mat[B][b]
        return out

    cond2 = all(ker_minus.contains_vector(push(r, mu)) for r in r_minus.rows)
    cond3 = all(ker_plus.contains_vector(push(r, nu)) for r in r_plus.rows)
    return {"parameter_match": cond1, "minus_relations": cond2, "plus_relations": cond3}


# ---------------------------------------------------------------------------
# the (-id)-form commutator of the negative family's ambient q-Cherednik algebra


def minus_one_form_commutator(m, c1, c_t=None, n=2, degenerate=False,
                              field=None) -> CommutatorMap:
    """The commutator of the q = -1 Cherednik algebra over G(m,1,n) whose
    braided reduction is the negative-family table:

      [y_j, x_i] = (-id) c1 sum_eps eps s_ij^(eps)            (i != j)
      [y_i, x_i] = (-id)(t_i^(-1) + c_{-1} 1 + c1 sum_{j,eps} s_ij^(eps)
                         + sum_{eps' != +-1} c_eps' t_i^(-eps'))

    (the sign package verified against q-commutativity and the reduction;
    the t_i^(-1) term carries the braided constant 1 and is dropped when
    degenerate).  c_t maps eps' values in C' \\ {1} to scalars.
    """
    from .wgroup import make_srefl, make_t, minus_identity

    field = field or field_create(m)
    one = field.one()
    mid = minus_identity(field, n)
    c1 = as_element(c1, field)
    entries = {}

    def add(w, a, b, val):
        k = w.key()
        if k not in entries:
            zero = field.zero()
            entries[k] = (w, [[zero] * n for _ in range(n)])
        entries[k][1][a][b] = entries[k][1][a][b] + val

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in range(m):
                eps = field.root_of_unity(k * (field.order // m))
                w = mid.compose(make_srefl(field, n, i, j, eps))
                add(w, j, i, c1 * eps)
                add(w, i, i, c1)
    for i in range(n):
        if not degenerate:
            add(mid.compose(make_t(field, n, i, -one)), i, i, one)
        for eps_prime, cval in (c_t or {}).items():
            epsp = as_element(eps_prime, field)
            if epsp == 1:
                raise ValueError("c is a function on C' minus {1}")
            cval = as_element(cval, field)
            if epsp == -1:
                add(mid, i, i, cval)
            else:
                add(mid.compose(make_t(field, n, i, -epsp)), i, i, cval)
    return CommutatorMap(n, field, list(entries.values()))


# ---------------------------------------------------------------------------
# braided reduction


def braided_reduce(beta: CommutatorMap, Q: QMatrix):
    """The braided commutator table (j,i) -> [(gamma_j^{-1} w, coeff)], the
    change of variables y-check_j = gamma_j^{-1} y_j applied to beta's output.

    Requires the support to be closed under Gamma_q-conjugation.
    """
    gammas = gamma_generators(Q)
    support_keys = set(beta.entries)
    for gam in gammas:
        gi = gam.inverse()
        for _, (w, _L) in beta.entries.items():
            if gam.compose(w).compose(gi).key() not in support_keys:
                raise NotNormalized(
                    "support is not closed under Gamma_q-conjugation")
    table = {}
    n = beta.n
    for j in range(n):
        gj_inv = gammas[j].inverse()
        for i in range(n):
            acc = {}
            for _, (w, L) in beta.entries.items():
                coeff = L[j][i]
                if coeff.is_zero():
                    continue
                red = gj_inv.compose(w)
                k = red.key()
                if k in acc:
                    acc[k] = (red, acc[k][1] + coeff)
                else:
                    acc[k] = (red, coeff)
            table[(j, i)] = [(w, c) for (w, c) in acc.values() if not c.is_zero()]
    return table


# ---------------------------------------------------------------------------
# serialization (CLI surface)


def commutator_map_to_json(beta: CommutatorMap):
    return {
        "n": beta.n,
        "field_order": beta.field.order,
        "support": [
            {"w": matrix_to_spec(w), "L": [[scalar_to_literal(e) for e in row] for row in L]}
            for _, (w, L) in sorted(beta.entries.items(), key=lambda kv: repr(kv[0]))
        ],
    }


def commutator_map_from_json(obj) -> CommutatorMap:
    from .cyclotomic import field_create

    field = field_create(obj["field_order"])
    entries = []
    for item in obj["support"]:
        w = matrix_from_spec(item["w"], field)
        L = [[parse_scalar(e, field) for e in row] for row in item["L"]]
        entries.append((w, L))
    return CommutatorMap(obj["n"], field, entries)
