"""Presented braided Cherednik algebras: normal-form rewriting realizing the
triangular decomposition, the Verma-module representation, and PBW
consistency checks.

Words are sequences of generator tokens ('x', i), ('y', i), ('g', matrix).
Normal form is x-monomial * group element * y-monomial with ascending
variable indices; rewriting strictly decreases (number of y-before-x
inversions, then displacement of g-tokens from the middle, then the number
of sorting inversions), so it terminates; confluence is checked
experimentally, never assumed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cyclotomic import as_element, field_create
from .qpoly import QMatrix, QPolynomial, dimension_of_degree, render_mono
from .wgroup import (
    Group,
    InvalidParameters,
    MonomialMatrix,
    act_on_dual,
    act_on_poly,
    build_w_cc,
    generate_group,
    make_sigma,
    make_t,
)
from . import dunkl as dunkl_mod
from .dunkl import DunklParams


class Presentation:
    """Q-matrices for the x and y sides, the group, and the commutator table
    (j, i) -> [(w, coeff)] giving [y_j, x_i]_q = y_j x_i - q^y... the braided
    commutator value in CW."""

    def __init__(self, qmatrix: QMatrix, y_qmatrix: QMatrix, group: Group,
                 table, params: DunklParams = None, degenerate: bool = False,
                 label: str = ""):
        self.qmatrix = qmatrix
        self.y_qmatrix = y_qmatrix
        self.group = group
        self.table = {k: list(v) for k, v in table.items()}
        self.params = params
        self.degenerate = degenerate
        self.label = label
        self.n = qmatrix.n
        self._dunkl_cache = {}

    def table_entry(self, j, i):
        return self.table.get((j, i), [])

    def dunkl_operators(self, D):
        if D not in self._dunkl_cache:
            self._dunkl_cache[D] = dunkl_mod.dunkl_family(
                self.params, D, field=self.qmatrix.field, Q=self.qmatrix)
        return self._dunkl_cache[D]


def presentation_negative(m, m_prime, c1, n, degenerate=False, c_t=None,
                          c1_prime=None, field=None, cap=100000) -> Presentation:
    """The negative-family presentation over W_{C,C'} with q = -1.

    Off-diagonal table: [y_j, x_i]_q = - sum_eps c(eps) eps sigma_ij^(eps)
    (the sign that matches the braided Dunkl operators; the displayed +eps
    variant fails anticommutation).  Diagonal: 1 + c1 sum sigma + sum c_eps'
    t_i^(eps'), with the 1 dropped when degenerate.
    """
    params = DunklParams("negative", n, m=m, m_prime=m_prime, c1=c1,
                         c1_prime=c1_prime, c_t=c_t, degenerate=degenerate)
    field = field or field_create(m)
    Q = QMatrix.minus_one(field, n)
    W = build_w_cc(m, m_prime, n, field=field, cap=cap)
    step = field.order // m
    table = {}
    for i in range(n):
        diag = []
        if not degenerate:
            diag.append((MonomialMatrix.identity(field, n), field.one()))
        for j in range(n):
            if j == i:
                continue
            off = []
            for k in range(m):
                eps = field.root_of_unity(k * step)
                if c1_prime is not None and k % 2 == 1:
                    c = as_element(c1_prime, field)
                elif isinstance(c1, dict):
                    c = as_element(c1[(i, j)], field)
                else:
                    c = as_element(c1, field)
                off.append((make_sigma(field, n, j, i, eps), -c * eps))
                diag.append((make_sigma(field, n, i, j, eps), c))
            table[(i, j)] = off  # [y_i, x_j]
        table[(i, i)] = diag
        for k, cval in (c_t or {}).items():
            eps = field.root_of_unity(k * (field.order // m_prime))
            if eps == 1:
                continue
            table[(i, i)].append((make_t(field, n, i, eps), as_element(cval, field)))
    table = {k: _merge_terms(v, field) for k, v in table.items()}
    return Presentation(Q, Q, W, table, params, degenerate, label=f"W(mu{m},mu{m_prime})({n})")


def presentation_rational_sn(n, c, field=None) -> Presentation:
    """The rational Cherednik presentation of S_n on its permutation module."""
    field = field or field_create(1)
    Q = QMatrix.ones(field, n)
    gens = []
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        gens.append(MonomialMatrix(field, perm, [field.one()] * n))
    W = generate_group(gens)
    c = as_element(c, field)
    table = {}
    for j in range(n):
        for i in range(n):
            terms = []
            if i == j:
                terms.append((MonomialMatrix.identity(field, n), field.one()))
            for k in range(n):
                for l in range(k + 1, n):
                    # s = (kl), alpha = x_k - x_l, alpha^v = y_k - y_l
                    w = list(range(n))
                    w[k], w[l] = l, k
                    s = MonomialMatrix(field, w, [field.one()] * n)
                    coeff = c * _delta(field, i, k, l) * _delta(field, j, k, l)
                    if not coeff.is_zero():
                        terms.append((s, coeff))
            table[(j, i)] = _merge_terms(terms, field)
    params = DunklParams("symmetric", n, c=c.as_fraction() if c.is_rational() else c)
    return Presentation(Q, Q, W, table, params, label=f"S{n} rational")


def _delta(field, i, k, l):
    if i == k:
        return field.one()
    if i == l:
        return -field.one()
    return field.zero()


def presentation_abelian(Q: QMatrix, params: DunklParams) -> Presentation:
    """W = C_1 x ... x C_n acting diagonally; table (i,i) = 1 + sum c t_i^(eps)."""
    field = Q.field
    n = Q.n
    gens = []
    for i in range(n):
        mi = params.orders[i]
        if mi > 1:
            gens.append(make_t(field, n, i, field.root_of_unity(field.order // mi)))
    W = generate_group(gens if gens else [MonomialMatrix.identity(field, n)])
    table = {}
    for i in range(n):
        terms = []
        if not params.degenerate:
            terms.append((MonomialMatrix.identity(field, n), field.one()))
        mi = params.orders[i]
        for k in range(1, mi):
            cval = params.c_ab.get((i, k))
            if cval is None:
                continue
            eps = field.root_of_unity(k * (field.order // mi))
            terms.append((make_t(field, n, i, eps), as_element(cval, field)))
        table[(i, i)] = terms
    return Presentation(Q, Q, W, table, params, params.degenerate, label="abelian")


def _merge_terms(terms, field):
    acc = {}
    for w, c in terms:
        k = w.key()
        if k in acc:
            acc[k] = (w, acc[k][1] + c)
        else:
            acc[k] = (w, c)
    return [(w, c) for w, c in acc.values() if not c.is_zero()]


# -- words and normal forms ------------------------------------------------------


def word_x(i):
    return ("x", i)


def word_y(i):
    return ("y", i)


def word_g(w: MonomialMatrix):
    return ("g", w)


class AlgebraElement:
    """Finite sum of normal-form basis elements x^a * w * y^b."""

    def __init__(self, presentation: Presentation, terms, legend):
        self.presentation = presentation
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        self.legend = legend  # group-element key -> MonomialMatrix

    @staticmethod
    def zero(P):
        return AlgebraElement(P, {}, {})

    def __add__(self, other):
        out = dict(self.terms)
        legend = dict(self.legend)
        legend.update(other.legend)
        for k, c in other.terms.items():
            out[k] = out.get(k, None)
            out[k] = c if out[k] is None else out[k] + c
        return AlgebraElement(self.presentation, out, legend)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = as_element(c, self.presentation.qmatrix.field)
        return AlgebraElement(self.presentation,
                              {k: v * c for k, v in self.terms.items()}, dict(self.legend))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __repr__(self):
        return render_element(self)[0]


def _token_seq(xmono, gkey, ymono, legend, n):
    word = []
    for i in range(n):
        word.extend([("x", i)] * xmono[i])
    g = legend[gkey]
    if not g.is_identity():
        word.append(("g", g))
    for i in range(n):
        word.extend([("y", i)] * ymono[i])
    return tuple(word)


def _reducible_at(word, p, n):
    a, b = word[p], word[p + 1]
    if a[0] == "x" and b[0] == "x" and a[1] > b[1]:
        return "xx"
    if a[0] == "y" and b[0] == "y" and a[1] > b[1]:
        return "yy"
    if a[0] == "g" and b[0] == "g":
        return "gg"
    if a[0] == "g" and b[0] == "x":
        return "gx"
    if a[0] == "y" and b[0] == "g":
        return "yg"
    if a[0] == "y" and b[0] == "x":
        return "yx"
    return None


def _apply_rule(word, p, kind, P: Presentation):
    """Rewrite word at position p; yields (coeff, new word) pairs."""
    field = P.qmatrix.field
    a, b = word[p], word[p + 1]
    pre, post = word[:p], word[p + 2:]
    if kind == "xx":
        q = P.qmatrix.entry(a[1], b[1])
        yield q, pre + (b, a) + post
    elif kind == "yy":
        q = P.y_qmatrix.entry(a[1], b[1])
        yield q, pre + (b, a) + post
    elif kind == "gg":
        w = a[1].compose(b[1])
        if w.is_identity():
            yield field.one(), pre + post
        else:
            yield field.one(), pre + (("g", w),) + post
    elif kind == "gx":
        w, i = a[1], b[1]
        # w x_i w^{-1} = w(x_i) = d_i x_{perm(i)}
        yield w.scalars[i], pre + (("x", w.perm[i]), ("g", w)) + post
    elif kind == "yg":
        i, w = a[1], b[1]
        # y_i g = g (g^{-1}(y_i)) with the dual action
        winv = w.inverse()
        d = act_on_dual(winv)
        yield d.scalars[i], pre + (("g", w), ("y", d.perm[i])) + post
    elif kind == "yx":
        j, i = a[1], b[1]
        q = P.qmatrix.entry(i, j)
        yield q, pre + (b, a) + post
        for w, c in P.table_entry(j, i):
            if w.is_identity():
                yield c, pre + post
            else:
                yield c, pre + (("g", w),) + post
    else:
        raise AssertionError(kind)


def normal_form_word(word, P: Presentation, strategy: str = "left") -> AlgebraElement:
    """Confluent rewriting of a single word under the chosen strategy
    ('left' or 'right': which reducible position is rewritten first)."""
    field = P.qmatrix.field
    n = P.n
    pending = {tuple(word): field.one()}
    done = {}
    legend = {}
    while pending:
        w, coeff = pending.popitem()
        pos = None
        indices = range(len(w) - 1) if strategy == "left" else range(len(w) - 2, -1, -1)
        for p in indices:
            kind = _reducible_at(w, p, n)
            if kind:
                pos = (p, kind)
                break
        if pos is None:
            key = _normal_key(w, n, legend, field)
            done[key] = done.get(key, field.zero()) + coeff
            continue
        for c, w2 in _apply_rule(w, pos[0], pos[1], P):
            c2 = coeff * c
            if c2.is_zero():
                continue
            if w2 in pending:
                pending[w2] = pending[w2] + c2
                if pending[w2].is_zero():
                    del pending[w2]
            else:
                pending[w2] = c2
    return AlgebraElement(P, done, legend)


def _normal_key(word, n, legend, field):
    xm = [0] * n
    ym = [0] * n
    g = None
    for t in word:
        if t[0] == "x":
            xm[t[1]] += 1
        elif t[0] == "y":
            ym[t[1]] += 1
        else:
            g = t[1]
    if g is None:
        g = MonomialMatrix.identity(field, n)
    legend.setdefault(g.key(), g)
    return (tuple(xm), g.key(), tuple(ym))


def normal_form(word, P: Presentation, strategy: str = "left") -> AlgebraElement:
    return normal_form_word(word, P, strategy)


def element_from_word(word, P: Presentation) -> AlgebraElement:
    return normal_form_word(word, P)


def multiply(a: AlgebraElement, b: AlgebraElement, P: Presentation) -> AlgebraElement:
    out = AlgebraElement.zero(P)
    n = P.n
    for ka, ca in a.terms.items():
        wa = _token_seq(*ka, a.legend, n)
        for kb, cb in b.terms.items():
            wb = _token_seq(*kb, b.legend, n)
            nf = normal_form_word(wa + wb, P)
            out = out + nf.scale(ca * cb)
    return out


# -- the Verma module -------------------------------------------------------------


def act_word(word, p: QPolynomial, P: Presentation, D: int) -> QPolynomial:
    """Action of a word on the Verma module: x by multiplication, g by the
    algebra automorphism, y by the family's Dunkl operator."""
    ops = P.dunkl_operators(D)
    out = p
    for t in reversed(word):
        if t[0] == "x":
            out = QPolynomial.variable(P.qmatrix, t[1]) * out
        elif t[0] == "g":
            out = act_on_poly(t[1], out)
        else:
            out = ops[t[1]].apply(out)
    return out


def verma_action(a: AlgebraElement, p: QPolynomial, P: Presentation, D: int) -> QPolynomial:
    out = QPolynomial.zero(P.qmatrix)
    n = P.n
    for k, c in a.terms.items():
        word = _token_seq(*k, a.legend, n)
        out = out + act_word(word, p, P, D).scale(c)
    return out


def defining_relations(P: Presentation):
    """All defining relations as lists of (coeff, word) summing to zero."""
    field = P.qmatrix.field
    n = P.n
    one = field.one()
    rels = []
    for i in range(n):
        for j in range(n):
            if i < j:
                rels.append([(one, (("x", i), ("x", j))),
                             (-P.qmatrix.entry(i, j), (("x", j), ("x", i)))])
                rels.append([(one, (("y", i), ("y", j))),
                             (-P.y_qmatrix.entry(i, j), (("y", j), ("y", i)))])
    for w in P.group.generators:
        dual = act_on_dual(w)
        for i in range(n):
            rels.append([(one, (("g", w), ("x", i))),
                         (-w.scalars[i], (("x", w.perm[i]), ("g", w)))])
            rels.append([(one, (("g", w), ("y", i))),
                         (-dual.scalars[i], (("y", dual.perm[i]), ("g", w)))])
    for j in range(n):
        for i in range(n):
            rel = [(one, (("y", j), ("x", i))),
                   (-P.qmatrix.entry(i, j), (("x", i), ("y", j)))]
            for w, c in P.table_entry(j, i):
                rel.append((-c, () if w.is_identity() else (("g", w),)))
            rels.append(rel)
    return rels


def verma_relations_hold(P: Presentation, D: int):
    """Check every defining relation acts as zero on all monomials of degree
    <= D; returns (ok, counterexample or None)."""
    from .qpoly import monomials_up_to

    for rel in defining_relations(P):
        for mono in monomials_up_to(P.n, D):
            p = QPolynomial.monomial(P.qmatrix, mono)
            total = QPolynomial.zero(P.qmatrix)
            for coeff, word in rel:
                total = total + act_word(word, p, P, D + 2).scale(coeff)
            if not total.is_zero():
                return False, {"relation": _render_relation(rel), "monomial": mono}
    return True, None


def _render_relation(rel):
    bits = []
    for c, word in rel:
        tokens = "".join(
            f"x{t[1]+1}" if t[0] == "x" else f"y{t[1]+1}" if t[0] == "y" else "g"
            for t in word) or "1"
        bits.append(f"({c!r})*{tokens}")
    return " + ".join(bits)


# -- PBW consistency ---------------------------------------------------------------


def random_word(P: Presentation, rng: random.Random, max_len: int):
    n = P.n
    elements = P.group.elements if len(P.group.elements) <= 64 else P.group.generators
    word = []
    for _ in range(rng.randint(1, max_len)):
        kind = rng.choice(["x", "y", "g"])
        if kind == "g":
            word.append(("g", rng.choice(elements)))
        else:
            word.append((kind, rng.randrange(n)))
    return tuple(word)


def pbw_consistency(P: Presentation, trials: int, max_len: int, seed: int):
    """Rewrite random words under the leftmost- and rightmost-reducible
    strategies and compare; reports the first disagreement."""
    rng = random.Random(seed)
    for t in range(trials):
        word = random_word(P, rng, max_len)
        left = normal_form_word(word, P, "left")
        right = normal_form_word(word, P, "right")
        if left != right:
            return {"status": "fail", "trial": t, "word": _word_str(word)}
    return {"status": "pass", "trials": trials}


def _word_str(word):
    return "*".join(
        f"x{t[1]+1}" if t[0] == "x" else f"y{t[1]+1}" if t[0] == "y"
        else f"[{t[1]!r}]" for t in word) or "1"


def corrupt_table(P: Presentation) -> Presentation:
    """Negative control: scale one off-diagonal sigma coefficient by 2,
    breaking equivariance/q-commutativity of the table."""
    table = {k: list(v) for k, v in P.table.items()}
    for (j, i), terms in sorted(table.items()):
        if j == i or not terms:
            continue
        w, c = terms[0]
        table[(j, i)] = [(w, c * 2)] + terms[1:]
        break
    return Presentation(P.qmatrix, P.y_qmatrix, P.group, table, P.params,
                        P.degenerate, label=P.label + " (corrupted)")


def bidegree_count(P: Presentation, a: int, b: int) -> int:
    """Normal-form basis triples of x-degree a, y-degree b."""
    return (dimension_of_degree(P.n, a) * len(P.group.elements)
            * dimension_of_degree(P.n, b))


def render_element(a: AlgebraElement):
    """Text form 'coeff * x-mono * [gk] * y-mono' plus a group legend."""
    legend_ids = {}
    bits = []
    for (xm, gk, ym), c in sorted(a.terms.items(), key=lambda kv: repr(kv[0])):
        if gk not in legend_ids:
            legend_ids[gk] = f"g{len(legend_ids)}"
        xs = render_mono(xm)
        ys = render_mono(ym).replace("x", "y")
        bits.append(f"({c!r})*{xs}*[{legend_ids[gk]}]*{ys}")
    legend = {legend_ids[gk]: repr(a.legend[gk]) for gk in legend_ids}
    return (" + ".join(bits) if bits else "0", legend)
