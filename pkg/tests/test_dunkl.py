import random
from fractions import Fraction

import pytest

from qcherednik.cyclotomic import field_create, root_of_unity
from qcherednik.qpoly import (
    NotDivisible,
    QMatrix,
    QPolynomial,
    monomials_up_to,
)
from qcherednik.wgroup import (
    InvalidParameters,
    MonomialMatrix,
    act_on_poly,
    make_sigma,
    make_t,
    minus_identity,
)
from qcherednik.dunkl import (
    DunklParams,
    Operator,
    braided_partial,
    commutator_with_mult,
    d_i_eps,
    d_ij,
    divided_difference_sigma,
    divided_difference_t,
    dunkl_abelian,
    dunkl_negative,
    dunkl_negative_via_dij,
    dunkl_product,
    dunkl_symmetric,
    group_algebra_operator,
    group_operator,
    heisenberg_partial,
    identity_operator,
    mult_by_variable,
    op_compose,
    q_bracket,
    twisted_derivation,
    zero_operator,
)

F = Fraction
f2 = field_create(2)
f4 = field_create(4)
f12 = field_create(12)


def x(Q, i):
    return QPolynomial.variable(Q, i)


def generic_q3():
    return QMatrix.from_exponents(f12, [[0, 5, 3], [7, 0, 2], [9, 10, 0]])


# --- verma-recursion oracle for the negative family -------------------------
# Independent route: compute nabla_i(x^a) from the commutation table of the
# presentation, never through divided differences.


def oracle_negative(params, field, i, mono, Q):
    n, m = params.n, params.m
    step = field.order // m
    one = field.one()

    def nabla(i, mono):
        if sum(mono) == 0:
            return QPolynomial.zero(Q)
        j = next(k for k, e in enumerate(mono) if e)
        rest = tuple(e - 1 if k == j else e for k, e in enumerate(mono))
        p_rest = QPolynomial.monomial(Q, rest)
        if j == i:
            out = x(Q, i) * nabla(i, rest)
            if not params.degenerate:
                out = out + p_rest
            for l in range(n):
                if l == i:
                    continue
                for k in range(m):
                    eps = field.root_of_unity(k * step)
                    if params.c1_prime is not None and k % 2 == 1:
                        c = field.one() * params.c1_prime
                    else:
                        c = field.one() * params.c1
                    sig = make_sigma(field, n, i, l, eps)
                    out = out + act_on_poly(sig, p_rest).scale(c)
            for k, cv in params.c_t.items():
                eps = field.root_of_unity(k * (field.order // params.m_prime))
                t = make_t(field, n, i, eps)
                out = out + act_on_poly(t, p_rest).scale(field.one() * cv)
            return out
        # nabla_i x_j = -x_j nabla_i - sum_eps c(eps) eps sigma_{ji}^{(eps)};
        # the sign is forced by the divided-difference formula (the displayed
        # table with +eps weights would break anticommutation)
        out = -(x(Q, j) * nabla(i, rest))
        for k in range(m):
            eps = field.root_of_unity(k * step)
            if params.c1_prime is not None and k % 2 == 1:
                c = field.one() * params.c1_prime
            else:
                c = field.one() * params.c1
            sig = make_sigma(field, n, j, i, eps)
            out = out - act_on_poly(sig, p_rest).scale(c * eps)
        return out

    return nabla(i, mono)


def bn_plus_params(c=F(1, 2), degenerate=False):
    return DunklParams("negative", 2, m=2, m_prime=1, c1=c, degenerate=degenerate)


def test_braided_partial_basics():
    Q = generic_q3()
    d1 = braided_partial(Q, 0, 5)
    assert d1.on_monomial((3, 0, 0)) == QPolynomial.monomial(Q, (2, 0, 0), 3)
    assert d1.on_monomial((0, 0, 0)).is_zero()
    # d2(x1x2) = q_12 * x1
    d2 = braided_partial(Q, 1, 5)
    assert d2.on_monomial((1, 1, 0)) == QPolynomial.monomial(Q, (1, 0, 0), Q.entry(0, 1))


def test_braided_partial_q_commutes():
    Q = generic_q3()
    D = 5
    ds = [braided_partial(Q, i, D) for i in range(3)]
    for i in range(3):
        for j in range(3):
            assert q_bracket(ds[i], ds[j], Q.entry(i, j), 1).is_zero()


def test_braided_partial_weyl_relation():
    # corrected reading: d_i o x_j = q_ji x_j o d_i + delta_ij
    Q = generic_q3()
    D = 5
    for i in range(3):
        di = braided_partial(Q, i, D)
        for j in range(3):
            xj = mult_by_variable(Q, j, D)
            lhs = op_compose(di, xj)
            rhs = op_compose(xj, di).scale(Q.entry(j, i))
            if i == j:
                rhs = rhs + identity_operator(Q, lhs.max_degree)
            assert lhs == rhs


def test_heisenberg_partial_relation():
    # d_i x_j - x_j d_i = delta_ij gamma_i over any q
    Q = generic_q3()
    D = 5
    from qcherednik.wgroup import gamma_generators
    gammas = gamma_generators(Q)
    for i in range(3):
        di = heisenberg_partial(Q, i, D)
        for j in range(3):
            xj = mult_by_variable(Q, j, D)
            comm = op_compose(di, xj) - op_compose(xj, di)
            expected = zero_operator(Q, comm.max_degree, 0)
            if i == j:
                expected = group_operator(Q, gammas[i], comm.max_degree)
            assert comm == expected


def test_heisenberg_partial_reduces_to_braided_for_minus_one():
    # gamma_i o d_i is the braided partial derivative when all q_ij^2 = 1
    Q = QMatrix.minus_one(f2, 3)
    from qcherednik.wgroup import gamma_generators
    gammas = gamma_generators(Q)
    for i in range(3):
        di = heisenberg_partial(Q, i, 5)
        assert op_compose(group_operator(Q, gammas[i], 5), di) == braided_partial(Q, i, 5)


def test_twisted_derivation_plain():
    Q = QMatrix.ones(field_create(1), 2)
    w = MonomialMatrix.identity(Q.field, 2)
    d = twisted_derivation(Q, w, [1, 0], 4)
    assert d == braided_partial(Q, 0, 4)


def test_twisted_derivation_leibniz_identity():
    # with w = -id . s_12^(eps) and values (1, eps^-1), [d, x_k] = v_k w
    Q = QMatrix.minus_one(f4, 2)
    for k_eps in range(4):
        eps = root_of_unity(f4, k_eps)
        w = minus_identity(f4, 2).compose(
            MonomialMatrix(f4, (1, 0), [eps, eps.invert()]))
        values = [f4.one(), eps.invert()]
        d = twisted_derivation(Q, w, values, 5)
        for k in range(2):
            comm = commutator_with_mult(d, k)
            expected = group_operator(Q, w, comm.max_degree).scale(values[k])
            assert comm == expected
    # and the Leibniz rule itself on random products
    rng = random.Random(2)
    eps = root_of_unity(f4, 1)
    w = minus_identity(f4, 2).compose(MonomialMatrix(f4, (1, 0), [eps, eps.invert()]))
    d = twisted_derivation(Q, w, [f4.one(), eps.invert()], 6)
    monos = monomials_up_to(2, 3)
    for _ in range(20):
        a = QPolynomial.monomial(Q, rng.choice(monos))
        b = QPolynomial.monomial(Q, rng.choice(monos))
        assert d.apply(a * b) == d.apply(a) * act_on_poly(w, b) + a * d.apply(b)


def test_divided_difference_t_values():
    Q = QMatrix.minus_one(f4, 2)
    eps = root_of_unity(f4, 1)
    dt = divided_difference_t(Q, 0, eps, 4)
    one = QPolynomial.one(Q)
    assert dt.on_monomial((1, 0)) == one.scale(f4.one() - eps)
    assert dt.on_monomial((0, 1)).is_zero()
    assert dt.on_monomial((2, 0)) == x(Q, 0).scale(f4.one() - eps * eps)


def test_divided_difference_sigma_values():
    Q = QMatrix.minus_one(f2, 2)
    dd = divided_difference_sigma(Q, 0, 1, 2, 4)
    assert dd.on_monomial((1, 0)) == QPolynomial.one(Q).scale(2)  # |C| = 2
    assert dd.on_monomial((0, 1)).is_zero()
    assert dd.on_monomial((0, 0)).is_zero()
    Q4 = QMatrix.minus_one(f4, 2)
    dd4 = divided_difference_sigma(Q4, 0, 1, 4, 4)
    assert dd4.on_monomial((1, 0)) == QPolynomial.one(Q4).scale(4)
    assert dd4.on_monomial((0, 1)).is_zero()


def test_dij_values():
    Q = QMatrix.minus_one(f2, 2)
    D12 = d_ij(Q, 0, 1, 4)
    assert D12.on_monomial((1, 0)) == QPolynomial.one(Q).scale(2)
    assert D12.on_monomial((0, 1)).is_zero()


def test_dij_commutator_identities():
    # [gamma_i D_ij, x_i] = (-id)s^(1) + (-id)s^(-1)
    # [gamma_i D_ij, x_j] = (-id)s^(1) - (-id)s^(-1)
    # [gamma_i D_ij, x_k] = 0
    Q = QMatrix.minus_one(f2, 3)
    gam = MonomialMatrix(f2, range(3), [f2.one(), -f2.one(), -f2.one()])
    A = op_compose(group_operator(Q, gam, 4), d_ij(Q, 0, 1, 4))
    mid = minus_identity(f2, 3)
    from qcherednik.wgroup import make_srefl
    w1 = mid.compose(make_srefl(f2, 3, 0, 1, 1))
    w2 = mid.compose(make_srefl(f2, 3, 0, 1, -1))
    c0 = commutator_with_mult(A, 0)
    assert c0 == group_algebra_operator(Q, [(w1, f2.one()), (w2, f2.one())], c0.max_degree)
    c1 = commutator_with_mult(A, 1)
    assert c1 == group_algebra_operator(Q, [(w1, f2.one()), (w2, -f2.one())], c1.max_degree)
    assert commutator_with_mult(A, 2).is_zero()


def test_d_i_eps_commutator_identity():
    # [gamma_i D_i^(eps'), x_k] = delta_ik (1 - eps') (-id) t_i^(-eps')
    Q = QMatrix.minus_one(f4, 2)
    eps = root_of_unity(f4, 1)
    gam = MonomialMatrix(f4, range(2), [f4.one(), -f4.one()])
    A = op_compose(group_operator(Q, gam, 4), d_i_eps(Q, 0, eps, 4))
    w = minus_identity(f4, 2).compose(make_t(f4, 2, 0, -eps))
    c0 = commutator_with_mult(A, 0)
    assert c0 == group_algebra_operator(Q, [(w, f4.one() - eps)], c0.max_degree)
    assert commutator_with_mult(A, 1).is_zero()


def test_dunkl_negative_b2_values():
    c = F(1, 2)
    ops = dunkl_negative(bn_plus_params(c), 4)
    Q = ops[0].qmatrix
    # oracle: relation (iii) applied to 1 gives nabla_1 x_1 = 1 + 2c
    assert ops[0].on_monomial((1, 0)) == QPolynomial.one(Q).scale(1 + 2 * c)
    assert ops[0].on_monomial((0, 1)).is_zero()
    assert ops[0].on_monomial((2, 0)) == x(Q, 0).scale(2 + 2 * c)
    assert ops[0].on_monomial((0, 0)).is_zero()


def test_dunkl_negative_matches_oracle():
    for (m, mp, c_t) in ((2, 1, {}), (4, 2, {1: F(1, 3)}), (6, 3, {1: F(1, 3), 2: F(1, 5)})):
        params = DunklParams("negative", 2, m=m, m_prime=mp, c1=F(1, 2), c_t=c_t)
        ops = dunkl_negative(params, 3)
        Q = ops[0].qmatrix
        field = Q.field
        for i in range(2):
            for mono in monomials_up_to(2, 3):
                assert ops[i].on_monomial(mono) == oracle_negative(params, field, i, mono, Q)


def test_dunkl_negative_rank2_split_matches_oracle():
    params = DunklParams("negative", 2, m=4, m_prime=2, c1=F(1, 2), c1_prime=F(1, 3),
                         c_t={1: F(1, 5)})
    ops = dunkl_negative(params, 3)
    Q = ops[0].qmatrix
    for i in range(2):
        for mono in monomials_up_to(2, 3):
            assert ops[i].on_monomial(mono) == oracle_negative(params, Q.field, i, mono, Q)


def test_dunkl_negative_rank2_split_rejects_m_2_mod_4():
    params = DunklParams("negative", 2, m=2, m_prime=1, c1=F(1, 2), c1_prime=F(1, 3))
    with pytest.raises(InvalidParameters):
        dunkl_negative(params, 3)


def test_dunkl_negative_anticommutes():
    ops = dunkl_negative(bn_plus_params(), 5)
    assert q_bracket(ops[0], ops[1], 1, -1).is_zero()


def test_dunkl_negative_degenerate():
    ops = dunkl_negative(bn_plus_params(degenerate=True), 4)
    Q = ops[0].qmatrix
    assert ops[0].on_monomial((1, 0)) == QPolynomial.one(Q)  # 2c, c = 1/2
    assert q_bracket(ops[0], ops[1], 1, -1).is_zero()


def test_dunkl_negative_c0_collapses():
    params = DunklParams("negative", 2, m=2, m_prime=1, c1=0)
    ops = dunkl_negative(params, 4)
    Q = ops[0].qmatrix
    for i in range(2):
        assert ops[i] == braided_partial(Q, i, 4)


def test_via_dij_equals_direct():
    for params in (
        bn_plus_params(F(1, 2)),
        DunklParams("negative", 2, m=4, m_prime=2, c1=F(1, 2), c_t={1: F(1, 3)}),
        DunklParams("negative", 3, m=2, m_prime=1, c1=F(1, 2)),
        DunklParams("negative", 2, m=4, m_prime=2, c1=F(1, 2), c1_prime=F(1, 3),
                    c_t={1: F(1, 5)}),
    ):
        a = dunkl_negative(params, 4)
        b = dunkl_negative_via_dij(params, 4)
        assert all(u == v for u, v in zip(a, b))


def test_dunkl_abelian_values():
    f = field_create(2)
    Q = QMatrix.ones(f, 1)
    params = DunklParams("abelian", 1, orders=[2], c_ab={(0, 1): F(1, 3)})
    ops = dunkl_abelian(Q, params, 4)
    assert ops[0].on_monomial((1,)) == QPolynomial.one(Q).scale(1 + F(1, 3))


def test_dunkl_abelian_c0_collapses():
    Q = generic_q3()
    params = DunklParams("abelian", 3, orders=[2, 3, 4])
    ops = dunkl_abelian(Q, params, 4)
    for i in range(3):
        assert ops[i] == braided_partial(Q, i, 4)


def test_dunkl_abelian_identities():
    Q = generic_q3()
    params = DunklParams("abelian", 3, orders=[2, 3, 4],
                         c_ab={(0, 1): F(1, 2), (1, 1): F(1, 3), (1, 2): F(1, 5),
                               (2, 1): F(2, 7), (2, 2): F(1, 7), (2, 3): F(3, 4)})
    D = 5
    ops = dunkl_abelian(Q, params, D + 2)
    field = Q.field
    # identity 1: nabla_i x_j - q_ji x_j nabla_i = delta_ij (1 + sum c t_i^(eps))
    for i in range(3):
        for j in range(3):
            xj = mult_by_variable(Q, j, D + 2)
            lhs = op_compose(ops[i], xj) - op_compose(xj, ops[i]).scale(Q.entry(j, i))
            if i == j:
                terms = [(MonomialMatrix.identity(field, 3), field.one())]
                mi = params.orders[i]
                for k in range(1, mi):
                    eps = field.root_of_unity(k * (field.order // mi))
                    terms.append((make_t(field, 3, i, eps),
                                  field.one() * params.c_ab[(i, k)]))
                assert lhs == group_algebra_operator(Q, terms, lhs.max_degree)
            else:
                assert lhs.is_zero()
    # identity 2: nabla_i nabla_j = q_ij nabla_j nabla_i
    for i in range(3):
        for j in range(3):
            assert q_bracket(ops[i], ops[j], Q.entry(i, j), 1).is_zero()


def test_dunkl_symmetric_values():
    c = F(1, 2)
    ops = dunkl_symmetric(2, c, 4)
    Q = ops[0].qmatrix
    assert ops[0].on_monomial((1, 0)) == QPolynomial.one(Q).scale(1 + c)
    assert ops[0].on_monomial((0, 1)) == QPolynomial.one(Q).scale(-c)
    ops0 = dunkl_symmetric(3, 0, 3)
    Q0 = ops0[0].qmatrix
    for i in range(3):
        assert ops0[i] == braided_partial(Q0, i, 3)
    # classical commutation
    assert q_bracket(ops[0], ops[1], 1, 1).is_zero()


def test_dunkl_product_single_factor():
    params = bn_plus_params()
    Q, ops = dunkl_product([params], {}, 4)
    direct = dunkl_negative(params, 4)
    assert all(u.action == v.action for u, v in zip(ops, direct))


def test_dunkl_product_composite_matrix():
    sym = DunklParams("symmetric", 2, c=F(1, 2))
    neg = DunklParams("negative", 2, m=2, m_prime=1, c1=F(1, 3))
    r = {(0, 1): "zeta4"}
    f = field_create(4)
    i4 = root_of_unity(f, 1)
    Q, ops = dunkl_product([sym, neg], {(0, 1): i4}, 3, field=f)
    for a in (0, 1):
        for b in (2, 3):
            assert Q.entry(a, b) == i4
            assert Q.entry(b, a) == i4.invert()
    assert Q.entry(0, 1) == 1
    assert Q.entry(2, 3) == -1


def test_dunkl_product_prefactor_rule():
    sym = DunklParams("symmetric", 2, c=F(1, 2))
    neg = DunklParams("negative", 2, m=2, m_prime=1, c1=F(1, 3))
    f = field_create(4)
    i4 = root_of_unity(f, 1)
    Q, ops = dunkl_product([sym, neg], {(0, 1): i4}, 3, field=f)
    # nabla of the first negative variable on x_1 x_3: prefactor r^(deg in factor 1)
    img = ops[2].on_monomial((1, 0, 1, 0))
    neg_ops = dunkl_negative(neg, 3, field=f)
    inner = neg_ops[0].on_monomial((1, 0))
    expected = {}
    for m, c in inner.terms.items():
        expected[(1, 0) + m] = c * i4
    assert img == QPolynomial(Q, expected)


def test_dunkl_product_brackets():
    sym = DunklParams("symmetric", 2, c=F(1, 2))
    neg = DunklParams("negative", 2, m=2, m_prime=1, c1=F(1, 3))
    f = field_create(4)
    i4 = root_of_unity(f, 1)
    Q, ops = dunkl_product([sym, neg], {(0, 1): i4}, 4, field=f)
    for i in range(4):
        for j in range(4):
            if i != j:
                assert q_bracket(ops[i], ops[j], Q.entry(i, j), 1).is_zero()


def test_q_bracket_conventions():
    Q = generic_q3()
    A = braided_partial(Q, 0, 4)
    # commutator of A with itself vanishes; anticommutator is 2 A^2
    assert q_bracket(A, A, 1, 1).is_zero()
    twice = op_compose(A, A).scale(2)
    assert q_bracket(A, A, 1, -1) == twice
    Z = zero_operator(Q, 4, -1)
    assert op_compose(Z, A).is_zero()


def test_operator_report():
    from qcherednik.dunkl import operator_report
    ops = dunkl_negative(bn_plus_params(), 2)
    rep = operator_report(ops[0])
    assert any("x1" in row[0] for row in rep)
