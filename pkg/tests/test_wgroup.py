import random
from fractions import Fraction

import pytest

from qcherednik.cyclotomic import field_create, root_of_unity
from qcherednik.qpoly import QMatrix, QPolynomial, monomials_up_to
from qcherednik.wgroup import (
    BadIndices,
    CapExceeded,
    Group,
    InvalidParameters,
    MonomialMatrix,
    act_on_dual,
    act_on_poly,
    block_structure,
    build_gmpn,
    build_gmpn_plus,
    build_w_cc,
    gamma_generators,
    generate_group,
    group_from_spec,
    make_sigma,
    make_srefl,
    make_t,
    matrix_from_spec,
    matrix_to_spec,
    minus_identity,
    normalizes_gamma,
    preserves_q,
)

F = Fraction
f1 = field_create(1)
f2 = field_create(2)
f4 = field_create(4)


def x(Q, i):
    return QPolynomial.variable(Q, i)


def test_sigma_action_and_order():
    s = make_sigma(f2, 2, 0, 1, 1)
    Q = QMatrix.minus_one(f2, 2)
    assert act_on_poly(s, x(Q, 0)) == x(Q, 1)
    assert act_on_poly(s, x(Q, 1)) == -x(Q, 0)
    assert s.order() == 4
    # sigma^2 = t_1^(-1) t_2^(-1)
    assert s.compose(s) == make_t(f2, 2, 0, -1).compose(make_t(f2, 2, 1, -1))


def test_sigma_family_identity():
    # sigma_ij^(eps) = sigma_ji^(-eps^{-1})
    i4 = root_of_unity(f4, 1)
    for eps in (f4.one(), -f4.one(), i4, -i4):
        assert make_sigma(f4, 3, 0, 2, eps) == make_sigma(f4, 3, 2, 0, -eps.invert())


def test_t_action():
    Q = QMatrix.minus_one(f4, 2)
    eps = root_of_unity(f4, 1)
    t = make_t(f4, 2, 0, eps)
    assert act_on_poly(t, x(Q, 0) * x(Q, 0)) == (x(Q, 0) * x(Q, 0)).scale(eps * eps)


def test_sigma_on_x1x2():
    Q = QMatrix.minus_one(f2, 2)
    s = make_sigma(f2, 2, 0, 1, 1)
    p = x(Q, 0) * x(Q, 1)
    assert act_on_poly(s, p) == p  # x2*(-x1) = x1x2 in S_{-1}


def test_act_on_dual():
    eps = root_of_unity(f4, 1)
    t = make_t(f4, 2, 0, eps)
    assert act_on_dual(t) == make_t(f4, 2, 0, eps.invert())
    swap = MonomialMatrix(f4, (1, 0), [f4.one(), f4.one()])
    assert act_on_dual(swap) == swap
    s = make_sigma(f4, 2, 0, 1, 1)
    d = act_on_dual(s)
    # y1 -> y2, y2 -> -y1
    assert d.perm == (1, 0)
    assert d.scalars[0] == 1 and d.scalars[1] == -1


def test_dual_action_preserves_pairing():
    rng = random.Random(3)
    for _ in range(20):
        perm = list(range(3))
        rng.shuffle(perm)
        scal = [root_of_unity(f4, rng.randrange(4)) for _ in range(3)]
        g = MonomialMatrix(f4, perm, scal)
        gd = act_on_dual(g)
        # <g(x_j), g(y_k)> = delta_jk
        for j in range(3):
            for k in range(3):
                pair = f4.zero()
                if g.perm[j] == gd.perm[k]:
                    pair = g.scalars[j] * gd.scalars[k]
                assert pair == (1 if j == k else 0)


def test_generate_group_cyclic():
    g = generate_group([make_sigma(f2, 2, 0, 1, 1)])
    assert len(g) == 4


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        generate_group([make_t(f1, 2, 0, 2)], cap=50)


def test_group_orders():
    assert len(build_w_cc(2, 1, 2)) == 4  # B_2^+
    assert len(build_w_cc(2, 1, 3)) == 24  # B_3^+
    assert len(build_gmpn(2, 1, 2)) == 8  # Coxeter B_2
    assert len(build_gmpn(1, 1, 3)) == 6  # S_3
    assert len(build_gmpn(4, 2, 2)) == 16


def test_w_cc_invalid():
    with pytest.raises(InvalidParameters):
        build_w_cc(3, 1, 2)
    with pytest.raises(InvalidParameters):
        build_w_cc(4, 3, 2)


def test_w_cc_equals_gmpn_when_cprime_even():
    w = build_w_cc(2, 2, 2)
    g = build_gmpn(2, 1, 2, field=w.field)
    assert w.element_keys() == g.element_keys()


def test_w_cc_equals_gmpn_plus_when_cprime_odd():
    # |C'| = 1 odd: W = G(m,p,n)_+ with p = m / |±C'| = m/2, det^1 = 1
    w = build_w_cc(2, 1, 3)
    gp = build_gmpn_plus(2, 1, 3, det_power=1, field=w.field)
    assert w.element_keys() == gp.element_keys()
    assert all(e.det() == 1 for e in w)
    w42 = build_w_cc(4, 1, 2)
    gp42 = build_gmpn_plus(4, 2, 2, det_power=1, field=w42.field)
    assert w42.element_keys() == gp42.element_keys()


def test_preserves_q():
    Q = QMatrix.minus_one(f2, 2)
    assert preserves_q(make_sigma(f2, 2, 0, 1, 1), Q)
    swap = MonomialMatrix(f2, (1, 0), [f2.one(), f2.one()])
    assert preserves_q(swap, Q)
    # generic rotation [[a,-b],[b,a]] with ab != 0 fails
    a, b = f2.from_rational(F(3, 5)), f2.from_rational(F(4, 5))
    dense = [[a, -b], [b, a]]
    assert not preserves_q(dense, Q)


def test_family_generators_preserve_q():
    w = build_w_cc(4, 2, 2)
    Q = QMatrix.minus_one(w.field, 2)
    assert all(preserves_q(g, Q) for g in w.generators)
    g = build_gmpn(4, 2, 2)
    Qones = QMatrix.ones(g.field, 2)
    assert all(preserves_q(e, Qones) for e in g.generators)


def test_act_on_poly_is_automorphism():
    rng = random.Random(9)
    w = build_w_cc(4, 2, 2)
    Q = QMatrix.minus_one(w.field, 2)
    monos = monomials_up_to(2, 3)
    for _ in range(15):
        g = rng.choice(w.elements)
        p = QPolynomial.monomial(Q, rng.choice(monos), root_of_unity(w.field, rng.randrange(4)))
        r = QPolynomial.monomial(Q, rng.choice(monos)) + QPolynomial.one(Q)
        assert act_on_poly(g, p * r) == act_on_poly(g, p) * act_on_poly(g, r)


def test_group_axioms_closure():
    g = build_w_cc(2, 2, 2)
    for a in g:
        assert a.inverse() in g
        for b in g:
            assert a.compose(b) in g
    assert g.identity() in g


def test_normalizer_of_gamma():
    w = build_w_cc(4, 2, 2)
    Q = QMatrix.minus_one(w.field, 2)
    assert all(normalizes_gamma(e, Q) for e in w)


def test_block_structure_negative():
    Q = QMatrix.minus_one(f2, 3)
    bs = block_structure(Q)
    assert bs.blocks == [(0, 1, 2)]
    assert bs.signs == [-1]
    assert bs.gamma(0) == minus_identity(f2, 3)


def test_block_structure_ones():
    Q = QMatrix.ones(f1, 3)
    bs = block_structure(Q)
    assert bs.blocks == [(0, 1, 2)]
    assert bs.signs == [1]
    assert bs.gamma(0).is_identity()


def test_block_structure_mixed():
    # n=3, q_12 = 1, q_13 = q_23 = 5: blocks {1,2} positive and {3}
    five = f1.from_rational(5)
    fifth = five.invert()
    one = f1.one()
    Q = QMatrix([[one, one, five], [one, one, five], [fifth, fifth, one]])
    bs = block_structure(Q)
    assert bs.blocks == [(0, 1), (2,)]
    assert bs.signs == [1, 1]
    assert bs.pair_value(0, 1) == 5
    g = bs.gamma(0)
    assert g.scalars[0] == 1 and g.scalars[1] == 1 and g.scalars[2] == 5


def test_gamma_generators():
    Q = QMatrix.minus_one(f2, 2)
    g1, g2 = gamma_generators(Q)
    assert g1.scalars == (f2.one(), -f2.one())
    assert g2.scalars == (-f2.one(), f2.one())
    Qo = QMatrix.ones(f1, 2)
    assert all(g.is_identity() for g in gamma_generators(Qo))


def test_group_spec_roundtrip():
    w = build_w_cc(2, 1, 2)
    spec = matrix_to_spec(w.elements[1])
    assert matrix_from_spec(spec, w.field) == w.elements[1]
    g = group_from_spec({"family": "gmpn", "m": 2, "p": 1, "n": 2})
    assert len(g) == 8
    g2 = group_from_spec({
        "family": "generators",
        "field_order": 2,
        "generators": [matrix_to_spec(make_sigma(f2, 2, 0, 1, 1))],
    })
    assert len(g2) == 4
