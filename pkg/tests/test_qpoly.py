import random
from fractions import Fraction

import pytest

from qcherednik.cyclotomic import field_create, root_of_unity
from qcherednik.qpoly import (
    InvalidQMatrix,
    NotCentral,
    NotDivisible,
    QMatrix,
    QPolynomial,
    dimension_of_degree,
    divide_by_central,
    is_central,
    left_divide_by_variable,
    mono_degree,
    monomials_of_degree,
    monomials_up_to,
    render_poly,
)

F = Fraction
f1 = field_create(1)
f3 = field_create(3)
f12 = field_create(12)


def minus1(n, field=None):
    return QMatrix.minus_one(field or field_create(2), n)


def x(Q, i):
    return QPolynomial.variable(Q, i)


def rand_poly(Q, rng, deg=3, nterms=4):
    monos = monomials_up_to(Q.n, deg)
    p = QPolynomial.zero(Q)
    for _ in range(nterms):
        m = rng.choice(monos)
        c = Q.field.root_of_unity(rng.randrange(Q.field.order)) * F(rng.randint(-3, 3), rng.randint(1, 3))
        p = p + QPolynomial.monomial(Q, m, c)
    return p


def test_qmatrix_validation():
    one = f1.one()
    QMatrix([[one] * 3 for _ in range(3)])  # commutative case is valid
    minus1(2)  # the all -1 matrix is valid
    w = root_of_unity(f3, 1)
    with pytest.raises(InvalidQMatrix):
        QMatrix([[f3.one(), w], [w, f3.one()]])  # w*w != 1


def test_multiply_reordering():
    Q = minus1(2)
    assert x(Q, 1) * x(Q, 0) == -(x(Q, 0) * x(Q, 1))
    assert x(Q, 0) * x(Q, 0) == QPolynomial.monomial(Q, (2, 0))
    # q_12 = zeta_3: x2*x1 = zeta_3^2 x1x2
    z = root_of_unity(f3, 1)
    Qz = QMatrix([[f3.one(), z], [z ** 2, f3.one()]])
    lhs = x(Qz, 1) * x(Qz, 0)
    assert lhs == QPolynomial.monomial(Qz, (1, 1), z ** 2)


def test_defining_relation_all_pairs():
    z = root_of_unity(f12, 1)
    Q = QMatrix.from_exponents(f12, [[0, 5, 3], [7, 0, 2], [9, 10, 0]])
    for i in range(3):
        for j in range(3):
            assert x(Q, i) * x(Q, j) == (x(Q, j) * x(Q, i)).scale(Q.entry(i, j))
    assert z ** 12 == 1


def test_associativity_randomized():
    rng = random.Random(5)
    Q = QMatrix.from_exponents(f12, [[0, 5, 3], [7, 0, 2], [9, 10, 0]])
    for _ in range(25):
        p, r, s = (rand_poly(Q, rng) for _ in range(3))
        assert (p * r) * s == p * (r * s)


def test_is_central():
    Q = minus1(2)
    sq_diff = x(Q, 0) * x(Q, 0) - x(Q, 1) * x(Q, 1)
    assert is_central(sq_diff)
    assert not is_central(x(Q, 0))
    Qc = QMatrix.ones(f1, 3)
    assert is_central(x(Qc, 0) + x(Qc, 1) * x(Qc, 2))


def test_divide_by_central():
    Q = minus1(2)
    d = x(Q, 0) * x(Q, 0) - x(Q, 1) * x(Q, 1)
    assert divide_by_central(d.scale(2), d) == QPolynomial.scalar(Q, 2)
    assert divide_by_central(QPolynomial.zero(Q), d).is_zero()
    with pytest.raises(NotCentral):
        divide_by_central(d, x(Q, 0))


def test_divide_single_eps_term_not_polynomial():
    # the one-root divided-difference numerator over x1^2 - eps^2 x2^2
    f4 = field_create(4)
    Q = minus1(2, f4)
    eps = root_of_unity(f4, 1)
    p = x(Q, 0) * x(Q, 0) * (eps ** -1) + x(Q, 1) * x(Q, 1) * eps
    d = x(Q, 0) * x(Q, 0) - (x(Q, 1) * x(Q, 1)).scale(eps * eps)
    assert is_central(d)
    with pytest.raises(NotDivisible) as err:
        divide_by_central(p, d)
    assert err.value.remainder is not None and not err.value.remainder.is_zero()


def test_divide_roundtrip_randomized():
    rng = random.Random(17)
    f4 = field_create(4)
    Q = minus1(3, f4)
    sq = lambda i: x(Q, i) * x(Q, i)
    for _ in range(20):
        d = sq(0) - sq(1).scale(rng.randint(1, 3)) + sq(2).scale(F(rng.randint(-2, 2)))
        if d.is_zero() or not is_central(d):
            continue
        g = rand_poly(Q, rng)
        assert divide_by_central(d * g, d) == g


def test_left_divide_by_variable():
    Q = minus1(2)
    p = x(Q, 0) * x(Q, 1)
    assert left_divide_by_variable(p, 0) == x(Q, 1)
    assert left_divide_by_variable(p, 1) == -x(Q, 0)  # x2*(-x1) = x1x2
    with pytest.raises(NotDivisible):
        left_divide_by_variable(x(Q, 1), 0)
    # generic q: solve x2*g = x1x2 with q_12 = zeta_3
    z = root_of_unity(f3, 1)
    Qz = QMatrix([[f3.one(), z], [z ** 2, f3.one()]])
    g = left_divide_by_variable(x(Qz, 0) * x(Qz, 1), 1)
    assert x(Qz, 1) * g == x(Qz, 0) * x(Qz, 1)


def test_left_divide_roundtrip_randomized():
    rng = random.Random(23)
    Q = QMatrix.from_exponents(f12, [[0, 5, 3], [7, 0, 2], [9, 10, 0]])
    for i in range(3):
        for _ in range(10):
            g = rand_poly(Q, rng)
            assert left_divide_by_variable(x(Q, i) * g, i) == g


def test_monomials_of_degree():
    assert monomials_of_degree(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert monomials_of_degree(3, 0) == [(0, 0, 0)]
    assert len(monomials_of_degree(3, 4)) == 15
    for n, d in ((2, 3), (3, 5), (4, 2)):
        ms = monomials_of_degree(n, d)
        assert len(ms) == dimension_of_degree(n, d)
        assert all(mono_degree(m) == d for m in ms)
        assert len(set(ms)) == len(ms)


def test_render():
    Q = minus1(2)
    p = x(Q, 0) * x(Q, 1) - QPolynomial.scalar(Q, F(1, 2))
    s = render_poly(p)
    assert "x1*x2" in s and "1/2" in s
