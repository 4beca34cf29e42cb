"""Batch verification harness: parse JSON configurations, run named checks
that map one-to-one onto the library's exactly-verifiable statements, and
emit machine-readable reports.

Commands:
    qcherednik verify <config.json> [--out report.json]
    qcherednik suite paper [--out DIR]
    qcherednik blocks --q <file>
    qcherednik group --spec <file> [--enumerate]

All arithmetic is exact; a check passes only if the identity holds on the
nose, and failures carry a minimal counterexample.  Reports are
deterministic for a fixed (config, seed, version) apart from the wall-clock
duration field.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .cyclotomic import ambient_order, field_create, parse_scalar, scalar_to_literal
from .qpoly import (
    QMatrix,
    QPolynomial,
    dimension_of_degree,
    monomials_up_to,
    render_mono,
    render_poly,
)
from .wgroup import (
    MonomialMatrix,
    block_structure,
    build_gmpn,
    build_gmpn_plus,
    build_w_cc,
    group_from_spec,
    make_srefl,
    make_t,
    matrix_from_spec,
    minus_identity,
    preserves_q,
)
from . import dunkl as dk
from .dunkl import DunklParams
from . import doubles as db
from . import cherednik as ch


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# config parsing helpers


def _fraction(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    raise ConfigError(f"expected a rational literal, got {v!r}")


def _scalar(v, field):
    return parse_scalar(v, field)


def _pairs_dict(obj, value=Fraction):
    out = {}
    for k, v in (obj or {}).items():
        i, j = (int(t) for t in k.split(","))
        out[(i, j)] = value(v)
    return out


def _int_dict(obj, value=Fraction):
    return {int(k): value(v) for k, v in (obj or {}).items()}


def qmatrix_from_config(cfg) -> QMatrix:
    if "kind" in cfg:
        field = field_create(cfg.get("field_order", 2 if cfg["kind"] == "minus_one" else 1))
        if cfg["kind"] == "minus_one":
            return QMatrix.minus_one(field, cfg["n"])
        if cfg["kind"] == "ones":
            return QMatrix.ones(field, cfg["n"])
        raise ConfigError(f"unknown q-matrix kind {cfg['kind']!r}")
    if "exponents" in cfg:
        field = field_create(cfg["field_order"])
        return QMatrix.from_exponents(field, cfg["exponents"])
    if "entries" in cfg:
        field = field_create(cfg["field_order"])
        return QMatrix([[parse_scalar(e, field) for e in row] for row in cfg["entries"]])
    raise ConfigError("q-matrix config needs kind/exponents/entries")


def random_qmatrix(n, order, rng) -> QMatrix:
    field = field_create(order)
    exps = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            k = rng.randrange(order)
            exps[i][j] = k
            exps[j][i] = (-k) % order
    return QMatrix.from_exponents(field, exps)


def negative_params_from_config(cfg) -> DunklParams:
    c1 = cfg.get("c1", 0)
    if isinstance(c1, dict):
        c1 = _pairs_dict(c1, _fraction)
    else:
        c1 = _fraction(c1)
    return DunklParams(
        "negative", cfg["n"], m=cfg["m"], m_prime=cfg.get("m_prime", 1), c1=c1,
        c1_prime=_fraction(cfg["c1_prime"]) if "c1_prime" in cfg else None,
        c_t=_int_dict(cfg.get("c_t"), _fraction),
        degenerate=cfg.get("degenerate", False))


def params_from_config(cfg) -> DunklParams:
    fam = cfg["family"]
    if fam == "negative":
        return negative_params_from_config(cfg)
    if fam == "abelian":
        return DunklParams("abelian", cfg["n"], orders=cfg["orders"],
                           c_ab=_pairs_dict(cfg.get("c"), _fraction),
                           degenerate=cfg.get("degenerate", False))
    if fam == "symmetric":
        return DunklParams("symmetric", cfg["n"], c=_fraction(cfg.get("c", 0)))
    raise ConfigError(f"unknown family {fam!r}")


def presentation_from_config(cfg) -> ch.Presentation:
    fam = cfg["family"]
    if fam == "negative":
        return ch.presentation_negative(
            cfg["m"], cfg.get("m_prime", 1), _fraction(cfg.get("c1", 0)), cfg["n"],
            degenerate=cfg.get("degenerate", False),
            c_t=_int_dict(cfg.get("c_t"), _fraction),
            c1_prime=_fraction(cfg["c1_prime"]) if "c1_prime" in cfg else None)
    if fam == "rational_sn":
        return ch.presentation_rational_sn(cfg["n"], _fraction(cfg.get("c", 0)))
    if fam == "abelian":
        Q = qmatrix_from_config(cfg["q"])
        return ch.presentation_abelian(Q, params_from_config(cfg))
    raise ConfigError(f"unknown presentation family {fam!r}")


# ---------------------------------------------------------------------------
# the named checks


def _first_nonzero_bracket(ops, Q, pairs_q):
    """Return None if all q-brackets vanish, else a counterexample dict."""
    n = len(ops)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            br = dk.q_bracket(ops[i], ops[j], pairs_q(i, j), 1)
            for mono in monomials_up_to(Q.n, br.max_degree):
                img = br.on_monomial(mono)
                if not img.is_zero():
                    return {"i": i + 1, "j": j + 1, "monomial": render_mono(mono),
                            "image": render_poly(img)}
    return None


def check_anticommute(cfg, rng):
    params = negative_params_from_config(cfg)
    D = cfg.get("D", 4)
    construct = max(D + 1, cfg.get("construct_degree", D + 1))
    ops = dk.dunkl_negative(params, construct)
    Q = ops[0].qmatrix
    minus = -Q.field.one()
    ce = _first_nonzero_bracket(ops, Q, lambda i, j: minus)
    return ce is None, ce


def check_qcommute(cfg, rng):
    D = cfg.get("D", 4)
    if cfg.get("family") == "product":
        factors = [params_from_config(f) for f in cfg["factors"]]
        orders = [p.field_order() for p in factors] + [cfg.get("field_order", 1)]
        field = field_create(ambient_order(*orders))
        r = {k: _scalar(v, field) for k, v in
             ((tuple(int(t) for t in key.split(",")), val) for key, val in cfg["r"].items())}
        Q, ops = dk.dunkl_product(factors, r, D + 1, field=field)
        ce = _first_nonzero_bracket(ops, Q, lambda i, j: Q.entry(i, j))
        return ce is None, ce
    # abelian family: both displayed identities
    params = params_from_config(cfg)
    if "q" in cfg:
        Q = qmatrix_from_config(cfg["q"])
    else:
        order = cfg.get("field_order", 12)
        Q = random_qmatrix(params.n, order, rng)
    ops = dk.dunkl_abelian(Q, params, D + 2)
    field = Q.field
    ce = _first_nonzero_bracket(ops, Q, lambda i, j: Q.entry(i, j))
    if ce is not None:
        return False, dict(ce, identity="q-commutation")
    n = Q.n
    for i in range(n):
        for j in range(n):
            xj = dk.mult_by_poly(Q, QPolynomial.variable(Q, j), D + 2)
            lhs = dk.op_compose(ops[i], xj) - dk.op_compose(xj, ops[i]).scale(Q.entry(j, i))
            terms = []
            if i == j:
                if not params.degenerate:
                    terms.append((MonomialMatrix.identity(field, n), field.one()))
                mi = params.orders[i]
                for k in range(1, mi):
                    cval = params.c_ab.get((i, k))
                    if cval is None:
                        continue
                    eps = field.root_of_unity(k * (field.order // mi))
                    terms.append((make_t(field, n, i, eps),
                                  field.one() * cval))
            rhs = dk.group_algebra_operator(Q, terms, lhs.max_degree)
            if lhs != rhs:
                return False, {"identity": "twisted-Weyl", "i": i + 1, "j": j + 1}
    return True, None


def check_pbw(cfg, rng):
    P = presentation_from_config(cfg["presentation"])
    if cfg.get("corrupt"):
        P = ch.corrupt_table(P)
    rep = ch.pbw_consistency(P, cfg.get("trials", 200), cfg.get("max_len", 6),
                             cfg.get("seed", 1))
    expected = cfg.get("expect", "pass")
    ok = rep["status"] == expected
    return ok, None if ok else rep


def check_verma(cfg, rng):
    P = presentation_from_config(cfg["presentation"])
    ok, ce = ch.verma_relations_hold(P, cfg.get("D", 4))
    return ok, ce


def check_formula_equivalence(cfg, rng):
    params = negative_params_from_config(cfg)
    D = cfg.get("D", 4)
    a = dk.dunkl_negative(params, D)
    b = dk.dunkl_negative_via_dij(params, D)
    for i, (u, v) in enumerate(zip(a, b)):
        if u != v:
            for mono in monomials_up_to(u.qmatrix.n, min(u.max_degree, v.max_degree)):
                if u.on_monomial(mono) != v.on_monomial(mono):
                    return False, {"i": i + 1, "monomial": render_mono(mono)}
    return True, None


def check_dij_identity(cfg, rng):
    n = cfg.get("n", 3)
    D = cfg.get("D", 3)
    field = field_create(cfg.get("field_order", 4))
    Q = QMatrix.minus_one(field, n)
    one = field.one()
    mid = minus_identity(field, n)
    gam = MonomialMatrix(field, range(n), [one if k == 0 else -one for k in range(n)])
    A = dk.op_compose(dk.group_operator(Q, gam, D + 1), dk.d_ij(Q, 0, 1, D + 1))
    w1 = mid.compose(make_srefl(field, n, 0, 1, one))
    w2 = mid.compose(make_srefl(field, n, 0, 1, -one))
    checks = [
        (0, [(w1, one), (w2, one)]),
        (1, [(w1, one), (w2, -one)]),
    ]
    for k in range(2, n):
        checks.append((k, []))
    for k, terms in checks:
        comm = dk.commutator_with_mult(A, k)
        if comm != dk.group_algebra_operator(Q, terms, comm.max_degree):
            return False, {"identity": f"[gamma_1 D_12, x_{k+1}]"}
    eps = field.root_of_unity(1)
    B = dk.op_compose(dk.group_operator(Q, gam, D + 1), dk.d_i_eps(Q, 0, eps, D + 1))
    w = mid.compose(make_t(field, n, 0, -eps))
    c0 = dk.commutator_with_mult(B, 0)
    if c0 != dk.group_algebra_operator(Q, [(w, one - eps)], c0.max_degree):
        return False, {"identity": "[gamma_1 D_1^(eps'), x_1]"}
    for k in range(1, n):
        if not dk.commutator_with_mult(B, k).is_zero():
            return False, {"identity": f"[gamma_1 D_1^(eps'), x_{k+1}]"}
    return True, None


def _named_beta(cfg):
    name = cfg.get("data")
    if name == "cherednik_s2":
        field = field_create(1)
        one = field.one()
        c = field.from_rational(_fraction(cfg.get("c", "1/2")))
        swap = MonomialMatrix(field, (1, 0), [one, one])
        L_s = [[c, -c], [-c, c]]
        ident = MonomialMatrix.identity(field, 2)
        entries = [(swap, L_s)]
        if not cfg.get("degenerate", False):
            entries.append((ident, [[one, field.zero()], [field.zero(), one]]))
        return db.CommutatorMap(2, field, entries), QMatrix.ones(field, 2)
    if name == "heisenberg_gamma":
        Q = qmatrix_from_config(cfg["q"])
        return db.heisenberg_beta_v(Q), Q
    if name == "zero":
        Q = qmatrix_from_config(cfg["q"])
        return db.CommutatorMap(Q.n, Q.field, []), Q
    if "beta" in cfg:
        beta = db.commutator_map_from_json(cfg["beta"])
        Q = qmatrix_from_config(cfg["q"])
        return beta, Q
    raise ConfigError("no commutator data in config")


def check_rmax(cfg, rng):
    beta, Q = _named_beta(cfg)
    rm, rp = db.r_max(beta)
    expect = cfg["expect"]
    if expect == "full":
        ok = rm == db.full_tensor_square(Q.n, "VV", Q.field)
    elif expect == "wedge":
        ok = rm == db.wedge_sq(Q) and rp == db.wedge_sq_dual(Q)
    elif expect == "antisym_line":
        field = Q.field
        zero, one = field.zero(), field.one()
        v = [zero] * (Q.n * Q.n)
        v[0 * Q.n + 1] = one
        v[1 * Q.n + 0] = -one
        ok = rm == db.RelationSpace(Q.n, "VV", [v], field)
    else:
        raise ConfigError(f"unknown rmax expectation {expect!r}")
    return ok, None if ok else {"r_minus_dim": rm.dim, "r_plus_dim": rp.dim}


def check_equivariance(cfg, rng):
    beta, Q = _named_beta(cfg)
    group = group_from_spec(cfg["group"]) if "group" in cfg else None
    if group is None:
        from .wgroup import gamma_group
        group = gamma_group(Q)
    ok = db.check_equivariance(beta, group)
    expected = cfg.get("expect", True)
    return ok == expected, None


def check_qcommutativity(cfg, rng):
    beta, Q = _named_beta(cfg)
    ok = db.check_q_commutativity(beta, Q)
    expected = cfg.get("expect", True)
    return ok == expected, None


def check_blocks(cfg, rng):
    Q = qmatrix_from_config(cfg["q"])
    bs = block_structure(Q)
    got = {
        "partition": [[i + 1 for i in b] for b in bs.blocks],
        "signs": ["negative" if s < 0 else "positive" for s in bs.signs],
    }
    if "expect" in cfg:
        ok = got == cfg["expect"]
        return ok, None if ok else got
    return True, got


def check_nq_membership(cfg, rng):
    Q = qmatrix_from_config(cfg["q"])
    if cfg.get("matrices") == "w_cc_generators":
        group = build_w_cc(cfg["m"], cfg.get("m_prime", 1), cfg["n"], field=Q.field)
        bad = [g for g in group.generators if not preserves_q(g, Q)]
        return not bad, None if not bad else {"failing": len(bad)}
    if cfg.get("matrices") == "generic_rotation":
        field = Q.field
        a = field.from_rational(_fraction(cfg.get("a", "3/5")))
        b = field.from_rational(_fraction(cfg.get("b", "4/5")))
        dense = [[a, -b], [b, a]]
        ok = preserves_q(dense, Q) == cfg.get("expect", False)
        return ok, None
    raise ConfigError("nq-membership needs a matrices source")


def check_embedding(cfg, rng):
    data_name = cfg["data"]
    if data_name == "s2_degenerate":
        field = field_create(1)
        Q = QMatrix.ones(field, 2)
        from .wgroup import generate_group
        swap = MonomialMatrix(field, (1, 0), [field.one(), field.one()])
        W = generate_group([swap])
        c = _fraction(cfg.get("c", "1/2"))
        Y, mu, nu, data = db.build_q_reflections(W, Q, lambda d: c)
        beta, _ = _named_beta({"data": "cherednik_s2", "c": str(c), "degenerate": True})
        gamma, _ = _named_beta({"data": "cherednik_s2", "c": "1/2", "degenerate": True})
        conds = db.embedding_conditions(beta, gamma, mu, nu, Y,
                                        db.wedge_sq(Q), db.wedge_sq_dual(Q))
        span = db.root_span_ok(data, 2, field)
        ok = all(conds.values()) and span == cfg.get("expect_span", False)
        return ok, None if ok else {"conditions": conds, "span": span}
    if data_name == "bn_plus":
        n = cfg.get("n", 2)
        Wt = build_gmpn(2, 1, n)
        field = Wt.field
        Q = QMatrix.minus_one(field, n)
        c1 = _fraction(cfg.get("c1", "1/2"))

        def cval(d):
            if not d.reflection.is_diagonal():
                return c1
            eta = next(s for s in d.reflection.scalars if s != 1)
            return Fraction(1, 2) if eta == -1 else 0

        Y, mu, nu, data = db.build_q_reflections(Wt, Q, cval)
        Yg, mu0, nu0, _ = db.build_q_reflections(Wt, Q, lambda d: Fraction(1, 2))
        gamma = db.beta_through_module(mu0, nu0, Yg)
        beta = db.beta_through_module(mu, nu, Y)
        conds = db.embedding_conditions(beta, gamma, mu, nu, Y,
                                        db.wedge_sq(Q), db.wedge_sq_dual(Q))
        span = db.root_span_ok(data, n, field)
        ok = all(conds.values()) and span
        return ok, None if ok else {"conditions": conds, "span": span}
    raise ConfigError(f"unknown embedding data {data_name!r}")


def check_hilbert(cfg, rng):
    count = cfg.get("count", 5)
    d_max = cfg.get("d_max", 5)
    for t in range(count):
        n = rng.choice([2, 3]) if cfg.get("n") is None else cfg["n"]
        Q = random_qmatrix(n, cfg.get("order", 6), rng)
        dims = db.quad_algebra_dims(n, db.wedge_sq(Q).rows, d_max)
        expected = [dimension_of_degree(n, d) for d in range(d_max + 1)]
        if dims != expected:
            return False, {"trial": t, "dims": dims, "expected": expected}
    return True, None


def check_braided_weyl(cfg, rng):
    D = cfg.get("D", 5)
    n = cfg.get("n", 3)
    Q = random_qmatrix(n, cfg.get("order", 12), rng)
    ds = [dk.braided_partial(Q, i, D) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if not dk.q_bracket(ds[i], ds[j], Q.entry(i, j), 1).is_zero():
                return False, {"identity": "partials q-commute", "i": i + 1, "j": j + 1}
            xj = dk.mult_by_poly(Q, QPolynomial.variable(Q, j), D)
            lhs = dk.op_compose(ds[i], xj)
            rhs = dk.op_compose(xj, ds[i]).scale(Q.entry(j, i))
            if i == j:
                rhs = rhs + dk.identity_operator(Q, rhs.max_degree)
            if lhs != rhs:
                return False, {"identity": "partial-x relation", "i": i + 1, "j": j + 1}
    return True, None


CHECKS = {
    "anticommute": check_anticommute,
    "qcommute": check_qcommute,
    "pbw": check_pbw,
    "verma": check_verma,
    "formula-equivalence": check_formula_equivalence,
    "dij-identity": check_dij_identity,
    "rmax": check_rmax,
    "equivariance": check_equivariance,
    "qcommutativity": check_qcommutativity,
    "blocks": check_blocks,
    "nq-membership": check_nq_membership,
    "embedding": check_embedding,
    "hilbert": check_hilbert,
    "braided-weyl": check_braided_weyl,
}


def run_check(config: dict) -> dict:
    """Dispatch a config to its named check; exact pass/fail with
    counterexample data on failure."""
    name = config.get("check")
    if name not in CHECKS:
        raise ConfigError(f"unknown check {name!r}")
    rng = random.Random(config.get("seed", 0))
    start = time.monotonic()
    try:
        ok, detail = CHECKS[name](config, rng)
        status = "pass" if ok else "fail"
    except ConfigError:
        raise
    except Exception as exc:  # noqa: BLE001 - reported, not silenced
        status = "error"
        detail = {"exception": type(exc).__name__, "message": str(exc)}
        ok = False
    duration = time.monotonic() - start
    return {
        "check": name,
        "params": {k: v for k, v in config.items() if k != "check"},
        "status": status,
        "counterexample": detail if status != "pass" else None,
        "detail": detail if status == "pass" and detail else None,
        "duration_seconds": round(duration, 6),
        "version": __version__,
    }


def emit_report(report, path):
    """Canonical JSON; deterministic modulo the duration field."""
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def report_fingerprint(report) -> str:
    """The byte-stable portion of a report (everything but the duration)."""
    stripped = {k: v for k, v in report.items() if k != "duration_seconds"}
    return json.dumps(stripped, sort_keys=True)


# ---------------------------------------------------------------------------
# the bundled paper suite


def paper_suite_configs():
    configs = []
    grid = [(2, 1), (2, 2), (4, 1), (4, 2), (6, 3)]
    c_t_for = {1: {}, 2: {"1": "1/3"}, 3: {"1": "1/3", "2": "1/5"}}
    for m, mp in grid:
        c_t = c_t_for[mp]
        for n in (2, 3):
            configs.append({"check": "anticommute", "family": "w_cc", "m": m,
                            "m_prime": mp, "n": n, "c1": "1/2", "c_t": c_t,
                            "D": 4, "construct_degree": 5})
    for m, mp in ((4, 1), (4, 2)):
        configs.append({"check": "anticommute", "family": "w_cc", "m": m,
                        "m_prime": mp, "n": 2, "c1": "1/2", "c1_prime": "1/3",
                        "c_t": c_t_for[mp], "D": 4, "construct_degree": 5})
    for m, mp in grid:
        for degenerate in (False, True):
            configs.append({"check": "verma", "presentation": {
                "family": "negative", "m": m, "m_prime": mp, "n": 2,
                "c1": "1/2", "c_t": c_t_for[mp], "degenerate": degenerate},
                "D": 3})
    configs.append({"check": "qcommute", "family": "abelian", "n": 3,
                    "orders": [2, 3, 4], "field_order": 12, "seed": 23,
                    "c": {"0,1": "1/2", "1,1": "1/3", "1,2": "1/5",
                          "2,1": "2/7", "2,2": "1/7", "2,3": "3/4"},
                    "D": 5})
    configs.append({"check": "braided-weyl", "n": 3, "order": 12, "seed": 5, "D": 5})
    configs.append({"check": "qcommute", "family": "product", "r": {"0,1": {"order": 4, "coeffs": {"1": "1"}}},
                    "factors": [
                        {"family": "symmetric", "n": 2, "c": "1/2"},
                        {"family": "negative", "n": 2, "m": 2, "m_prime": 1, "c1": "1/3"}],
                    "D": 4})
    configs.append({"check": "qcommute", "family": "product",
                    "r": {"0,1": {"order": 4, "coeffs": {"1": "1"}},
                          "0,2": "2", "1,2": {"order": 3, "coeffs": {"1": "1"}}},
                    "factors": [
                        {"family": "abelian", "n": 1, "orders": [2], "c": {"0,1": "1/4"}},
                        {"family": "negative", "n": 2, "m": 2, "m_prime": 1, "c1": "1/3"},
                        {"family": "symmetric", "n": 2, "c": "1/2"}],
                    "D": 4})
    for m, mp, ct in ((2, 1, {}), (4, 2, {"1": "1/3"})):
        configs.append({"check": "formula-equivalence", "family": "w_cc",
                        "m": m, "m_prime": mp, "n": 2, "c1": "1/2",
                        "c_t": ct, "D": 4})
    configs.append({"check": "dij-identity", "n": 3, "D": 3})
    configs.append({"check": "rmax", "data": "cherednik_s2", "c": "1/2",
                    "expect": "antisym_line"})
    for n in (2, 3):
        configs.append({"check": "rmax", "data": "heisenberg_gamma",
                        "q": {"kind": "minus_one", "n": n}, "expect": "wedge"})
    configs.append({"check": "rmax", "data": "zero",
                    "q": {"kind": "minus_one", "n": 2}, "expect": "full"})
    configs.append({"check": "hilbert", "count": 5, "order": 6, "d_max": 5, "seed": 13})
    pres = [
        {"family": "negative", "m": 2, "m_prime": 1, "n": 2, "c1": "1/2"},
        {"family": "negative", "m": 2, "m_prime": 1, "n": 3, "c1": "1/2"},
        {"family": "abelian", "n": 2, "orders": [2, 3],
         "q": {"exponents": [[0, 1], [5, 0]], "field_order": 6},
         "c": {"0,1": "1/2", "1,1": "1/3", "1,2": "1/5"}},
        {"family": "rational_sn", "n": 2, "c": "1/2"},
    ]
    for p in pres:
        configs.append({"check": "pbw", "presentation": p, "trials": 200,
                        "max_len": 6, "seed": 11})
    configs.append({"check": "pbw", "presentation": pres[0], "corrupt": True,
                    "trials": 200, "max_len": 6, "seed": 11, "expect": "fail"})
    configs.append({"check": "blocks", "q": {"kind": "minus_one", "n": 3},
                    "expect": {"partition": [[1, 2, 3]], "signs": ["negative"]}})
    configs.append({"check": "nq-membership", "matrices": "w_cc_generators",
                    "m": 2, "m_prime": 1, "n": 3, "q": {"kind": "minus_one", "n": 3}})
    configs.append({"check": "nq-membership", "matrices": "generic_rotation",
                    "q": {"kind": "minus_one", "n": 2}, "expect": False})
    configs.append({"check": "embedding", "data": "s2_degenerate", "c": "1/2"})
    configs.append({"check": "embedding", "data": "bn_plus", "c1": "1/2"})
    configs.append({"check": "qcommutativity", "data": "heisenberg_gamma",
                    "q": {"kind": "minus_one", "n": 2}})
    return configs


# ---------------------------------------------------------------------------
# entry points


def cmd_verify(args):
    with open(args.config) as fh:
        config = json.load(fh)
    configs = config if isinstance(config, list) else [config]
    reports = [run_check(c) for c in configs]
    out = reports if isinstance(config, list) else reports[0]
    if args.out:
        emit_report(out, args.out)
    for r in reports:
        print(f"{r['status'].upper():5s} {r['check']}")
        if r["status"] != "pass":
            print(f"      {json.dumps(r['counterexample'])}")
    return 0 if all(r["status"] == "pass" for r in reports) else 1


def cmd_suite(args):
    if args.name != "paper":
        raise ConfigError(f"unknown suite {args.name!r}")
    configs = paper_suite_configs()
    failures = 0
    for idx, config in enumerate(configs):
        report = run_check(config)
        tag = f"{report['check']}[{idx}]"
        print(f"{report['status'].upper():5s} {tag} ({report['duration_seconds']:.2f}s)")
        if report["status"] != "pass":
            failures += 1
            print(f"      {json.dumps(report['counterexample'])}")
        if args.out:
            import os

            os.makedirs(args.out, exist_ok=True)
            emit_report(report, f"{args.out}/report_{idx:03d}_{report['check']}.json")
    print(f"{len(configs) - failures}/{len(configs)} checks passed")
    return 0 if failures == 0 else 1


def cmd_blocks(args):
    with open(args.q) as fh:
        qcfg = json.load(fh)
    Q = qmatrix_from_config(qcfg)
    bs = block_structure(Q)
    out = {
        "partition": [[i + 1 for i in b] for b in bs.blocks],
        "signs": ["negative" if s < 0 else "positive" for s in bs.signs],
        "pair_values": {
            f"{bi + 1},{bj + 1}": scalar_to_literal(bs.pair_value(bi, bj))
            for bi in range(len(bs.blocks)) for bj in range(len(bs.blocks))
        },
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_group(args):
    with open(args.spec) as fh:
        spec = json.load(fh)
    g = group_from_spec(spec)
    out = {"order": len(g)}
    if args.enumerate:
        from .wgroup import matrix_to_spec

        out["elements"] = [matrix_to_spec(m) for m in g]
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(prog="qcherednik",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the checks in a config file")
    p_verify.add_argument("config")
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(fn=cmd_verify)

    p_suite = sub.add_parser("suite", help="run a bundled suite")
    p_suite.add_argument("name")
    p_suite.add_argument("--out", default=None)
    p_suite.set_defaults(fn=cmd_suite)

    p_blocks = sub.add_parser("blocks", help="block structure of a q-matrix")
    p_blocks.add_argument("--q", required=True)
    p_blocks.set_defaults(fn=cmd_blocks)

    p_group = sub.add_parser("group", help="enumerate a group from a spec")
    p_group.add_argument("--spec", required=True)
    p_group.add_argument("--enumerate", action="store_true")
    p_group.set_defaults(fn=cmd_group)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
