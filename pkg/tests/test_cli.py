import json

import pytest

from qcherednik.cli import (
    ConfigError,
    emit_report,
    main,
    paper_suite_configs,
    report_fingerprint,
    run_check,
)


def test_run_check_anticommute_pass():
    rep = run_check({"check": "anticommute", "family": "w_cc", "m": 2,
                     "m_prime": 1, "n": 2, "c1": "1/2", "D": 3})
    assert rep["status"] == "pass"
    assert rep["counterexample"] is None
    assert rep["duration_seconds"] >= 0
    assert rep["version"]


def test_run_check_anticommute_asymmetric_c_fails():
    rep = run_check({"check": "anticommute", "family": "w_cc", "m": 2,
                     "m_prime": 1, "n": 2,
                     "c1": {"0,1": "1/2", "1,0": "1/3"}, "D": 3})
    assert rep["status"] == "fail"
    assert rep["counterexample"] is not None
    assert "monomial" in rep["counterexample"]


def test_run_check_blocks():
    rep = run_check({"check": "blocks", "q": {"kind": "minus_one", "n": 3},
                     "expect": {"partition": [[1, 2, 3]], "signs": ["negative"]}})
    assert rep["status"] == "pass"


def test_run_check_unknown():
    with pytest.raises(ConfigError):
        run_check({"check": "nonsense"})


def test_report_roundtrip_and_stability(tmp_path):
    cfg = {"check": "blocks", "q": {"kind": "minus_one", "n": 2}}
    rep1 = run_check(cfg)
    rep2 = run_check(cfg)
    path = tmp_path / "report.json"
    emit_report(rep1, path)
    loaded = json.loads(path.read_text())
    assert loaded["check"] == "blocks"
    assert loaded["status"] == "pass"
    # bit-stable apart from the wall-clock duration field
    assert report_fingerprint(rep1) == report_fingerprint(rep2)


def test_verify_exit_codes(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"check": "blocks", "q": {"kind": "minus_one", "n": 2}}))
    assert main(["verify", str(good)]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"check": "nq-membership",
                               "matrices": "generic_rotation",
                               "q": {"kind": "minus_one", "n": 2},
                               "expect": True}))
    assert main(["verify", str(bad)]) == 1


def test_verify_writes_report(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"check": "hilbert", "count": 2, "order": 6,
                               "d_max": 4, "seed": 13}))
    out = tmp_path / "report.json"
    assert main(["verify", str(cfg), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "pass"


def test_blocks_command(tmp_path, capsys):
    qfile = tmp_path / "q.json"
    qfile.write_text(json.dumps({"kind": "minus_one", "n": 3}))
    assert main(["blocks", "--q", str(qfile)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["partition"] == [[1, 2, 3]]
    assert out["signs"] == ["negative"]


def test_group_command(tmp_path, capsys):
    spec = tmp_path / "g.json"
    spec.write_text(json.dumps({"family": "w_cc", "m": 2, "m_prime": 1, "n": 2}))
    assert main(["group", "--spec", str(spec), "--enumerate"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["order"] == 4
    assert len(out["elements"]) == 4


def test_paper_suite_configs_valid():
    configs = paper_suite_configs()
    assert len(configs) > 20
    names = {c["check"] for c in configs}
    assert {"anticommute", "verma", "qcommute", "pbw", "rmax", "hilbert",
            "embedding", "formula-equivalence", "dij-identity", "blocks",
            "nq-membership", "braided-weyl", "qcommutativity"} <= names


def test_run_check_error_status():
    rep = run_check({"check": "anticommute", "family": "w_cc", "m": 3,
                     "m_prime": 1, "n": 2, "c1": "1/2"})
    assert rep["status"] == "error"
    assert rep["counterexample"]["exception"] == "InvalidParameters"


def test_qcommute_fixed_q():
    rep = run_check({"check": "qcommute", "family": "abelian", "n": 2,
                     "orders": [2, 3],
                     "q": {"exponents": [[0, 1], [5, 0]], "field_order": 6},
                     "c": {"0,1": "1/2", "1,1": "1/3", "1,2": "1/5"}, "D": 3})
    assert rep["status"] == "pass"
