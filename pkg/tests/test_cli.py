import json

import numpy as np
import pytest

from catrand.channels import identity_channel, make_depolarizing, make_pinching
from catrand.cli import main
from catrand.fileio import channel_doc, state_doc, write_json
from catrand.states import DensityOperator

from conftest import phi_plus


def _state(tmp_path, name, m, **extra):
    p = tmp_path / name
    write_json(p, state_doc(DensityOperator(m), **extra))
    return str(p)


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def _json(capsys, *argv):
    code, out, err = _run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_analyze_state_pi2(tmp_path, capsys):
    path = _state(tmp_path, "pi2.json", np.eye(2) / 2)
    doc = _json(capsys, "analyze-state", path, "--alpha", "1")
    assert doc["entropies"]["1"] == {"S": 1.0, "S_cat": 2.0}
    code, out, _ = _run(capsys, "analyze-state", path, "--alpha", "1")
    assert code == 0 and "2.000000" in out


def test_analyze_state_closed_forms(tmp_path, capsys):
    doc = _json(capsys, "analyze-state", _state(tmp_path, "s.json", np.diag([0.5, 0.25, 0.25])),
                "--alpha", "0,1,inf")
    ent = doc["entropies"]
    assert ent["1"]["S_cat"] == 2.0 and ent["inf"]["S_cat"] == 1.0
    assert ent["0"]["S_cat"] == pytest.approx(np.log2(5), abs=1e-6)


def test_pure_state_has_no_catalytic_entropy(tmp_path, capsys):
    doc = _json(capsys, "analyze-state", _state(tmp_path, "p.json", np.diag([1.0, 0.0])))
    assert all(v["S_cat"] == 0.0 for v in doc["entropies"].values())


def test_analyze_bipartite_examples(tmp_path, capsys):
    phi = _json(capsys, "analyze-bipartite", _state(tmp_path, "phi.json", phi_plus(2)), "--dim-a", 2, "--dim-b", 2)
    assert phi["tq_tq"] is True and phi["entropies"]["1"] == 0.0
    pipi = _json(capsys, "analyze-bipartite", _state(tmp_path, "pp.json", np.eye(4) / 4, dim_a=2, dim_b=2))
    assert pipi["entropies"]["1"] == 4.0
    p = np.array([0.4, 0.3, 0.2, 0.1])
    cc = _json(capsys, "analyze-bipartite", _state(tmp_path, "cc.json", np.diag(p), dim_a=2, dim_b=2))
    assert cc["entropies"]["1"] == pytest.approx(-np.sum(p * np.log2(p)), abs=1e-6)


def test_analyze_channel_zoo(tmp_path, capsys):
    docs = {}
    for name, ch in (("id", identity_channel(2)), ("dep", make_depolarizing(2)), ("pin", make_pinching([2, 2]))):
        path = tmp_path / f"{name}.json"
        write_json(path, channel_doc(ch))
        docs[name] = _json(capsys, "analyze-channel", path)
    assert all(v == 0.0 for v in docs["id"]["entropies"].values())
    assert docs["dep"]["entropies"]["1"] == 4.0
    assert all(v == 1.0 for v in docs["pin"]["entropies"].values())


def test_construct_then_execute(tmp_path, capsys):
    src = _state(tmp_path, "pp.json", np.eye(4) / 4, dim_a=2, dim_b=2)
    plan = tmp_path / "plan.json"
    doc = _json(capsys, "construct", src, "--out", plan)
    assert doc["dims"] == {"dim_a0": 4, "dim_b0": 2, "dim_a1": 4, "dim_b1": 2}
    res = _json(capsys, "execute", plan, src)
    assert res["status"] == "PASS" and res["entropies"]["1"] == 4.0


def test_execute_mismatched_source_fails(tmp_path, capsys):
    src = _state(tmp_path, "pp.json", np.eye(4) / 4, dim_a=2, dim_b=2)
    plan = tmp_path / "plan.json"
    _run(capsys, "construct", src, "--out", plan)
    other = _state(tmp_path, "phi.json", phi_plus(2), dim_a=2, dim_b=2)
    code, out, _ = _run(capsys, "execute", plan, other)
    assert code == 1 and out.startswith("FAIL")
    big = _state(tmp_path, "big.json", np.eye(9) / 9, dim_a=3, dim_b=3)
    assert _run(capsys, "execute", plan, big)[0] == 5


def test_construct_trivial_plan_warns(tmp_path, capsys):
    code, _, err = _run(capsys, "construct", _state(tmp_path, "phi.json", phi_plus(2), dim_a=2, dim_b=2),
                        "--out", tmp_path / "p.json")
    assert code == 0 and "zero extractable randomness" in err


def test_chain_csv(tmp_path, capsys):
    csv_path = tmp_path / "trace.csv"
    code, out, _ = _run(capsys, "chain", _state(tmp_path, "pi2.json", np.eye(2) / 2), "--steps", 2, "--csv", csv_path)
    assert code == 0
    want = "step,dim,entropy\n0,2,1.000000\n1,4,2.000000\n2,16,4.000000\n"
    assert out == want and csv_path.read_text() == want


def test_chain_cap_exit_code(tmp_path, capsys):
    assert _run(capsys, "chain", _state(tmp_path, "pi2.json", np.eye(2) / 2), "--steps", 3)[0] == 6


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(capsys, "analyze-state", bad)[0] == 2
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"dim": 2}))
    assert _run(capsys, "analyze-state", missing)[0] == 2
    neg = tmp_path / "neg.json"
    neg.write_text(json.dumps({"dim": 2, "matrix": [[[1.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]}))
    assert _run(capsys, "analyze-state", neg)[0] == 3
    assert _run(capsys, "verify", "nonsense")[0] == 2
    # a factorized block (pi_2 (x) phi+ across a 4 x 2 cut) is refused in strict mode
    m = np.kron(np.eye(2) / 2, phi_plus(2))
    path = _state(tmp_path, "fac.json", m, dim_a=4, dim_b=2)
    code, _, err = _run(capsys, "analyze-bipartite", path)
    assert code == 4 and "factorized" in err.lower()


def test_json_is_byte_identical(tmp_path, capsys):
    path = _state(tmp_path, "s.json", np.diag([0.5, 0.3, 0.2]))
    a = _run(capsys, "analyze-state", path, "--json")[1]
    b = _run(capsys, "analyze-state", path, "--json")[1]
    assert a == b
    v1 = _run(capsys, "verify", "chain", "--json")[1]
    v2 = _run(capsys, "verify", "chain", "--json")[1]
    assert v1 == v2


def test_verify_single_suite(capsys):
    doc = _json(capsys, "verify", "theorem2", "--trials", 20)
    assert doc["passed"] and doc["suites"][0]["name"] == "theorem2"
