import json
import os
import subprocess

try:
    import qgr
except ImportError:
    import _qgr as qgr


def test_table_constants():
    for name, r, hd, ell0 in [("A1", 1, 2, 1), ("B3", 2, 5, 15), ("G2", 3, 4, 12), ("C2", 2, 3, 6)]:
        info = qgr.lie_type(name)
        assert info["r"] == r
        assert info["h_dual"] == hd
        assert info["ell0"] == ell0
        assert info["rank"] * r * hd == 2 * ell0


def test_tilde_c_values():
    assert qgr.tilde_c("A1", 1, 1, 1) == 1
    assert qgr.tilde_c("A1", 1, 1, 3) == -1
    assert qgr.tilde_c("A1", 1, 1, 0) == 0
    assert qgr.star("A3", 1) == 3
    assert qgr.nn("A1", 1, 2, 1, 0) == 2


def test_characters():
    c = qgr.char("A1", "Y[1,0]", "L")
    assert len(c["terms"]) == 2
    e = qgr.char("A1", "Y[1,0]Y[1,2]", "E")
    assert len(e["terms"]) == 4
    l = qgr.char("A1", "Y[1,0]Y[1,2]", "L")
    assert len(l["terms"]) == 3
    assert l["kl"] == {"1": {1: 1}}
    cl = qgr.char("B2", "Y[1,0]", "classical")
    assert cl["applicable"]
    assert sum(t["mult"] for t in cl["terms"]) == 5


def test_verifiers():
    rep = qgr.verify_tsystem("A1", 1, 0, 2)
    assert rep["holds"] and rep["x2"] == -2 and rep["y2"] == 0
    plus, minus = qgr.verify_tboson("A1", 1, 0)
    assert plus and minus
    assert qgr.verify_kappa("B2")
    ok, checked = qgr.verify_presentation("A1")
    assert ok and checked > 0


def test_qdatum():
    rep = qgr.validate_qdatum("B3", [-2, 0, -1, -2, 0])
    assert rep["ok"] and rep["parity_offset"] == 0
    bad = qgr.validate_qdatum("A2", [0, 0])
    assert not bad["ok"]
    assert qgr.tau_order("B3", [-2, 0, -1, -2, 0]) == 10
    assert "[3,5]" in qgr.ar_ascii("B3", [-2, 0, -1, -2, 0])
    assert qgr.canonical_height("A1", 0) == [0]


def test_psi_and_seeds():
    assert qgr.psi("Y[1,-1]", 2) == "Y[1,-2]"
    assert qgr.psi("Y[2,-4]", 2) == "Y[2,-7] Y[2,-5]"
    seed = qgr.gls_seed("A2", [1, 2, 1], [1, 1])
    assert seed["Lambda"][0][1] == -1
    value, exact = qgr.dd("A1", 1, 0, 1, 2)
    assert value == 1 and exact


def test_cli_binary_if_available():
    cli = os.environ.get("QGR_CLI")
    if not cli:
        return
    out = subprocess.run([cli, "char", "A1", "Y[1,0]", "--kind", "L"], capture_output=True, text=True)
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert len(data["terms"]) == 2
