"""Command-line interface: verbs, rendering, exit codes, determinism."""

import json
import pathlib
import subprocess
import sys
from fractions import Fraction

import pytest

import hmjoin.cli as cli
from hmjoin.cli import factored_charpoly_string, main, render_polynomial
from hmjoin.errors import CarryForwardError
from hmjoin.graphs import make_named
from hmjoin.polynomials import Polynomial

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
EXAMPLE = str(FIXTURES / "p2_2_k2_k5.json")


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_render_polynomial():
    assert render_polynomial(Polynomial([-1, 0, 1])) == "λ^2-1"
    assert render_polynomial(Polynomial([Fraction(1, 2), -2, 0, 1])) \
        == "λ^3-2λ+1/2"
    assert render_polynomial(Polynomial.zero()) == "0"
    assert render_polynomial(Polynomial([0, 1]), var="x") == "x"


def test_factored_charpoly_string():
    k5 = make_named("complete", [5]).adjacency_matrix()
    p = Polynomial.from_roots([Fraction(4)] + [Fraction(-1)] * 4)
    assert factored_charpoly_string(p, k5) == "(λ+1)^4(λ-4)"
    p3 = make_named("path", [3]).adjacency_matrix()
    from hmjoin.exactlinalg import charpoly
    text = factored_charpoly_string(charpoly(p3), p3)
    # only the rational root 0 splits off; the quadratic stays
    assert text == "λ(λ^2-2)"


def test_join_edge_list(capsys):
    code, out, err = run_cli(capsys, "join", EXAMPLE)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "7"
    assert len(lines) == 1 + 17
    assert lines[1] == "0 1"


def test_charpoly_report(capsys):
    code, out, _ = run_cli(capsys, "charpoly", EXAMPLE)
    assert code == 0
    doc = json.loads(out)
    assert doc["charpoly_factored"] == "(λ+2)(λ+1)^4(λ-1)(λ-5)"
    assert doc["charpoly_direct"] == doc["charpoly_block"]


def test_classify_flags(capsys):
    code, out, _ = run_cli(capsys, "classify", EXAMPLE)
    assert code == 0
    doc = json.loads(out)
    flags = doc["e_main_flags"]
    assert len(flags) == 2
    k2 = {entry["rational"]: entry["flag"] for entry in flags[0]}
    assert k2 == {"1": True, "-1": False}
    k5 = {entry["rational"]: entry["flag"] for entry in flags[1]}
    assert k5 == {"4": True, "-1": True}


def test_verify_ok(capsys):
    code, out, _ = run_cli(capsys, "verify", EXAMPLE)
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_reduce(capsys, tmp_path):
    spec = str(FIXTURES / "p4_5_mixed.json")
    out_path = tmp_path / "reduced.json"
    code, out, _ = run_cli(capsys, "reduce", spec, "--mode", "unused",
                           "-o", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["mode"] == "unused"
    assert doc["m_after"] <= doc["m_before"]
    assert "spec" in doc


def test_reduce_lollipop_global_exclusive(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "family", "lollipop", "4", "3")
    assert code == 0
    spec_path = tmp_path / "lollipop.json"
    spec_path.write_text(json.dumps(json.loads(out)["spec"]))
    code2, out2, _ = run_cli(capsys, "reduce", str(spec_path),
                             "--mode", "global-exclusive")
    assert code2 == 0
    doc = json.loads(out2)
    assert doc["m_after"] == 1
    assert doc["deleted_labels"] == [1, 3]
    assert doc["deleted_count"] == 2


def test_family_petersen(capsys):
    code, out, _ = run_cli(capsys, "family", "petersen", "5", "2", "--charpoly")
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "petersen"
    assert doc["n"] == 10
    assert doc["charpoly_factored"] == "(λ+2)^4(λ-1)^5(λ-3)"
    lines = doc["edgelist"].strip().splitlines()
    assert lines[0] == "10"
    degrees = {}
    for line in lines[1:]:
        u, v = map(int, line.split())
        degrees[u] = degrees.get(u, 0) + 1
        degrees[v] = degrees.get(v, 0) + 1
    assert set(degrees.values()) == {3}


def test_family_cartesian(capsys):
    code, out, _ = run_cli(capsys, "family", "cartesian", "path:3", "cycle:4")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 12
    assert doc["params"] == ["path:3", "cycle:4"]


def test_family_errors(capsys):
    code, _, err = run_cli(capsys, "family", "petersen", "5")
    assert code == 2
    assert "error:" in err
    code2, _, err2 = run_cli(capsys, "family", "moebius", "5", "2")
    assert code2 == 2
    code3, _, err3 = run_cli(capsys, "family", "cartesian", "path:x", "cycle:4")
    assert code3 == 2


def test_universal_preset(capsys):
    code, out, _ = run_cli(capsys, "universal", EXAMPLE, "--preset", "L")
    assert code == 0
    doc = json.loads(out)
    assert doc["params"] == {"alpha": "-1", "beta": "0", "gamma": "0", "delta": "1"}
    assert doc["charpoly_direct"] == doc["charpoly_block"]


def test_universal_generalized_embedded_params(capsys):
    spec = str(FIXTURES / "p4_generalized.json")
    code, out, _ = run_cli(capsys, "universal", spec)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"params", "charpoly", "charpoly_factored"}


def test_universal_requires_params_for_plain_spec(capsys):
    code, _, err = run_cli(capsys, "universal", EXAMPLE)
    assert code == 2
    assert "error:" in err


def test_universal_custom_params(capsys):
    code, out, _ = run_cli(capsys, "universal", EXAMPLE, "--params", "1,0,0,1/2")
    assert code == 0
    assert json.loads(out)["params"]["delta"] == "1/2"
    code2, _, err = run_cli(capsys, "universal", EXAMPLE, "--params", "1,0,0")
    assert code2 == 2


def test_cospectral_check_same_spec(capsys):
    spec = str(FIXTURES / "cospectral_l_gap_a.json")
    code, out, _ = run_cli(capsys, "cospectral", "check", spec, spec, "--kind", "L")
    assert code == 0
    doc = json.loads(out)
    assert doc["isomorphic"] is True
    assert doc["kind"] == "L"


def test_cospectral_check_gap_pair_fails_hypotheses(capsys):
    a = str(FIXTURES / "cospectral_l_gap_a.json")
    b = str(FIXTURES / "cospectral_l_gap_b.json")
    code, _, err = run_cli(capsys, "cospectral", "check", a, b, "--kind", "L")
    assert code == 2
    assert "corrected" in err


def test_cospectral_search_catalog(capsys):
    catalog = str(FIXTURES / "catalog.json")
    code, out, _ = run_cli(capsys, "cospectral", "search", catalog,
                           "--kind", "A", "--budget", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "A"
    assert doc["certificates"]
    verdicts = {c["isomorphic"] for c in doc["certificates"]}
    assert False in verdicts  # the srg(16,6,2,2) pair certifies non-isomorphic
    for cert in doc["certificates"]:
        assert cert["charpoly"]


def test_exit_codes_for_bad_input(capsys, tmp_path):
    code, _, err = run_cli(capsys, "charpoly", str(tmp_path / "missing.json"))
    assert code == 2

    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code2, _, err2 = run_cli(capsys, "charpoly", str(bad))
    assert code2 == 2
    assert "invalid JSON" in err2

    label0 = tmp_path / "label0.json"
    label0.write_text(json.dumps({
        "host": {"n": 1, "edges": []}, "m": 1,
        "factors": [{"n": 1, "edges": []}], "indexing": [[0]]}))
    code3, _, err3 = run_cli(capsys, "charpoly", str(label0))
    assert code3 == 2
    assert "/indexing/0/0" in err3


def test_exit_code_one_for_violations(capsys, monkeypatch):
    def explode(spec):
        raise CarryForwardError("observed multiplicity below the guaranteed bound")
    monkeypatch.setattr(cli, "block_charpoly", explode)
    code, _, err = run_cli(capsys, "verify", EXAMPLE)
    assert code == 1
    assert err.startswith("violation:")


def test_stdin_dash_guard(capsys):
    code, _, err = run_cli(capsys, "cospectral", "check", "-", "-", "--kind", "A")
    assert code == 2


def test_subprocess_byte_determinism():
    cmd = [sys.executable, "-m", "hmjoin", "charpoly", EXAMPLE]
    one = subprocess.run(cmd, capture_output=True, check=True).stdout
    two = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert one == two
    assert one.endswith(b"\n")
    doc = json.loads(one)
    assert doc["charpoly_factored"] == "(λ+2)(λ+1)^4(λ-1)(λ-5)"


def test_subprocess_verify_second_fixture():
    cmd = [sys.executable, "-m", "hmjoin", "verify", str(FIXTURES / "p3_3.json")]
    proc = subprocess.run(cmd, capture_output=True, check=True)
    assert json.loads(proc.stdout)["verified"] is True
