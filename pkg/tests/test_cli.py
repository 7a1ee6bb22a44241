"""Tests for the command-line entry point."""

import io
import json

import pytest

from uqsl2_studio.algebra.engine import StudioEngine
from uqsl2_studio.cli.main import COMMANDS, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), stream=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run_cli(*argv)
    return code, json.loads(text)


def test_normalize_relation_is_zero():
    code, doc = run_json("normalize", "K*E - q^2*E*K")
    assert code == EXIT_OK
    assert doc["command"] == "normalize"
    assert doc["mode"] == "symbolic"
    assert doc["result"]["normal_form"] == "0"


def test_normalize_numeric():
    code, doc = run_json("normalize", "E*F", "--mode", "numeric", "--q", "2")
    assert code == EXIT_OK
    assert doc["result"]["terms"] == 3


def test_syntax_error_reports_location():
    code, doc = run_json("normalize", "E^(1/2)")
    assert code == EXIT_USAGE
    err = doc["error"]
    assert err["type"] == "ExprSyntaxError"
    assert err["kind"] == "non-integer exponent"
    assert err["line"] == 1 and err["column"] == 5


def test_numeric_mode_needs_q():
    code, doc = run_json("normalize", "E", "--mode", "numeric")
    assert code == EXIT_USAGE
    assert doc["error"]["type"] == "UsageError"


def test_argparse_errors_are_usage_errors():
    code, _ = run_cli("no-such-command")
    assert code == EXIT_USAGE
    code, _ = run_cli("witness-build")
    assert code == EXIT_USAGE


def test_commutator():
    code, doc = run_json("commutator", "K", "E*F")
    assert code == EXIT_OK
    assert doc["result"]["is_zero"] is True


def test_witness_build_and_verify(tmp_path):
    path = tmp_path / "cert.json"
    code, doc = run_json("witness-build", "--m", "2", "--save", str(path))
    assert code == EXIT_OK
    assert all(c["status"] == "pass" for c in doc["checks"])
    assert path.exists()
    code, doc = run_json("witness-verify", str(path))
    assert code == EXIT_OK
    assert doc["result"]["ok"] is True


def test_witness_verify_detects_tampering(tmp_path):
    path = tmp_path / "cert.json"
    run_cli("witness-build", "--m", "2", "--save", str(path))
    cert = json.loads(path.read_text())
    cert["levels"][0]["P"] = {"1": "1", "-1": "-1"}
    path.write_text(json.dumps(cert))
    code, doc = run_json("witness-verify", str(path))
    assert code == EXIT_CHECK_FAILED
    assert doc["result"]["level"] == 2
    assert doc["result"]["clause"].startswith("(i)")


def test_witness_verify_missing_file(tmp_path):
    code, doc = run_json("witness-verify", str(tmp_path / "missing.json"))
    assert code == EXIT_USAGE


def test_witness_size_guard():
    code, doc = run_json("witness-build", "--m", "9")
    assert code == EXIT_USAGE
    assert doc["error"]["type"] == "SizeGuardError"


def test_rep_check_q_and_hbar():
    assert run_json("rep-check", "--n", "2", "--eps", "-1")[0] == EXIT_OK
    assert run_json("rep-check", "--n", "1", "--k", "1", "--eps", "-1")[0] == EXIT_OK
    assert run_json("rep-check", "--n", "2", "--k", "0", "--hbar", "0.3")[0] == EXIT_OK
    assert run_json("rep-check", "--n", "2", "--mode", "numeric", "--q", "exp(I)")[0] == EXIT_OK


def test_rep_build_eval():
    code, doc = run_json("rep-build", "--n", "1", "--eval", "K*E - q^2*E*K")
    assert code == EXIT_OK
    assert doc["result"]["value"] == [["0", "0"], ["0", "0"]]
    code, doc = run_json("rep-build", "--n", "1", "--k", "0", "--eval", "[H,E] - 2*E")
    assert code == EXIT_OK
    assert doc["result"]["value"] == [["0", "0"], ["0", "0"]]
    code, doc = run_json("rep-build", "--n", "1", "--k", "1", "--eval", "H")
    assert code == EXIT_USAGE


def test_rep_check_needs_a_module():
    code, doc = run_json("rep-check")
    assert code == EXIT_USAGE


def test_commutant_and_casimir():
    code, doc = run_json("commutant", "--n", "3")
    assert code == EXIT_OK
    assert doc["result"]["commutant_dim"] == 1
    assert run_json("casimir")[0] == EXIT_OK
    assert run_json("casimir", "--n", "2", "--eps", "-1")[0] == EXIT_OK
    assert run_json("casimir", "--n", "3", "--mode", "numeric", "--q", "1.1")[0] == EXIT_OK


def test_decompose_conjugated_sum():
    code, doc = run_json("decompose", "--sum", "1,0,1; 0,1,-1; 2,-1,1", "--conjugate")
    assert code == EXIT_OK
    labels = [(d["n"], d["k"], d["eps"]) for d in doc["result"]["labels"]]
    assert labels == [(0, 1, -1), (1, 0, 1), (2, -1, 1)]


def test_envelope_and_separation_rank():
    code, doc = run_json("envelope", "E*F", "--N", "1")
    assert code == EXIT_OK
    assert len(doc["result"]["blocks"]) == 4
    code, doc = run_json("separation-rank", "--degree", "1", "--N", "1")
    assert code == EXIT_OK
    assert (doc["result"]["rank"], doc["result"]["monomials"]) == (5, 5)
    code, doc = run_json("separation-rank", "--degree", "4", "--N", "1")
    assert code == EXIT_USAGE


def test_verma_commands():
    code, doc = run_json("verma-build", "--lam", "lam", "--N", "4")
    assert code == EXIT_OK
    assert doc["checks"][0]["status"] == "pass"
    code, doc = run_json("verma-scan", "--lam", "q^3", "--N", "6")
    assert code == EXIT_OK
    assert doc["result"]["invariant_at"] == [3]
    code, doc = run_json("verma-scan", "--lam=-q^2", "--N", "6")
    assert doc["result"]["invariant_at"] == [2]


def test_verma_norms_csv():
    code, text = run_cli("verma-norms", "--q", "exp(I)", "--Ns", "25,50", "--out", "csv")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "N,normE,normF,normK"
    assert [line.split(",")[0] for line in lines[1:]] == ["25", "50"]


def test_verma_norms_need_q():
    assert run_json("verma-norms")[0] == EXIT_USAGE


def test_growth_and_center_check():
    code, doc = run_json("growth", "--n", "3", "--q", "2")
    assert code == EXIT_OK
    assert doc["result"]["nilpotent_at"] == 4
    code, doc = run_json("growth", "--n", "2", "--gen", "F", "--q", "1.5", "--out", "json")
    assert code == EXIT_OK
    code, doc = run_json("center-check", "--d", "5")
    assert code == EXIT_OK
    assert doc["result"]["passed"] is True
    assert run_json("center-check", "--d", "2")[0] == EXIT_USAGE


def test_checks_csv_output():
    code, text = run_cli("rep-check", "--n", "1", "--out", "csv")
    assert code == EXIT_OK
    assert text.splitlines()[0] == "name,status,residual"


@pytest.mark.slow
def test_table_audit():
    code, doc = run_json("table-audit")
    assert code == EXIT_OK
    assert doc["result"]["passed"] is True


def test_table_audit_row_crash_exits_one(monkeypatch):
    def broken(cfg, row):
        raise RuntimeError("boom")

    monkeypatch.setattr(StudioEngine, "_rows", lambda self: (("table1", "broken", broken),))
    code, doc = run_json("table-audit")
    assert code == EXIT_CHECK_FAILED
    assert doc["checks"][0]["status"] == "fail"


def test_unexpected_error_exits_one(monkeypatch):
    def explode(ctx):
        raise ZeroDivisionError("division by zero")

    monkeypatch.setitem(COMMANDS, "normalize", explode)
    code, doc = run_json("normalize", "E")
    assert code == EXIT_CHECK_FAILED
    assert doc["error"]["type"] == "ZeroDivisionError"
