import json
import subprocess
import sys

import pytest

from perfcodes import cli
from perfcodes.paper_suite import InternalInconsistency
from perfcodes.report import SCHEMA, certificate_from_json, report_from_json, report_to_json

H1 = "(1 4 7 6)(2 8 3 5); (2 5)(3 8)(4 6)"
H2 = "(1 6)(2 4)(3 8)(5 7); (1 8 5 4)(2 7 3 6)"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_d4(capsys):
    code, out, _ = run(capsys, "classify", "--n", "8", "--gens", H1)
    assert code == 0 and "NotPerfect" in out
    code, out, _ = run(capsys, "classify", "--n", "8", "--gens", H2)
    assert code == 0 and "verdict: Perfect" in out


def test_classify_json_round_trip(capsys):
    code, out, _ = run(capsys, "classify", "--n", "8", "--gens", H1, "--json")
    d = json.loads(out)
    assert d["schema"] == SCHEMA and d["verdict"] == "NotPerfect"
    r = report_from_json(d)
    assert r.verdict.status.value == "NotPerfect"
    assert report_to_json(r, "classify", d["caps"]) == d
    assert certificate_from_json(d["certificate"]).representative is not None


def test_classify_odd_index_trace(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--gens", "(1 2)", "--json")
    d = json.loads(out)
    assert d["verdict"] == "Perfect"
    assert d["rule_trace"][0]["rule"] == "odd-order-or-index"


def test_classify_policy_and_interpretation(capsys):
    code, out, _ = run(capsys, "classify", "--n", "6", "--gens", "(1 2 3 4)(5 6)", "--interpretation", "SameLengthOddCount", "--json")
    d = json.loads(out)
    assert d["verdict"] == "Perfect" and d["discrepancies"]
    code, out, _ = run(capsys, "classify", "--n", "6", "--gens", "(1 2 3 4)(5 6)", "--policy", "fast", "--json")
    assert json.loads(out)["provenance"]["kind"] == "TheoremFastPath"


def test_cache_hit_agrees(capsys, tmp_path):
    cache = str(tmp_path / "cache.jsonl")
    _, first, _ = run(capsys, "classify", "--n", "8", "--gens", H2, "--json", "--cache", cache)
    _, second, _ = run(capsys, "classify", "--n", "8", "--gens", H2, "--json", "--cache", cache)
    a, b = json.loads(first), json.loads(second)
    assert a["verdict"] == b["verdict"]
    assert b["rule_trace"][0]["rule"] == "cache"
    assert a["rule_trace"][0]["rule"] != "cache"


def test_cache_from_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("PERFCODES_CACHE", str(tmp_path / "c.jsonl"))
    run(capsys, "classify", "--n", "4", "--gens", "(1 2)(3 4)")
    _, out, _ = run(capsys, "classify", "--n", "4", "--gens", "(1 2)(3 4)")
    assert "cache" in out


def test_oracle_and_transversal(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "4", "--gens", "(1 2)(3 4)")
    assert code == 0 and "NotPerfect" in out and "witness" in out
    code, out, _ = run(capsys, "transversal", "--n", "4", "--gens", "(1 2)(3 4)")
    assert code == 0 and out.startswith("none")
    code, out, _ = run(capsys, "transversal", "--n", "3", "--gens", "(1 2)", "--json")
    d = json.loads(out)
    assert d["found"] and len(d["certificate"]["data"]) == 3


def test_sweep_cyclic(capsys, tmp_path):
    out_file = tmp_path / "sweep.jsonl"
    code, _, err = run(capsys, "sweep-cyclic", "--n", "4", "--out", str(out_file))
    rows = [json.loads(line) for line in out_file.read_text().splitlines()]
    assert code == 0 and len(rows) == 3 and "0 flagged" in err
    code, out, _ = run(capsys, "sweep-cyclic", "--n", "2")
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows == [r for r in rows if r["cycle_type"] == [2] and r["oracle"] == "Perfect"] and len(rows) == 1


def test_paper_suite_quick(capsys):
    code, out, _ = run(capsys, "paper-suite", "--json")
    d = json.loads(out)
    assert code == 0
    by_name = {f["fixture"]: f for f in d["fixtures"]}
    assert by_name["d4-H1-in-S8"]["oracle"] == "NotPerfect"
    assert by_name["d4-H2-in-S8"]["oracle"] == "Perfect"
    assert by_name["d4-isomorphic"]["agree"]
    assert "cyclic-4-2-in-S6" in d["findings"]


def test_numtheory_check(capsys):
    code, out, _ = run(capsys, "numtheory-check", "--l-max", "2", "--json")
    assert code == 0 and json.loads(out)["k_checked"] == 2
    code, _, _ = run(capsys, "numtheory-check")
    assert code == 0
    code, _, err = run(capsys, "numtheory-check", "--l-max", "21")
    assert code == 1 and "l-max" in err


@pytest.mark.parametrize("argv", [
    ["classify", "--n", "3", "--gens", "(1 4)"],
    ["classify", "--n", "3", "--gens", "(1 2"],
    ["classify", "--n", "3"],
    ["bogus"],
    ["paper-suite", "--budget", "huge"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


def test_resource_cap(capsys):
    code, _, err = run(capsys, "oracle", "--n", "11", "--gens", "(1 2)")
    assert code == 2 and "resource cap" in err


def test_inconsistency_exit_code(capsys, monkeypatch):
    def broken(budget):
        raise InternalInconsistency("deciders disagree")

    monkeypatch.setattr(cli, "run_paper_suite", broken)
    code, _, err = run(capsys, "paper-suite")
    assert code == 3 and "deciders disagree" in err


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "perfcodes.cli", "classify", "--n", "4", "--gens", "(1 2)(3 4)"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "NotPerfect" in r.stdout
