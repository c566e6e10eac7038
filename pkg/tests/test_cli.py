import io
import json
import subprocess
import sys

import pytest

from twistsha import cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    return code, json.loads(out), err


def test_curve_check_723():
    code, rep, _ = run_json("curve-check", "--curve", "7,23")
    assert code == 0 and rep["schema_version"] == cli.SCHEMA_VERSION
    assert rep["curve"]["c"] == 17 and rep["selmer_minimal"] is True
    assert rep["partition"] == {"a_primes": [7], "b_primes": [23], "c_primes": [17], "l1": 1, "l2": 2, "l": 3}


def test_curve_check_param_and_non_minimal():
    code, rep, _ = run_json("curve-check", "--param", "2,1")
    assert code == cli.EXIT_HYPOTHESIS
    assert rep["curve"] == {"a": 1, "b": 7, "c": 5} and rep["selmer_minimal"] is False


def test_classify_17():
    code, rep, _ = run_json("classify", "--curve", "1,1", "--n", "17")
    assert code == 0 and rep["verdict"] is True and rep["agreement"] is True
    assert rep["certificate"]["pairing_bit"] == 1


def test_classify_65():
    code, rep, _ = run_json("classify", "--curve", "1,1", "--n", "65")
    assert code == 0 and rep["verdict"] is False and rep["certificate"]["d"] == 5


def test_selmer_and_genus():
    code, rep, _ = run_json("selmer", "--curve", "1,1", "--n", "17")
    assert code == 0 and rep["dimension"] == 2 and rep["torsion"] == [2, 2]
    code, rep, _ = run_json("genus", "--n", "65")
    assert code == 0 and (rep["h2"], rep["h4"], rep["h8"], rep["d0"]) == (2, 1, 0, 10)
    assert rep["oracle"]["agrees"] is True
    code, rep, _ = run_json("genus", "--n", "65", "--no-oracle")
    assert "oracle" not in rep


def test_hypothesis_exit_codes():
    code, rep, err = run_json("classify", "--curve", "1,1", "--n", "15")
    assert code == cli.EXIT_HYPOTHESIS and rep["error"]["type"] == "HypothesisViolation"
    assert rep["context"] == {"curve": [1, 1], "n": 15} and "15" in err
    assert run("classify", "--curve", "1,7", "--n", "17")[0] == cli.EXIT_HYPOTHESIS
    assert run("selmer", "--curve", "1,1", "--n", "18")[0] == cli.EXIT_HYPOTHESIS
    assert run("curve-check", "--curve", "1,2")[0] == cli.EXIT_HYPOTHESIS
    assert run("genus", "--n", "7")[0] == cli.EXIT_HYPOTHESIS


def test_search_exit_codes():
    assert run("classify", "--curve", "1,1", "--n", "17", "--bound", "1")[0] == cli.EXIT_SEARCH
    assert run("scan", "--curve", "1,1", "--k", "1", "--x", "2e8", "--quiet")[0] == cli.EXIT_SEARCH


def test_usage_errors():
    assert cli.main(["classify", "--curve", "1", "--n", "17"]) == cli.EXIT_USAGE
    assert cli.main(["bogus"]) == cli.EXIT_USAGE
    assert cli.main(["scan", "--curve", "1,1", "--k", "1", "--x", "1.5"]) == cli.EXIT_USAGE


def test_json_round_trip_and_determinism():
    _, a, _ = run("classify", "--curve", "1,1", "--n", "65")
    _, b, _ = run("classify", "--curve", "1,1", "--n", "65")
    assert a == b
    assert cli.dumps({k: v for k, v in json.loads(a).items() if k != "schema_version"}) == a.strip()


def test_scan_csv_and_progress():
    code, out, err = run("scan", "--curve", "1,1", "--k", "1", "--x", "1e5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == ",".join(cli.dist.CSV_COLUMNS)
    assert [ln.split(",")[1] for ln in lines[1:]] == ["10", "100", "1000", "10000", "100000"]
    assert "progress" in err


def test_scan_identical_across_workers():
    a = run("scan", "--curve", "1,1", "--k", "2", "--x", "2e5", "--quiet")[1]
    b = run("scan", "--curve", "1,1", "--k", "2", "--x", "2e5", "--quiet", "--workers", "2")[1]
    assert a == b


def test_scan_json_and_checkpoints():
    code, rep, _ = run_json("scan", "--curve", "1,1", "--k", "1", "--x", "5000", "--format", "json", "--checkpoints", "100,2000")
    assert code == 0 and [r["x"] for r in rep["rows"]] == [100, 2000, 5000]


@pytest.mark.slow
def test_scan_k2_million_near_three_64ths():
    code, out, _ = run("scan", "--curve", "1,1", "--k", "2", "--x", "1e6", "--quiet")
    last = out.strip().split("\n")[-1].split(",")
    assert code == 0 and last[6] == "3/64"
    assert abs(float(last[5]) - 3 / 64) / (3 / 64) < 0.5


def test_crosscheck_quick_subset():
    code, rep, _ = run_json("crosscheck", "--quick", "--suite", "symbols", "--suite", "torsion", "--seed", "11")
    assert code == 0 and rep["ok"] and rep["seed"] == 11
    assert [s["name"] for s in rep["suites"]] == ["symbol-laws", "torsion"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "twistsha", "curve-check", "--curve", "1,1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["curve"]["c"] == 1
