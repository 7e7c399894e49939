import json
import subprocess
import sys

import pytest

from ghcsearch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def machine(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out)


def test_delta_human(capsys):
    code, out, _ = run(capsys, "delta", "--n", "4", "--a", "(3)", "--ell", "1")
    assert code == 0
    assert "delta = 2" in out and "delta_minus = 1" in out


def test_delta_machine(capsys):
    code, rec = machine(capsys, "delta", "--n", "3", "--a", "(4)", "--ell", "1")
    assert code == 0
    assert rec["command"] == "delta"
    assert rec["params"] == {"n": 3, "a": "(4)", "ell": 1}
    assert rec["result"] == {"delta": -1, "delta_minus": -1, "contains_linear_subspace": False}
    assert "wall_time" not in rec


def test_timing_adds_wall_time(capsys):
    _, rec = machine(capsys, "delta", "--n", "4", "--a", "(3)", "--ell", "1", "--timing")
    assert rec["wall_time"] >= 0


@pytest.mark.parametrize(
    "argv",
    [
        ["delta", "--n", "4", "--a", "(0)", "--ell", "1"],
        ["delta", "--n", "4", "--a", "(2^0)", "--ell", "1"],
        ["delta", "--n", "4", "--a", "(2,x)", "--ell", "1"],
        ["delta", "--n", "4", "--a", "(3)", "--ell", "-1"],
        ["check-triple", "--n", "4", "--a", "(3)", "--b", "(1^3)", "--p", "100"],
        ["no-such-command"],
        [],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1
    capsys.readouterr()


def test_check_conditions(capsys):
    code, rec = machine(capsys, "check-conditions", "--n", "10", "--a", "(2^2,3)", "--b", "(1^7,2)")
    assert code == 0
    res = rec["result"]
    assert res["ok"] and res["target"] == 5 and res["k"] == 2 and res["goal"]
    assert res["detail"]["m"] == 7 and res["detail"]["l"] == 2


def test_check_conditions_fail(capsys):
    code, rec = machine(capsys, "check-conditions", "--n", "4", "--a", "(3)", "--b", "(1,1)")
    assert code == 2 and not rec["result"]["num2_ok"]


def test_check_triple_statuses(capsys):
    base = ["check-triple", "--n", "4", "--a", "(3)"]
    assert run(capsys, *base, "--b", "(1^3)")[0] == 0
    assert run(capsys, *base, "--b", "(1,1)")[0] == 2
    assert run(capsys, *base, "--b", "(1^2,3)", "--trials", "1")[0] == 3


def test_check_triple_machine_record(capsys):
    code, rec = machine(capsys, "check-triple", "--n", "10", "--a", "(2^2,3)", "--b", "(1^7,2)")
    assert code == 0
    res = rec["result"]
    assert res["status"] == "Verified" and res["achieved"] == res["target"] == 5
    assert rec["params"]["primes"] == [101]


def test_invalid_triple_exits_2(capsys):
    code, _, err = run(capsys, "check-triple", "--n", "4", "--a", "(3)", "--b", "(1)")
    assert code == 2 and "error" in err


def test_numlin_modes(capsys):
    code, rec = machine(capsys, "numlin", "--n", "6", "--a", "(3)")
    assert code == 0
    assert rec["result"]["witnesses"] == [{"a_prime": "(3)", "lam": 2, "b": "(1^4)"}]
    code, rec = machine(capsys, "numlin", "--n", "6", "--a", "(3)", "--a-prime", "(3)", "--lam", "2")
    assert code == 0 and rec["result"]["witnesses"][0]["b"] == "(1^4)"
    code, _ = machine(capsys, "numlin", "--n", "10", "--a", "(2^2,3)")
    assert code == 2


def test_dim_breakdown(capsys):
    code, rec = machine(capsys, "dim", "--n", "10", "--a", "(2^2,3)", "--b", "(1^7,2)")
    assert code == 0
    res = rec["result"]
    assert res["quotient_dim"] == 5 and res["D"] == 418
    assert res["type1_quotient"] - res["type2_rank"] == res["quotient_dim"]


def test_dim_witness_roundtrip(capsys, tmp_path):
    path = tmp_path / "w.txt"
    base = ["dim", "--n", "7", "--a", "(2^2)", "--b", "(1^4,2)", "--seed", "3"]
    code, first = machine(capsys, *base, "--dump-witness", str(path))
    assert code == 0 and path.read_text().startswith("witness v1")
    _, again = machine(capsys, "dim", "--witness", str(path))
    _, dense = machine(capsys, "dim", "--witness", str(path), "--method", "dense")
    assert first["result"]["quotient_dim"] == again["result"]["quotient_dim"]
    assert dense["result"]["quotient_dim"] == first["result"]["quotient_dim"]


def test_search_b(capsys):
    code, rec = machine(capsys, "search-b", "--n", "4", "--a", "(3)", "--all", "--trials", "2")
    assert code == 0
    bs = {r["b"] for r in rec["result"]["verified"]}
    assert {"(1^3)", "(1^2,2)", "(1,2^2)", "(2^3)"} <= bs
    code, rec = machine(capsys, "search-b", "--n", "4", "--a", "(3)")
    assert len(rec["result"]["verified"]) == 1


def test_search_b_excluded_pair(capsys):
    assert run(capsys, "search-b", "--n", "4", "--a", "(2)")[0] == 2


def test_search_pairs(capsys, tmp_path):
    out = tmp_path / "pairs.jsonl"
    code, text, _ = run(capsys, "search-pairs", "--n-max", "8", "--out", str(out))
    assert code == 0
    assert text.splitlines() == ["6 | (3)", "7 | (3)", "8 | (2,3), (3), (4)", "total: 5"]
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(rows) == 5
    assert rows[0] == {"n": 6, "a": "(3)", "a_prime": "(3)", "lam": 2, "b": "(1^4)"}


def test_enumerate_a(capsys):
    code, rec = machine(capsys, "enumerate-a", "--n", "6")
    assert code == 0 and rec["result"]["count"] == 10


def test_module_entry_point_byte_identical():
    cmd = [sys.executable, "-m", "ghcsearch", "check-triple", "--n", "10", "--a", "(2^2,3)",
           "--b", "(1^7,2)", "--format", "machine"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"Verified" in a
