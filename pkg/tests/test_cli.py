import csv
import io
import json
import math

import pytest

import manin_d4.torsor
from manin_d4 import SCHEMA_VERSION
from manin_d4.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_both(capsys):
    code, out, _ = run(capsys, "count", "--height", "100", "--method", "both")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["counts"] == {"brute": 5209, "torsor": 5209} and doc["match"] is True
    assert doc["schema_version"] == SCHEMA_VERSION and doc["command"] == "count"


def test_count_brute_B1(capsys):
    code, out, _ = run(capsys, "count", "-B", "1", "--method", "brute", "--format", "csv")
    assert code == EXIT_OK
    assert out == "method,B,count\nbrute,1,3\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--height", "0"],
        ["count"],
        ["count", "--height", "ten"],
        ["count", "--height", "501", "--method", "brute"],
        ["count", "--height", "5", "--threads", "0"],
        ["verify", "--suite", "lemma3"],
        ["peyre", "--primes", "50"],
        ["peyre", "--quad-tol", "-1"],
        ["peyre", "--mc-samples", "100"],
        ["asymptotic", "--heights", "2"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == "" and "error" in err


def test_count_mismatch_exits_one(capsys, monkeypatch):
    real = manin_d4.torsor.torsor_count

    def off_by_one(B, **kw):
        r = real(B, **kw)
        return type(r)(r.B, r.count + 1)

    monkeypatch.setattr(manin_d4.torsor, "torsor_count", off_by_one)
    code, out, _ = run(capsys, "count", "-B", "10", "--method", "both")
    assert code == EXIT_FAIL and json.loads(out)["match"] is False


def test_height_spellings(capsys):
    for text in ("1000", "1e3", "10^3", "1_000"):
        code, out, _ = run(capsys, "count", "-B", text)
        assert code == EXIT_OK and json.loads(out)["counts"]["torsor"] == 135403


def test_peyre_default(capsys):
    code, out, _ = run(capsys, "peyre")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["alpha"] == "1/23040" and doc["beta"] == "1/1"
    assert doc["omega_inf_rel_diff"] <= 0.005
    assert doc["c_VH"] > 0 and doc["c_VH_err"] > 0


def test_peyre_cutoffs_within_tails(capsys):
    a = json.loads(run(capsys, "peyre", "--primes", "1000", "--mc-samples", "10^5")[1])
    b = json.loads(run(capsys, "peyre", "--primes", "100000", "--mc-samples", "10^5")[1])
    assert abs(a["euler_value"] - b["euler_value"]) <= a["euler_tail"]


def test_peyre_seeded_output_is_reproducible(capsys):
    argv = ("peyre", "--mc-samples", "10^6", "--seed", "7", "--primes", "1000")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    assert run(capsys, "peyre", "--mc-samples", "10^6", "--seed", "8", "--primes", "1000")[1] != first


def test_peyre_csv(capsys):
    code, out, _ = run(capsys, "peyre", "--primes", "1000", "--mc-samples", "10^5", "--format", "csv")
    rows = dict(list(csv.reader(io.StringIO(out)))[1:])
    assert code == EXIT_OK and rows["alpha"] == "1/23040"


def test_verify_lemma1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma1")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["passed"]
    assert doc["checks"][0]["value"] < 1e-8


def test_verify_torsor_200(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "torsor", "--height", "200")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["passed"]
    assert any("bijection" in c["check"] and c["value"] == 13921 for c in doc["checks"])


def test_verify_failure_exits_one(capsys, monkeypatch):
    import manin_d4.verify as verify

    monkeypatch.setitem(verify.RUNNERS, "alpha", lambda opt: [verify.Check("alpha", "forced", False, 0)])
    code, out, _ = run(capsys, "verify", "--suite", "alpha")
    assert code == EXIT_FAIL and json.loads(out)["passed"] is False


def test_verify_output_has_no_timing(capsys):
    out = run(capsys, "verify", "--suite", "alpha")[1]
    assert "elapsed" not in out and "threads" not in out


def test_asymptotic_rows_and_formats(capsys):
    code, out, _ = run(capsys, "asymptotic", "--heights", "1000,10000")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert [r["B"] for r in doc["rows"]] == [1000, 10000]
    assert [r["N"] for r in doc["rows"]] == [135403, 3078034]
    assert "log" in doc["note"]
    code, out, err = run(capsys, "asymptotic", "--heights", "1000,10000", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["B", "N", "normalized", "ratio"]
    for r, j in zip(rows[1:], doc["rows"]):
        assert [int(r[0]), int(r[1]), float(r[2]), float(r[3])] == [j["B"], j["N"], j["normalized"], j["ratio"]]
    assert "note" in err


def test_asymptotic_empty(capsys):
    code, out, _ = run(capsys, "asymptotic")
    assert code == EXIT_OK and json.loads(out)["rows"] == []


def test_export(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "-B", "1")
    assert code == EXIT_OK
    assert out == "x0,x1,x2,x3\n1,-1,-1,1\n1,-1,1,-1\n1,1,-1,-1\n"
    target = tmp_path / "t.csv"
    assert run(capsys, "export", "-B", "1", "--kind", "torsor", "--out", str(target))[1] == ""
    lines = target.read_text().splitlines()
    assert lines[0].startswith("eta1,") and len(lines) == 4


def test_out_file_and_threads(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["count", "-B", "300", "--out", str(a)]) == EXIT_OK
    assert main(["count", "-B", "300", "--threads", "4", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_json_floats_round_trip(capsys):
    doc = json.loads(run(capsys, "asymptotic", "--heights", "1000")[1])
    r = doc["rows"][0]
    assert r["normalized"] == 135403 / (1000 * math.log(1000) ** 6)
