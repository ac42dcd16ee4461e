import json

import pytest

from polysum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_value(capsys):
    assert run(capsys, "value", "--m", "7", "--x", "-1") == (0, "4\n", "")


@pytest.mark.parametrize(
    "argv",
    [
        ["value", "--m", "2", "--x", "1"],
        ["value", "--m", "0x7", "--x", "1"],
        ["represent", "--m", "7", "--coeffs", "1, 2", "--n", "3"],
        ["represent", "--m", "7", "--coeffs", "1,0", "--n", "3"],
        ["exceptional", "--m", "7", "--bound", "10"],
        ["solve", "--m", "12", "--case", "1,1,1,1", "--n", "100000"],
        ["solve", "--m", "7", "--case", "1,2,2,2", "--n", "10"],
        ["nonrep", "--m", "14", "--case", "1,1,1,1"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_represent(capsys):
    code, out, _ = run(capsys, "represent", "--m", "9", "--coeffs", "1,2,2,2", "--n", "34")
    assert code == 1
    assert json.loads(out) == {"m": 9, "coeffs": [1, 2, 2, 2], "n": 34, "witness": None}
    code, out, _ = run(capsys, "represent", "--m", "9", "--coeffs", "1,2,2,2", "--n", "35")
    rec = json.loads(out)
    assert code == 0 and len(rec["witness"]) == 4


def test_text_format(capsys):
    code, out, _ = run(capsys, "represent", "--m", "9", "--coeffs", "1,2,2,2", "--n", "34", "--format", "text")
    assert code == 1 and "witness  null" in out


def test_universal(capsys):
    code, out, _ = run(capsys, "universal", "--m", "9", "--alpha", "1", "--beta", "3")
    v = json.loads(out)
    assert code == 1 and v["universal"] is False and v["witness_failures"] == [34]
    code, out, _ = run(capsys, "universal", "--m", "12", "--alpha", "2", "--beta", "4", "--method", "criterion")
    assert code == 0


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "--m", "5", "--case", "1,1,1,1", "--n", "10")
    rec = json.loads(out)
    assert code == 0 and rec["selection"]["b"] == -2 and rec["selection"]["d"] == 20


def test_nonrep(capsys):
    code, out, _ = run(capsys, "nonrep", "--m", "12", "--case", "1,1,1,1", "--t", "1", "--jobs", "1")
    rep = json.loads(out)
    assert code == 0 and [e["n"] for e in rep["entries"]] == [8, 2864]


def test_exceptional_report_and_resume(capsys, tmp_path):
    path = tmp_path / "scan.jsonl"
    args = ["exceptional", "--m", "9", "--alpha", "1", "--beta", "3", "--bound", "301", "--report", str(path)]
    code, out, _ = run(capsys, *args, "--jobs", "1")
    assert code == 1 and json.loads(out)["exceptional"] == [34]
    full = path.read_bytes()
    assert len(full.splitlines()) == 302

    # cut mid-record, as a killed run would leave it
    path.write_bytes(full[: len(full) // 2 + 7])
    code, out, _ = run(capsys, *args, "--jobs", "2", "--resume")
    assert code == 1 and json.loads(out)["exceptional"] == [34]
    assert path.read_bytes() == full


def test_resume_rejects_foreign_report(capsys, tmp_path):
    path = tmp_path / "scan.jsonl"
    run(capsys, "exceptional", "--m", "7", "--coeffs", "1,1,1", "--bound", "20", "--report", str(path), "--jobs", "1")
    code, _, err = run(
        capsys, "exceptional", "--m", "9", "--coeffs", "1,1,1", "--bound", "20", "--report", str(path), "--resume"
    )
    assert code == 2 and "different scan" in err


def test_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("POLYSUM_JOBS", "0")
    assert run(capsys, "exceptional", "--m", "7", "--coeffs", "1,1,1", "--bound", "20")[0] == 2


@pytest.mark.parametrize("suite", ["ternary", "binary-lattice", "consistency"])
def test_verify_small(capsys, suite):
    extra = {"ternary": ["--bound", "200"], "binary-lattice": ["--bound", "20"], "consistency": ["--m-max", "12"]}
    code, out, _ = run(capsys, "verify", suite, "--jobs", "1", *extra[suite])
    assert code == 0 and json.loads(out)["passed"] is True


def test_reports_identical_across_jobs(capsys, tmp_path):
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"c{jobs}.jsonl"
        code, out, _ = run(
            capsys, "verify", "constructive", "--m-max", "7", "--samples", "20", "--jobs", jobs, "--report", str(path)
        )
        assert code == 0
        outs.append((out, path.read_bytes()))
    assert outs[0] == outs[1]
