import json
from pathlib import Path

import pytest

from apseq import grouping
from apseq.cli import CENSUS_COLUMNS, UsageError, main, parse_args

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_seq():
    c = parse_args(["seq", "--a0", "11", "--d0", "25"])
    assert (c.verb, c.params["a0"], c.params["d0"], c.format, c.workers) == ("seq", 11, 25, "text", 1)
    assert c.params["terms"] == 5


def test_parse_census():
    c = parse_args(["census", "--from", "3", "--to", "500", "--mode", "both", "--format", "csv"])
    assert (c.verb, c.params, c.format) == ("census", {"d_min": 3, "d_max": 500, "mode": "both"}, "csv")


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["seq", "--a0", "x", "--d0", "5"], "--a0"),
        (["seq", "--a0", "1"], "--d0"),
        (["census", "--from", "1", "--to", "5"], "--from"),
        (["census", "--from", "9", "--to", "5"], "--to"),
        (["verify", "--from", "2", "--to", "5", "--workers", "0"], "--workers"),
        (["census", "--from", "2", "--to", "5", "--mode", "fast"], "--mode"),
    ],
)
def test_usage_errors_name_the_flag(capsys, argv, flag):
    with pytest.raises(UsageError, match=flag):
        parse_args(argv)
    code, _, err = run(capsys, *argv)
    assert code == 2 and flag in err and len(err.strip().splitlines()) == 1


def test_non_coprime_exit_2(capsys):
    assert parse_args(["seq", "--a0", "6", "--d0", "9"]).params["a0"] == 6
    code, out, err = run(capsys, "seq", "--a0", "6", "--d0", "9")
    assert code == 2 and out == "" and "a0 and d0 must be co-prime" in err


def test_degenerate_groups_exit_2(capsys):
    code, _, err = run(capsys, "groups", "--a0", "3", "--d0", "1")
    assert code == 2 and "fewer than two" in err


def test_seq_table(capsys):
    code, out, _ = run(capsys, "seq", "--a0", "11", "--d0", "25")
    assert code == 0
    rows = out.splitlines()
    assert len(rows) == 6
    assert rows[0].split() == ["A(11,25)", "11,", "36,", "61,", "86,", "111,", "..."]
    assert rows[5].startswith("A(5,1)")


def test_seq_terms_and_truncation(capsys):
    code, out, _ = run(capsys, "seq", "--a0", "99", "--d0", "100", "--max-len", "3", "--terms", "2")
    assert code == 0
    assert out.splitlines()[0].split() == ["A(99,100)", "99,", "199,", "..."]
    assert "truncated after 3" in out


def test_groups_text(capsys):
    code, out, _ = run(capsys, "groups", "--a0", "11", "--d0", "25")
    assert code == 0
    assert "indices 0..2, Δ=9, size 3" in out
    assert "indices 2..5, Δ=2, size 4" in out
    assert "share A(17,7)" in out


def test_sym_text(capsys):
    code, out, _ = run(capsys, "sym", "--a0", "17", "--d0", "23")
    assert code == 0
    assert "symmetric: yes; Δ=4; d0²−1=528; divides: yes; z0=3; dβ=3" in out
    assert "17, 33, 41, 41, 33, 17" in out


def test_sym_json(capsys):
    code, out, _ = run(capsys, "sym", "--a0", "11", "--d0", "25", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    r = doc["results"][0]
    assert (r["symmetric"], r["witness"], r["delta_divides"], r["delta"]) == (False, 0, False, 9)


def test_json_envelope(capsys):
    _, out, _ = run(capsys, "groups", "--a0", "11", "--d0", "25", "--format", "json")
    doc = json.loads(out)
    assert set(doc) == {"command", "parameters", "results", "falsifications", "version"}
    assert [(g["alpha"], g["beta"], g["delta"]) for g in doc["results"]] == [(0, 2, 9), (2, 5, 2)]


def test_seq_json_golden(capsys):
    code, out, _ = run(capsys, "seq", "--a0", "11", "--d0", "25", "--format", "json")
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / "seq_11_25.json").read_text())


def test_census_golden(capsys):
    code, out, _ = run(capsys, "census", "--from", "2", "--to", "12", "--mode", "both", "--format", "json")
    assert code == 1  # d0 = 3 breaks the twin claim
    doc = json.loads(out)
    assert doc == json.loads((GOLDEN / "census_2_12.json").read_text())
    assert [f["d0"] for f in doc["falsifications"]] == [3]
    code, out, _ = run(capsys, "census", "--from", "2", "--to", "12", "--mode", "both", "--format", "csv")
    assert out == (GOLDEN / "census_2_12.csv").read_text()


def test_census_csv_layout(capsys):
    code, out, _ = run(capsys, "census", "--from", "9", "--to", "9", "--format", "csv")
    assert code == 0
    header, row = out.split("\n")[:2]
    assert header.split(",") == CENSUS_COLUMNS
    assert row == "9,6,5,5,false,true,true,1;2;4;7;8"
    assert "\r" not in out


def test_census_csv_header_even_when_empty(capsys):
    code, out, _ = run(capsys, "twin-scan", "--from", "14", "--to", "16", "--format", "csv")
    assert code == 0
    assert out == ",".join(CENSUS_COLUMNS) + "\n"


def test_twin_scan_text(capsys):
    code, out, _ = run(capsys, "twin-scan", "--from", "4", "--to", "100")
    assert code == 0
    assert "at d0 in [4, 6, 12, 18, 30, 42, 60, 72]; falsifications: 0" in out


@pytest.mark.parametrize("verb", ["census", "twin-scan", "verify"])
def test_workers_do_not_change_output(capsys, verb):
    argv = [verb, "--from", "2", "--to", "45", "--format", "json"]
    _, single, _ = run(capsys, *argv)
    _, multi, _ = run(capsys, *argv, "--workers", "3")
    assert single == multi


def test_verify_small_range(capsys):
    code, out, _ = run(capsys, "verify", "--from", "2", "--to", "60")
    assert code == 0
    assert "theorem: 0 falsifications" in out and "census: 0 mismatches" in out
    assert "note: d0=3" in out


def test_injected_fault_reaches_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(grouping, "INJECT_FAULT", True)
    code, out, _ = run(capsys, "verify", "--from", "5", "--to", "12")
    assert code == 1
    assert "FALSIFIED [theorem]" in out and "FAIL" in out.splitlines()[-1]
    code, out, _ = run(capsys, "sym", "--a0", "17", "--d0", "23")
    assert code == 1 and "FALSIFIED" in out


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "apseq", "sym", "--a0", "17", "--d0", "23", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("0,5,4,17;33;41;41;33;17,true,,528,true,3,3")
