import json
import subprocess
import sys

import pytest

from jts_envelope.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_verify_text(capsys):
    code, out = _run(capsys, "verify", "--p", "2", "--q", "3")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[-1].startswith("summary: p=2 q=3 dimension=25") and lines[-1].endswith("result=PASS")
    assert all(l.startswith("PASS") for l in lines[:-1])


def test_verify_json_stream(capsys):
    code, out = _run(capsys, "verify", "--p", "2", "--q", "3", "--format", "json", "--suite", "lemma")
    assert code == 0
    records = [json.loads(l) for l in out.out.splitlines()]
    summary = records[-1]["summary"]
    assert summary["failed"] == [] and summary["result"] == "pass" and summary["dimension"] == 25
    ids = [r["id"] for r in records[:-1]]
    assert "lemma.VIII" in ids and "corollary.I" not in ids


def test_no_timings_is_deterministic(capsys, tmp_path):
    outs = []
    for n in range(2):
        f = tmp_path / f"r{n}.jsonl"
        assert main(["verify", "--p", "2", "--q", "3", "--format", "json", "--no-timings", "--out", str(f)]) == 0
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]
    assert b"elapsed_ms\": null" in outs[0]


def test_square_case_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--p", "2", "--q", "2"])
    assert exc.value.code == 2
    assert "p != q" in capsys.readouterr().err


def test_basis(capsys):
    code, out = _run(capsys, "basis", "--p", "2", "--q", "3")
    lines = out.out.splitlines()
    assert code == 0 and len(lines) == 25
    assert lines[0] == "G[1,1]"


def test_basis_unproven_header(capsys):
    code, out = _run(capsys, "basis", "--p", "2", "--q", "2", "--allow-unproven")
    assert code == 0
    assert out.out.splitlines()[0] == "# theorem assertions disabled"


def test_units(capsys):
    code, out = _run(capsys, "units", "--p", "2", "--q", "3")
    lines = out.out.splitlines()
    assert code == 0 and len(lines) == 25
    assert lines[0].startswith("A[1,1] = ")


def test_units_json(capsys):
    code, out = _run(capsys, "units", "--p", "3", "--q", "2", "--format", "json")
    d = json.loads(out.out)
    assert code == 0 and len(d["units"]) == 25 and d["j"] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "jts_envelope", "basis", "--p", "3", "--q", "2"],
                       capture_output=True, text=True, check=True)
    assert len(r.stdout.splitlines()) == 25
