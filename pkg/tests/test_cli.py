import csv
import io
import json

import pytest

from qftforge.cli import run_command


def run(argv, monkeypatch=None):
    buf = io.StringIO()
    code = run_command(argv, out=buf)
    return code, buf.getvalue()


def test_qft_exact_single_qubit():
    code, out = run(["qft", "--n", "1", "--variant", "interleaved", "--input", "0", "--exact", "--format", "text"])
    assert code == 0
    assert out.splitlines()[0] == "statevector [0.70710678, 0.70710678]"


def test_qft_exact_json():
    code, out = run(["qft", "--n", "2", "--input", "1", "--exact"])
    doc = json.loads(out)
    assert code == 0 and len(doc["amplitudes"]) == 4
    assert abs(sum(doc["probabilities"]) - 1) < 1e-9


def test_qft_histogram_schema():
    code, out = run(["qft", "--n", "3", "--shots", "100", "--seed", "4"])
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"shots", "seed", "counts"}
    assert sum(doc["counts"].values()) == 100
    assert all(len(k) == 3 for k in doc["counts"])


def test_qft_dump():
    code, out = run(["qft", "--n", "2", "--variant", "textbook", "--dump"])
    assert code == 0
    assert out.splitlines() == ["H q0", "CP(pi/2) q1,q0", "H q1", "SWAP q0,q1"]


def test_verify():
    code, out = run(["verify", "--max-n", "4"])
    assert code == 0
    lines = out.splitlines()
    assert "qft-textbook n=4 PASS" in lines
    assert "qft-interleaved n=4 PASS" in lines
    assert all(line.endswith("PASS") for line in lines)


def test_shor():
    code, out = run(["shor", "--shots", "2048", "--seed", "1"])
    doc = json.loads(out)
    assert code == 0
    assert doc["factors"] == [3, 5]
    assert doc["success_rate"] >= 0.7


def test_hhl_small():
    code, out = run(["hhl", "--qpe", "2", "--solution", "2", "--shots", "50"])
    doc = json.loads(out)
    assert code == 0 and all(len(k) == 3 for k in doc["counts"])


def test_bench_csv(tmp_path):
    code, out = run(["bench", "--min-n", "2", "--max-n", "6", "--format", "csv", "--reps", "3"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 10
    target = tmp_path / "r.json"
    code, out = run(["bench", "--min-n", "2", "--max-n", "3", "--reps", "3", "--out", str(target)])
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())["rows"]) == 4


@pytest.mark.parametrize(
    "argv",
    [["frobnicate"], ["qft"], ["qft", "--n", "27"], ["qft", "--n", "2", "--bogus"], ["bench", "--reps", "2"], []],
)
def test_usage_errors(argv, capsys):
    code, _ = run(argv)
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_runtime_errors(capsys):
    assert run(["qft", "--n", "2", "--input", "4"])[0] == 1
    assert run(["qft", "--n", "11", "--exact"])[0] == 1
    assert run(["hhl", "--qpe", "20", "--solution", "10"])[0] == 1
    assert run(["bench", "--min-n", "5", "--max-n", "3"])[0] == 1
    assert "error" in capsys.readouterr().err


def test_seed_env_fallback(monkeypatch):
    monkeypatch.setenv("QFTFORGE_SEED", "11")
    _, env_out = run(["qft", "--n", "3", "--shots", "64"])
    monkeypatch.delenv("QFTFORGE_SEED")
    _, flag_out = run(["qft", "--n", "3", "--shots", "64", "--seed", "11"])
    assert env_out == flag_out
    assert json.loads(env_out)["seed"] == 11


def test_seed_default_zero(monkeypatch):
    monkeypatch.delenv("QFTFORGE_SEED", raising=False)
    assert json.loads(run(["qft", "--n", "2", "--shots", "5"])[1])["seed"] == 0


def test_bad_seed_env(monkeypatch):
    monkeypatch.setenv("QFTFORGE_SEED", "banana")
    assert run(["qft", "--n", "2"])[0] == 2
