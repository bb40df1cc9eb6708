import json
from pathlib import Path

import pytest

from ubern.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--n", "2", "--format", "json")
    assert code == 0
    lines = out.strip().splitlines()
    assert json.loads(lines[0]) == {"n": 2, "count": 2}
    coeffs = [json.loads(line)["c"] for line in lines[1:]]
    assert coeffs == ["1/3", "-1/4"]


def test_compute_rejects_nonpositive(capsys):
    code, _, err = run(capsys, "compute", "--n", "0")
    assert code == 2
    assert "must be >= 1" in err


def test_compute_respects_ceiling(capsys):
    code, _, err = run(capsys, "compute", "--n", "61")
    assert code == 2
    code, _, _ = run(capsys, "compute", "--n", "10", "--n-ceiling", "9")
    assert code == 2


def test_compute_text_elision(capsys):
    code, out, _ = run(capsys, "compute", "--n", "12")
    assert code == 0
    assert "77 terms" in out
    assert "57 more terms" in out


def test_compute_cache_hit_identical_bytes(capsys, tmp_path: Path):
    args = ("compute", "--n", "12", "--cache-dir", str(tmp_path), "--format", "json")
    code1, out1, err1 = run(capsys, *args)
    code2, out2, err2 = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "cache write" in err1
    assert "cache hit" in err2


def test_compute_cache_corruption_exits_3(capsys, tmp_path: Path):
    run(capsys, "compute", "--n", "6", "--cache-dir", str(tmp_path))
    path = tmp_path / "ubern_6.jsonl"
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-2]) + "\n")
    code, _, err = run(capsys, "compute", "--n", "6", "--cache-dir", str(tmp_path))
    assert code == 3
    assert "cache error" in err


def test_verify_grid_examples(capsys):
    assert run(capsys, "verify", "--theorem", "3.5", "--p", "5", "--s", "1", "--l", "5")[0] == 0
    assert run(capsys, "verify", "--theorem", "4.9", "--m", "7", "--k", "1", "--N", "3")[0] == 0
    code, _, err = run(capsys, "verify", "--theorem", "4.8", "--n", "7")
    assert code == 2 and "even" in err


def test_verify_missing_parameters(capsys):
    code, _, err = run(capsys, "verify", "--theorem", "3.5", "--p", "5")
    assert code == 2
    assert "--s" in err and "--l" in err


def test_verify_json_report(capsys):
    code, out, _ = run(
        capsys, "verify", "--theorem", "4.8", "--n", "12", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["holds"] is True
    assert doc["prime"] == 2 and doc["mod_exp"] == 3
    assert doc["context"]["case"] == "ii"


def test_verify_perturb_exits_1_with_one_failure(capsys):
    for argv in (
        ("verify", "--theorem", "3.5", "--p", "3", "--s", "3", "--l", "3"),
        ("verify", "--theorem", "4.8", "--n", "12"),
        ("verify", "--theorem", "4.9", "--m", "7", "--k", "1", "--N", "3"),
    ):
        code, out, _ = run(capsys, *argv, "--perturb", "--format", "json")
        assert code == 1
        doc = json.loads(out)
        assert doc["holds"] is False
        assert len(doc["failures"]) == 1


def test_verify_backend_both(capsys):
    code, out, _ = run(
        capsys, "verify", "--theorem", "3.5", "--p", "3", "--s", "4", "--l", "3",
        "--backend", "both", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["context"]["backend"] == "both"


def test_verify_json_deterministic(capsys):
    argv = ("verify", "--theorem", "4.9", "--m", "8", "--k", "1", "--N", "3",
            "--format", "json")
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_lemma_examples(capsys):
    code, out, _ = run(capsys, "lemma", "--name", "4.1", "--k-max", "199")
    assert code == 0
    assert "i: 100" in out
    assert run(capsys, "lemma", "--name", "4.3", "--a-max", "20", "--i-max", "8")[0] == 0
    code, _, err = run(capsys, "lemma", "--name", "9.9")
    assert code == 2 and "unknown lemma" in err
    code, _, err = run(capsys, "lemma", "--name", "4.1", "--a-max", "5")
    assert code == 2


def test_classical_examples(capsys):
    code, out, _ = run(capsys, "classical", "--n-max", "6")
    assert code == 0
    assert "1/6" in out and "-1/30" in out and "1/42" in out
    code, out, _ = run(capsys, "classical", "--n-max", "1")
    assert code == 0 and "-1/2" in out
    assert run(capsys, "classical", "--n-max", "100")[0] == 2


def test_sweep_subcommand(capsys):
    code, out, _ = run(capsys, "sweep", "--theorem", "4.8", "--n-min", "12", "--n-max", "16")
    assert code == 0
    assert "all hold" in out


def test_unknown_flag_is_usage_error(capsys):
    assert run(capsys, "compute", "--n", "2", "--bogus")[0] == 2


def test_env_ceiling(capsys, monkeypatch):
    monkeypatch.setenv("UBERN_N_CEILING", "5")
    assert run(capsys, "compute", "--n", "6")[0] == 2
    assert run(capsys, "compute", "--n", "5")[0] == 0


def test_env_cache_dir(capsys, monkeypatch, tmp_path: Path):
    monkeypatch.setenv("UBERN_CACHE_DIR", str(tmp_path))
    assert run(capsys, "compute", "--n", "4")[0] == 0
    assert (tmp_path / "ubern_4.jsonl").exists()
