"""Command-line interface: subcommands, exit codes, output contracts."""

import json

import pytest

from conflictsched.cli import cli


def run(argv, capsys):
    status = cli(argv)
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_generate_schedule_validate_pipeline(tmp_path, capsys):
    wpath = tmp_path / "w.json"
    spath = tmp_path / "s.json"
    status, out, _ = run(
        ["generate", "--n", "60", "--rate", "0.3", "--seed", "1", "--cores", "4",
         "--out", str(wpath)],
        capsys,
    )
    assert status == 0
    assert wpath.exists()

    status, out, _ = run(
        ["schedule", "--workload", str(wpath), "--out", str(spath)], capsys
    )
    assert status == 0
    assert "makespan=" in out
    payload = json.loads(spath.read_text())
    assert set(payload) == {"assignments", "horizonMs", "scheduleMakespanMs", "wallTimeMs"}
    assert set(payload["assignments"][0]) == {"processId", "coreId", "startMs", "finishMs"}

    status, out, _ = run(
        ["validate", "--workload", str(wpath), "--schedule", str(spath)], capsys
    )
    assert status == 0
    assert "valid" in out


def test_validate_exits_one_on_violation(tmp_path, capsys):
    wpath = tmp_path / "w.json"
    spath = tmp_path / "s.json"
    run(["generate", "--n", "10", "--rate", "0.5", "--seed", "2", "--out", str(wpath)], capsys)
    run(["schedule", "--workload", str(wpath), "--out", str(spath)], capsys)
    payload = json.loads(spath.read_text())
    payload["assignments"][0]["startMs"] += 1  # breaks finish = start + time
    spath.write_text(json.dumps(payload))
    status, out, _ = run(["validate", "--workload", str(wpath), "--schedule", str(spath)], capsys)
    assert status == 1
    assert "COMPLETENESS" in out or "C1" in out or "C2" in out


def test_bound_full_conflict_boundary(capsys):
    status, out, _ = run(["bound", "--n", "50", "--mean-t", "8", "--m", "4", "--cr", "1"], capsys)
    assert status == 0
    assert "UB-chromatic: 400 ms" in out
    assert "UB-closed: 400 ms" in out


def test_bound_zero_conflict_boundary(capsys):
    status, out, _ = run(["bound", "--n", "100", "--mean-t", "8", "--m", "8", "--cr", "0"], capsys)
    assert status == 0
    assert "UB-chromatic: 104 ms" in out


def test_bench_deterministic_modulo_wall(tmp_path, capsys):
    args = ["bench", "--n-list", "20", "--rates", "0.2", "--seeds", "1",
            "--cores", "1,2", "--sorts", "MCDF"]
    status, _, _ = run(args + ["--out-dir", str(tmp_path / "a")], capsys)
    assert status == 0
    status, _, _ = run(args + ["--out-dir", str(tmp_path / "b")], capsys)
    assert status == 0

    def strip_wall(text):
        header, *rows = text.strip().split("\n")
        names = header.split(",")
        keep = [i for i, c in enumerate(names) if not c.startswith("wall_")]
        return [",".join(line.split(",")[i] for i in keep) for line in [header] + rows]

    a = strip_wall((tmp_path / "a" / "results.csv").read_text())
    b = strip_wall((tmp_path / "b" / "results.csv").read_text())
    assert a == b


def test_oracle_subcommand(tmp_path, capsys):
    wpath = tmp_path / "w.json"
    run(["generate", "--n", "6", "--rate", "0.4", "--seed", "3", "--cores", "2",
         "--out", str(wpath)], capsys)
    status, out, _ = run(["oracle", "--workload", str(wpath)], capsys)
    assert status == 0
    payload = json.loads(out)
    assert payload["optimal"] is True
    assert payload["optimalMakespanMs"] >= 1


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc_info:
        cli(["schedule"])  # missing required --workload
    assert exc_info.value.code == 2


def test_missing_file_exits_two(tmp_path, capsys):
    status, _, err = run(["schedule", "--workload", str(tmp_path / "nope.json")], capsys)
    assert status == 2
    assert "error:" in err


def test_generate_rejects_bad_rate(tmp_path, capsys):
    status, _, err = run(
        ["generate", "--n", "5", "--rate", "2.0", "--seed", "1", "--out", str(tmp_path / "w.json")],
        capsys,
    )
    assert status == 2
    assert "conflictRate" in err
