import json
import subprocess
import sys

from sweepslide.cli import main
from sweepslide.scenario import REPORT_COLUMNS


def test_builtin_floor_csv_to_stdout(capsys):
    assert main(["builtin", "floor", "--frames", "2"]) == 0
    out = capsys.readouterr()
    lines = out.out.strip().split("\n")
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert len(lines) == 3
    assert "[floor/improved]" in out.err


def test_builtin_both_writes_two_files(tmp_path, capsys):
    out_path = tmp_path / "corner.csv"
    rc = main(["builtin", "obtuse_corner", "--frames", "3", "--algo", "both",
               "--out", str(out_path)])
    assert rc == 0
    improved = tmp_path / "corner.improved.csv"
    legacy = tmp_path / "corner.legacy.csv"
    assert improved.exists() and legacy.exists()
    assert improved.read_text().startswith(",".join(REPORT_COLUMNS))
    captured = capsys.readouterr()
    assert "[obtuse_corner/improved]" in captured.out
    assert "[obtuse_corner/legacy]" in captured.out


def test_builtin_json_format(capsys):
    assert main(["builtin", "floor", "--frames", "2", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 2
    assert set(rows[0]) == set(REPORT_COLUMNS)


def test_run_scenario_file(tmp_path, capsys):
    scenario = {
        "name": "drop",
        "mesh": {"builtin": "floor"},
        "start": [0.0, 0.0, 3.0],
        "velocity": [0.0, 0.0, -3.0],
        "frames": 2,
    }
    path = tmp_path / "drop.json"
    path.write_text(json.dumps(scenario))
    out_path = tmp_path / "drop.csv"
    assert main(["run", str(path), "--out", str(out_path)]) == 0
    assert out_path.read_text().startswith(",".join(REPORT_COLUMNS))
    assert "[drop/improved]" in capsys.readouterr().out


def test_run_output_deterministic(tmp_path):
    scenario = {
        "name": "soup",
        "mesh": {"builtin": "random_soup", "n": 30, "seed": 9},
        "start": [0.0, 0.0, 14.0],
        "velocity": [0.3, -0.2, -2.0],
        "frames": 5,
    }
    path = tmp_path / "soup.json"
    path.write_text(json.dumps(scenario))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["run", str(path), "--out", str(a)]) == 0
    assert main(["run", str(path), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_unknown_builtin_errors(capsys):
    assert main(["builtin", "donut"]) == 2
    assert "no builtin scenario" in capsys.readouterr().err


def test_missing_scenario_file_errors(capsys):
    assert main(["run", "/does/not/exist.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_subcommand_passes(capsys):
    # reduced trial count: the full corpus runs in test_acceptance
    assert main(["verify", "--trials", "300"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 10
    assert "FAIL" not in out
    assert "10/10 checks passed" in out


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "sweepslide", "builtin", "floor", "--frames", "1"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith(",".join(REPORT_COLUMNS))
