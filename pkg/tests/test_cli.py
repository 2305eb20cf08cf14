import json
import subprocess
import sys

import pytest

from simparr.cli import main


@pytest.fixture
def r1_file(tmp_path):
    path = tmp_path / "r1.txt"
    assert main(["gen", "R1", "3", "-o", str(path)]) == 0
    return path


def test_gen_then_analyze(r1_file, capsys):
    assert main(["analyze", str(r1_file)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert (report["V"], report["E"], report["F"]) == (7, 18, 12)
    assert report["family"] == "R1(3)"


def test_analyze_with_interval_backend_and_figure(r1_file, tmp_path, capsys):
    fig = tmp_path / "r1.png"
    assert main(["analyze", str(r1_file), "--backend", "interval", "--figure", str(fig)]) == 0
    assert json.loads(capsys.readouterr().out)["family"] == "R1(3)"
    assert fig.stat().st_size > 0


def test_render_svg(r1_file, tmp_path):
    out, fig = tmp_path / "r1.svg", tmp_path / "r1_plot.svg"
    assert main(["render", str(r1_file), "--chart", "0", "-o", str(out), "--figure", str(fig)]) == 0
    assert out.read_text().count("<line ") == 5
    assert fig.exists()


def test_verify_writes_report_and_figure(tmp_path):
    out, fig = tmp_path / "gb.json", tmp_path / "gb.png"
    assert main(["verify", "gauss-bonnet", "m=3..6", "-o", str(out), "--figure", str(fig)]) == 0
    report = json.loads(out.read_text())
    assert report["suite"] == "gauss-bonnet" and report["failures"] == []
    assert fig.exists()


def test_verify_failure_exits_one(capsys):
    # alignment with m = 8 includes triples through a point at infinity
    assert main(["verify", "alignment", "m=8"]) == 1
    assert json.loads(capsys.readouterr().out)["failures"]


def test_dual_reports_tangency(tmp_path, capsys):
    arr = tmp_path / "coset.txt"
    assert main(["dual", "12", "--cubic", "a=-1", "b=1", "--arrangement", str(arr)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["k"] == 12 and report["n"] == 12
    assert main(["analyze", str(arr)]) == 0


def test_dual_rejects_singular_cubic(capsys):
    assert main(["dual", "5", "--cubic", "a=0", "b=0"]) == 1
    assert "error" in capsys.readouterr().err


def test_input_errors_exit_one(tmp_path):
    bad = tmp_path / "dup.txt"
    bad.write_text("1 0 0\n0 1 0\n2 0 0\n")
    assert main(["analyze", str(bad)]) == 1
    assert main(["gen", "R2", "3"]) == 1
    assert main(["analyze", str(tmp_path / "missing.txt")]) == 1
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert main(["render", str(empty)]) == 1


def test_precision_cap_makes_coset_undecided():
    assert main(["dual", "24", "--cubic", "a=-1", "b=1", "--precision-cap", "53"]) == 2


def test_bad_seed_is_a_usage_error():
    with pytest.raises(SystemExit):
        main(["verify", "stars", "--seed", "-1"])


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "simparr.cli", "gen", "R0", "3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("# simparr arrangement")
