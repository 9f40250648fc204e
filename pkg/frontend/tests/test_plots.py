"""Structural tests for the summary-CSV chart renderer."""
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))
import plots  # noqa: E402

SCRIPT = Path(__file__).resolve().parents[1] / "plots.py"

FIXTURE = """game,rational,k,model,gamma,mean,std,stderr,count
kuhn,1,1,independent,0.0,0.333,0.0,0.0,10
kuhn,1,1,independent,0.5,0.41,0.12,0.038,10
kuhn,1,1,independent,1.0,0.47,0.2,0.063,10
"""

TWO_PANEL = FIXTURE + """kuhn,1,2,independent,0.0,-0.055,0.0,0.0,10
kj,2,1,cumulative,0.0,0.1,0.05,0.016,10
"""


@pytest.fixture
def fixture_csv(tmp_path):
    path = tmp_path / "summary.csv"
    path.write_text(FIXTURE)
    return path


def test_render_three_point_fixture(fixture_csv, tmp_path):
    outdir = tmp_path / "out"
    written = plots.render(plots.read_summary(str(fixture_csv)), str(outdir))
    assert [p.name for p in written] == ["kuhn_r1_independent.svg"]
    svg = written[0].read_text()
    # One curve with three data points: matplotlib draws one marker-defs use
    # per point plus error-bar cap uses.
    assert svg.startswith("<?xml")
    assert svg.count("<use") >= 3
    assert "legend" in svg


def test_render_is_deterministic(fixture_csv, tmp_path):
    rows = plots.read_summary(str(fixture_csv))
    a = plots.render(rows, str(tmp_path / "a"))[0].read_bytes()
    b = plots.render(rows, str(tmp_path / "b"))[0].read_bytes()
    assert a == b


def test_panel_per_group(tmp_path):
    path = tmp_path / "summary.csv"
    path.write_text(TWO_PANEL)
    written = plots.render(plots.read_summary(str(path)), str(tmp_path / "o"))
    assert sorted(p.name for p in written) == [
        "kj_r2_cumulative.svg", "kuhn_r1_independent.svg"]


def test_errorbar_source_changes_output(fixture_csv, tmp_path):
    rows = plots.read_summary(str(fixture_csv))
    std = plots.render(rows, str(tmp_path / "s"), "std")[0].read_bytes()
    stderr = plots.render(rows, str(tmp_path / "e"), "stderr")[0].read_bytes()
    assert std != stderr


def test_cli_renders(fixture_csv, tmp_path):
    outdir = tmp_path / "cli_out"
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--summary", str(fixture_csv),
         "--outdir", str(outdir)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (outdir / "kuhn_r1_independent.svg").exists()
    assert "kuhn_r1_independent.svg" in proc.stdout


def test_empty_csv_exits_nonzero(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("game,rational,k,model,gamma,mean,std,stderr,count\n")
    outdir = tmp_path / "never"
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--summary", str(path),
         "--outdir", str(outdir)], capture_output=True, text=True)
    assert proc.returncode != 0
    assert "no data rows" in proc.stderr
    assert not outdir.exists()


def test_missing_columns_exit_nonzero(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("game,gamma,mean\nkuhn,0.0,0.1\n")
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--summary", str(path),
         "--outdir", str(tmp_path / "o")], capture_output=True, text=True)
    assert proc.returncode != 0
    assert "expected header" in proc.stderr


def test_single_point_plot(tmp_path):
    path = tmp_path / "one.csv"
    path.write_text("game,rational,k,model,gamma,mean,std,stderr,count\n"
                    "kuhn,1,1,independent,0.0,0.333,0.0,0.0,1\n")
    written = plots.render(plots.read_summary(str(path)), str(tmp_path / "o"))
    assert len(written) == 1
    assert written[0].stat().st_size > 0
