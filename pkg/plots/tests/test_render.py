"""Rendering of checked-in simulator CSV fixtures."""

import csv
import os

import pytest

from iqplots.cli import main
from iqplots.render import PlotSpec, SchemaError, render

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
BER_CSV = os.path.join(FIXTURES, "ber_three_schemes.csv")
SURFACE_CSV = os.path.join(FIXTURES, "loss_surface.csv")


def _schemes(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    return {row["scheme"] for row in rows}, rows


def test_ber_curves_series_count_matches_schemes(tmp_path):
    out = tmp_path / "ber.png"
    result = render(PlotSpec(csv_paths=(BER_CSV,), kind="ber_curves", output=str(out)))
    schemes, rows = _schemes(BER_CSV)
    assert out.exists() and out.stat().st_size > 0
    assert result.series == len(schemes) == 3
    assert result.points == len(rows)


def test_compensated_tracks_ideal_at_low_snr():
    # Matched-seed fixture: the compensated curve stays close to the ideal
    # receiver's in the low-SNR half of the sweep.
    _, rows = _schemes(BER_CSV)
    by = {}
    for row in rows:
        by[(row["scheme"], float(row["snr_db"]))] = float(row["ber"])
    for snr in (0.0, 2.0, 4.0, 6.0, 8.0, 10.0):
        assert by[("td_ls_fd_ge", snr)] <= 1.3 * by[("ideal", snr)]


def test_loss_surface_renders_with_zero_minimum(tmp_path):
    out = tmp_path / "surface.png"
    result = render(PlotSpec(csv_paths=(SURFACE_CSV,), kind="loss_surface", output=str(out)))
    assert out.exists() and out.stat().st_size > 0
    assert result.value_min == pytest.approx(0.0, abs=1e-12)


def test_zero_ber_points_get_floor_marker(tmp_path):
    path = tmp_path / "zero.csv"
    header = "scheme,snr_db,theta_deg,alpha_db,n,cp,frames,bits,errors,ber,erasures,seed"
    path.write_text(
        header + "\n"
        + "ideal,10,20,4,128,16,5,1000,10,0.01,0,1\n"
        + "ideal,20,20,4,128,16,5,1000,0,0,0,1\n"
    )
    out = tmp_path / "zero.png"
    result = render(PlotSpec(csv_paths=(str(path),), kind="ber_curves", output=str(out)))
    assert out.exists()
    assert result.series == 1
    assert result.value_min == 0.0


def test_rendering_is_deterministic(tmp_path):
    outs = []
    for name in ("a.png", "b.png"):
        out = tmp_path / name
        render(PlotSpec(csv_paths=(BER_CSV,), kind="ber_curves", output=str(out)))
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_schema_mismatch_names_columns(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("scheme,snr,ber\nideal,10,0.1\n")
    with pytest.raises(SchemaError, match="snr_db"):
        render(PlotSpec(csv_paths=(str(path),), kind="ber_curves", output=str(tmp_path / "x.png")))


def test_missing_file_raises():
    with pytest.raises(FileNotFoundError):
        render(PlotSpec(csv_paths=("/nonexistent.csv",), kind="ber_curves", output="x.png"))


def test_cli_renders_both_kinds(tmp_path, capsys):
    assert main(["ber_curves", BER_CSV, "--out", str(tmp_path / "c.png")]) == 0
    assert "3 series" in capsys.readouterr().out
    assert main(["loss_surface", SURFACE_CSV, "--out", str(tmp_path / "s.png")]) == 0


def test_cli_schema_mismatch_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    code = main(["ber_curves", str(bad), "--out", str(tmp_path / "x.png")])
    assert code == 4
    assert "column mismatch" in capsys.readouterr().err


def test_cli_missing_file_exit_code(tmp_path, capsys):
    code = main(["ber_curves", str(tmp_path / "none.csv"), "--out", str(tmp_path / "x.png")])
    assert code == 2
