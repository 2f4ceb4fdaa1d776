"""Command-line interface behaviour and exit codes."""

import csv

import pytest

from iqofdm.cli import main

FAST_CFG = """
# small link for quick runs
n = 32
cp_len = 8
pdp_delays_us = 0,0.5,1.5
pdp_powers_db = 0,-3,-6
frames = 2
n_data_symbols = 3
"""


@pytest.fixture
def fast_config(tmp_path):
    path = tmp_path / "link.cfg"
    path.write_text(FAST_CFG)
    return str(path)


def test_ber_sweep_writes_csv(fast_config, tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main(
        [
            "ber-sweep",
            "--config", fast_config,
            "--snr", "0:10:20",
            "--scheme", "td_ls_fd_ge",
            "--jobs", "1",
            "--output", str(out),
        ]
    )
    assert code == 0
    with open(out) as fh:
        rows = [r for r in csv.reader(l for l in fh if not l.startswith("#"))]
    assert len(rows) == 1 + 3  # header + one row per grid point
    assert rows[0][0] == "scheme"
    assert "wrote" in capsys.readouterr().out


def test_missing_config_exits_2(tmp_path, capsys):
    code = main(["ber-sweep", "--config", str(tmp_path / "nope.cfg")])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_invalid_parameter_exits_3(fast_config, capsys):
    # Prefix shorter than the channel memory of the configured profile.
    code = main(["ber-sweep", "--config", fast_config, "--cp", "2", "--jobs", "1"])
    assert code == 3
    assert "prefix" in capsys.readouterr().err


def test_unknown_subcommand_is_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code != 0


def test_bad_range_exits_3(fast_config, capsys):
    code = main(["ber-sweep", "--config", fast_config, "--snr", "1:0:5", "--jobs", "1"])
    assert code == 3


def test_snr_loss_surface_grid_count(tmp_path, capsys):
    out = tmp_path / "surface.csv"
    code = main(
        ["snr-loss-surface", "--theta", "0:1:30", "--alpha=-6:0.5:6", "--output", str(out)]
    )
    assert code == 0
    rows = out.read_text().splitlines()
    assert len(rows) == 1 + 31 * 25  # header + 775 cells


def test_mse_check_runs(fast_config, tmp_path, capsys):
    out = tmp_path / "mse.csv"
    code = main(
        [
            "mse-check",
            "--config", fast_config,
            "--snr", "10",
            "--trials", "1000",
            "--pilot-power-rule", "unit",
            "--output", str(out),
        ]
    )
    assert code == 0
    assert out.exists()
    assert "predicted" in capsys.readouterr().out


def test_output_dir_env_var(fast_config, tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("IQOFDM_OUTPUT_DIR", str(tmp_path))
    code = main(
        ["ber-sweep", "--config", fast_config, "--snr", "10", "--jobs", "1"]
    )
    assert code == 0
    assert (tmp_path / "ber_sweep.csv").exists()


def test_demo_runs_default_link_quickly(tmp_path, capsys):
    import time

    out = tmp_path / "demo.csv"
    t0 = time.perf_counter()
    code = main(["demo", "--jobs", "1", "--output", str(out)])
    elapsed = time.perf_counter() - t0
    assert code == 0
    assert elapsed < 60.0
    assert out.exists()
    text = capsys.readouterr().out
    for scheme in ("ideal", "none", "td_ls_fd_ge"):
        assert scheme in text
