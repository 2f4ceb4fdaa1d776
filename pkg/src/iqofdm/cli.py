"""Command-line front end for the simulation harness.

Subcommands: ``ber-sweep``, ``mse-check``, ``snr-loss-surface`` and
``demo``.  Values come from an optional flat ``key = value`` config file;
flags override the file.  Numeric grids accept ``start:step:stop``
(inclusive when the stop lies on the grid), comma lists, or single values.
"""

from __future__ import annotations

import argparse
import os
import sys

from .harness import (
    ConfigError,
    SCHEMES,
    SimConfig,
    default_output_dir,
    parse_config_file,
    parse_range,
    run_ber_sweep,
    run_mse_check,
    run_snr_loss_surface,
    write_ber_csv,
    write_surface_csv,
)

EXIT_OK = 0
EXIT_MISSING_CONFIG = 2
EXIT_BAD_PARAMETER = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--output", help="output CSV path (default: per-command name)")
    parser.add_argument("--seed", type=int, dest="master_seed", help="master random seed")
    parser.add_argument("--jobs", type=int, help="worker processes (default: all cores)")


def _add_link_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--snr", help="SNR grid in dB (start:step:stop, list, or value)")
    parser.add_argument("--scheme", choices=SCHEMES)
    parser.add_argument("--frames", type=int)
    parser.add_argument("--theta-deg", type=float, dest="theta_deg")
    parser.add_argument("--alpha-db", type=float, dest="alpha_db")
    parser.add_argument("--n", type=int)
    parser.add_argument("--cp", type=int, dest="cp_len")
    parser.add_argument("--n-t", type=int, dest="n_t")
    parser.add_argument("--data-symbols", type=int, dest="n_data_symbols")
    parser.add_argument("--pilot-power-rule", choices=("paper", "unit"), dest="pilot_power_rule")
    parser.add_argument("--eta-rule", choices=("sqrt", "literal"), dest="eta_rule")
    parser.add_argument("--genie", action="store_true", default=None)
    parser.add_argument("--early-stop", action="store_true", default=None, dest="early_stop")


_CONFIG_KEYS = (
    "master_seed",
    "scheme",
    "frames",
    "theta_deg",
    "alpha_db",
    "n",
    "cp_len",
    "n_t",
    "n_data_symbols",
    "pilot_power_rule",
    "eta_rule",
    "genie",
    "early_stop",
)


def _build_config(args, **extra) -> SimConfig:
    mapping = parse_config_file(args.config) if args.config else {}
    overrides = dict(extra)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "snr", None) is not None:
        overrides["snr_db"] = parse_range(args.snr)
    return SimConfig.from_mapping(mapping, **overrides)


def _output_path(args, default_name: str) -> str:
    if args.output:
        return args.output
    return os.path.join(default_output_dir(), default_name)


def _cmd_ber_sweep(args) -> int:
    cfg = _build_config(args)
    records = run_ber_sweep(cfg, jobs=args.jobs)
    path = _output_path(args, "ber_sweep.csv")
    write_ber_csv(path, records, cfg)
    for r in records:
        print(
            f"{r.scheme} snr={r.snr_db:g} dB  ber={r.ber:.3e}  "
            f"bits={r.bits}  errors={r.errors}  erasures={r.erasures}  "
            f"({r.wall_time:.2f}s)"
        )
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_mse_check(args) -> int:
    cfg = _build_config(args)
    results = run_mse_check(cfg, trials=args.trials)
    path = _output_path(args, "mse_check.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("gamma_db,trials,measured_mu,measured_nu,predicted,ratio_mu,ratio_nu\n")
        for r in results:
            fh.write(
                f"{r.gamma_db:g},{r.trials},{r.measured_mu:.6e},{r.measured_nu:.6e},"
                f"{r.predicted:.6e},{r.measured_mu / r.predicted:.4f},"
                f"{r.measured_nu / r.predicted:.4f}\n"
            )
    for r in results:
        print(
            f"gamma={r.gamma_db:g} dB  measured mu/nu = {r.measured_mu:.4e} / "
            f"{r.measured_nu:.4e}  predicted = {r.predicted:.4e}"
        )
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_snr_loss_surface(args) -> int:
    thetas = parse_range(args.theta)
    alphas = parse_range(args.alpha)
    rows = run_snr_loss_surface(thetas, alphas)
    path = _output_path(args, "snr_loss_surface.csv")
    write_surface_csv(path, rows)
    null_cells = sum(1 for _, _, loss in rows if loss is None)
    print(f"wrote {path}: {len(rows)} cells ({null_cells} degenerate)")
    return EXIT_OK


def _cmd_demo(args) -> int:
    """Small three-point comparison at the default link parameters."""
    base = dict(snr_db=(5.0, 15.0, 25.0), frames=40, n_data_symbols=18)
    path = _output_path(args, "demo_ber.csv")
    all_records = []
    cfg = None
    for scheme in ("ideal", "none", "td_ls_fd_ge"):
        cfg = SimConfig(scheme=scheme, **base)
        records = run_ber_sweep(cfg, jobs=args.jobs)
        all_records.extend(records)
        for r in records:
            print(f"{r.scheme:12s} snr={r.snr_db:5.1f} dB  ber={r.ber:.3e}  bits={r.bits}")
    write_ber_csv(path, all_records, cfg)
    print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iqofdm",
        description="OFDM link simulator with receiver IQ-imbalance compensation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ber-sweep", help="Monte-Carlo BER over an SNR grid")
    _add_common(p)
    _add_link_flags(p)
    p.set_defaults(func=_cmd_ber_sweep)

    p = sub.add_parser("mse-check", help="measured vs predicted estimation MSE")
    _add_common(p)
    _add_link_flags(p)
    p.add_argument("--trials", type=int, default=10_000)
    p.set_defaults(func=_cmd_mse_check)

    p = sub.add_parser("snr-loss-surface", help="closed-form loss over a (theta, alpha) grid")
    _add_common(p)
    p.add_argument("--theta", default="0:1:30", help="phase grid in degrees")
    p.add_argument("--alpha", default="-6:0.5:6", help="gain grid in dB")
    p.set_defaults(func=_cmd_snr_loss_surface)

    p = sub.add_parser("demo", help="quick three-SNR comparison at default parameters")
    _add_common(p)
    p.set_defaults(func=_cmd_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING_CONFIG
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMETER


if __name__ == "__main__":
    sys.exit(main())
