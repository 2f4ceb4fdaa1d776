"""Render simulator CSV output to image files.

Two figure kinds: ``ber_curves`` (semilog-y BER versus SNR, one series per
scheme) and ``loss_surface`` (heatmap of SNR loss over a phase/gain
imbalance grid).  Values are drawn verbatim from the CSV files; nothing is
recomputed here.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["PlotSpec", "RenderResult", "SchemaError", "render"]

# Fixed hash salt so SVG output is reproducible byte for byte.
matplotlib.rcParams["svg.hashsalt"] = "iqplots"

BER_COLUMNS = (
    "scheme",
    "snr_db",
    "theta_deg",
    "alpha_db",
    "n",
    "cp",
    "frames",
    "bits",
    "errors",
    "ber",
    "erasures",
    "seed",
)
SURFACE_COLUMNS = ("theta_deg", "alpha_db", "loss_db")

KINDS = ("ber_curves", "loss_surface")


class SchemaError(ValueError):
    """CSV columns do not match the simulator contract."""


@dataclass(frozen=True)
class PlotSpec:
    """What to render: input CSVs, figure kind, output image, legend labels."""

    csv_paths: tuple[str, ...]
    kind: str
    output: str
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "csv_paths", tuple(self.csv_paths))
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.kind not in KINDS:
            raise ValueError(f"figure kind must be one of {KINDS}, got {self.kind!r}")
        if not self.csv_paths:
            raise ValueError("at least one input CSV is required")


@dataclass(frozen=True)
class RenderResult:
    """Summary of a finished figure: where it went and what it contains."""

    output: str
    series: int
    points: int
    value_min: float | None = None
    value_max: float | None = None


def _read_rows(path: str, expected: tuple[str, ...]) -> list[dict]:
    if not os.path.exists(path):
        raise FileNotFoundError(f"input CSV not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        data_lines = [line for line in fh if not line.startswith("#")]
    reader = csv.reader(data_lines)
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise SchemaError(f"{path}: empty file, expected columns {list(expected)}") from None
    if header != expected:
        missing = [c for c in expected if c not in header]
        extra = [c for c in header if c not in expected]
        raise SchemaError(
            f"{path}: column mismatch (missing {missing or 'none'}, "
            f"unexpected {extra or 'none'}); expected exactly {list(expected)}"
        )
    return [dict(zip(header, row)) for row in reader if row]


def _render_ber_curves(spec: PlotSpec) -> RenderResult:
    rows = []
    for path in spec.csv_paths:
        rows.extend(_read_rows(path, BER_COLUMNS))
    if not rows:
        raise SchemaError("no data rows in input CSVs")

    series: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        series.setdefault(row["scheme"], []).append((float(row["snr_db"]), float(row["ber"])))

    positive = [ber for pts in series.values() for _, ber in pts if ber > 0]
    # Zero-BER points sit on a visible floor marker instead of vanishing.
    floor = min(positive) / 3.0 if positive else 1e-7

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    labels = dict(zip(sorted(series), spec.labels))
    for scheme in sorted(series):
        pts = sorted(series[scheme])
        snr = np.array([s for s, _ in pts])
        ber = np.array([b for _, b in pts])
        shown = np.where(ber > 0, ber, floor)
        ax.semilogy(snr, shown, marker="o", label=labels.get(scheme, scheme))
        zero = ber == 0
        if zero.any():
            ax.semilogy(snr[zero], shown[zero], linestyle="none", marker="v")
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("BER")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    values = [b for pts in series.values() for _, b in pts]
    return RenderResult(
        output=spec.output,
        series=len(series),
        points=len(rows),
        value_min=min(values),
        value_max=max(values),
    )


def _render_loss_surface(spec: PlotSpec) -> RenderResult:
    rows = []
    for path in spec.csv_paths:
        rows.extend(_read_rows(path, SURFACE_COLUMNS))
    if not rows:
        raise SchemaError("no data rows in input CSVs")

    thetas = sorted({float(r["theta_deg"]) for r in rows})
    alphas = sorted({float(r["alpha_db"]) for r in rows})
    grid = np.full((len(alphas), len(thetas)), np.nan)
    ti = {t: i for i, t in enumerate(thetas)}
    ai = {a: i for i, a in enumerate(alphas)}
    for r in rows:
        loss = r["loss_db"]
        if loss != "":
            grid[ai[float(r["alpha_db"])], ti[float(r["theta_deg"])]] = float(loss)

    finite = grid[np.isfinite(grid)]
    if finite.size == 0:
        raise SchemaError("loss surface has no finite cells")
    vmin, vmax = float(finite.min()), float(finite.max())

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    mesh = ax.pcolormesh(thetas, alphas, grid, shading="nearest", vmin=vmin, vmax=vmax)
    fig.colorbar(mesh, ax=ax, label="SNR loss (dB)")
    ax.set_xlabel("phase imbalance (deg)")
    ax.set_ylabel("gain imbalance (dB)")
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return RenderResult(
        output=spec.output,
        series=1,
        points=len(rows),
        value_min=vmin,
        value_max=vmax,
    )


def render(spec: PlotSpec) -> RenderResult:
    """Render the figure described by ``spec``; returns a content summary."""
    if spec.kind == "ber_curves":
        return _render_ber_curves(spec)
    return _render_loss_surface(spec)
