"""Render plot specs from freqconv CSV outputs into image files.

Pure with respect to its inputs: the same CSVs produce byte-identical images
(PNG metadata is stripped).  Axis ranges are always derived from the data so
no point is silently clipped.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .specs import SPECS, PlotSpec


class SchemaError(ValueError):
    """Input CSV is missing a column the spec refers to."""


def load_columns(path: Path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path.name}: empty file, no header") from None
        rows = [row for row in reader if row]
    data = {}
    for j, name in enumerate(header):
        data[name] = np.array([float(row[j]) for row in rows])
    return data


def _require(data: dict[str, np.ndarray], column: str, filename: str) -> np.ndarray:
    if column not in data:
        raise SchemaError(f"column {column!r} missing from {filename}")
    return data[column]


def _pad(lo: float, hi: float) -> tuple[float, float]:
    if not np.isfinite(lo) or not np.isfinite(hi):
        return 0.0, 1.0
    span = hi - lo
    margin = 0.05 * span if span > 0 else max(0.05 * abs(hi), 1e-3)
    return lo - margin, hi + margin


def _set_limits(ax, xs: list[np.ndarray], ys: list[np.ndarray]) -> None:
    xs = [x for x in xs if len(x)]
    ys = [y for y in ys if len(y)]
    if not xs or not ys:
        ax.set_xlim(0.0, 1.0)
        ax.set_ylim(0.0, 1.0)
        return
    ax.set_xlim(*_pad(min(x.min() for x in xs), max(x.max() for x in xs)))
    ax.set_ylim(*_pad(min(y.min() for y in ys), max(y.max() for y in ys)))


def _levels_panel(spec: PlotSpec, data: dict[str, np.ndarray], filename: str, ax):
    omega = _require(data, "omega_q", filename)
    n_levels = len([c for c in data if c.startswith("E_")])
    if n_levels == 0:
        raise SchemaError(f"no E_* columns in {filename}")
    energies = np.column_stack(
        [_require(data, f"E_{k}", filename) for k in range(n_levels)]
    ) if len(omega) else np.zeros((0, n_levels))
    shown = min(spec.max_levels, n_levels)
    for k in range(shown):
        ax.plot(omega, energies[:, k], color="tab:blue", lw=1.0)
    _set_limits(ax, [omega], [energies[:, :shown].ravel()] if len(omega) else [])

    tracked = sorted(c for c in data if c.startswith("idx_"))
    if spec.inset and len(tracked) == 2 and len(omega) > 2:
        i1 = data[tracked[0]].astype(int)
        i2 = data[tracked[1]].astype(int)
        e1 = energies[np.arange(len(omega)), i1]
        e2 = energies[np.arange(len(omega)), i2]
        gap = np.abs(e1 - e2)
        k0 = int(np.argmin(gap))
        width = max(10.0 * gap[k0], 6.0 * (omega[1] - omega[0]))
        sel = np.abs(omega - omega[k0]) <= width
        if sel.sum() > 2:
            axins = ax.inset_axes([0.55, 0.08, 0.42, 0.38])
            for branch in (e1, e2):
                axins.plot(omega[sel], branch[sel], color="tab:red", lw=1.0)
            axins.set_xlim(*_pad(omega[sel].min(), omega[sel].max()))
            lo = min(e1[sel].min(), e2[sel].min())
            hi = max(e1[sel].max(), e2[sel].max())
            axins.set_ylim(*_pad(lo, hi))
            axins.tick_params(labelsize=6)
            ax.indicate_inset_zoom(axins, edgecolor="gray")


def _timeseries_panel(spec: PlotSpec, data: dict[str, np.ndarray],
                      filename: str, ax):
    t = _require(data, "t", filename)
    ys = []
    for style in spec.series:
        y = _require(data, style.column, filename)
        ax.plot(t, y, color=style.color, linestyle=style.linestyle,
                label=style.label, lw=1.2)
        ys.append(y)
    _set_limits(ax, [t], ys)
    if spec.drive_column is not None:
        drive = _require(data, spec.drive_column, filename)
        twin = ax.twinx()
        twin.plot(t, drive, color="tab:pink", lw=1.2, label="qubit frequency")
        if len(t):
            twin.set_xlim(*ax.get_xlim())
            twin.set_ylim(*_pad(drive.min(), drive.max()))
        twin.set_ylabel("omega_q / omega_q0")
    if len(t):
        ax.legend(loc="center right", fontsize=8)


def _coupling_panel(spec: PlotSpec, data: dict[str, np.ndarray],
                    filename: str, ax):
    g = _require(data, "g", filename)
    ys = []
    for style in spec.series:
        y = style.scale * _require(data, style.column, filename)
        if style.absolute:
            y = np.abs(y)
        if style.marker:
            ax.plot(g, y, linestyle="", marker=style.marker, color=style.color,
                    label=style.label, ms=4)
        else:
            ax.plot(g, y, linestyle=style.linestyle, color=style.color,
                    label=style.label, lw=1.4)
        ys.append(y)
    _set_limits(ax, [g], ys)
    if len(g):
        ax.legend(loc="upper left", fontsize=8)


def build_figure(spec: PlotSpec, in_dir: Path):
    """Build the matplotlib figure for a spec from CSVs in in_dir."""
    path = Path(in_dir) / spec.inputs[0]
    if not path.exists():
        raise FileNotFoundError(f"input CSV {path} not found")
    data = load_columns(path)

    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=150)
    if spec.kind == "levels":
        _levels_panel(spec, data, path.name, ax)
    elif spec.kind == "timeseries":
        _timeseries_panel(spec, data, path.name, ax)
    elif spec.kind == "coupling":
        _coupling_panel(spec, data, path.name, ax)
    else:
        raise ValueError(f"unknown plot kind {spec.kind!r}")
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.figure)
    fig.tight_layout()
    return fig


def render(spec: PlotSpec | str, in_dir: Path | str, out_path: Path | str) -> Path:
    """Render a spec (or spec name) to an image file; returns the path."""
    if isinstance(spec, str):
        if spec not in SPECS:
            raise KeyError(f"unknown plot spec {spec!r}, "
                           f"expected one of {sorted(SPECS)}")
        spec = SPECS[spec]
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig = build_figure(spec, Path(in_dir))
    try:
        metadata = {"Software": None} if out_path.suffix == ".png" else None
        fig.savefig(out_path, metadata=metadata)
    finally:
        plt.close(fig)
    return out_path
