"""Render sandwich CSVs into figures.

Three kinds:

* ``pressure_vs_t``: lower bound, per-n upper approximants, and the target
  curve over t (the sandwich picture);
* ``gap_vs_n``: upper - lower against the block length, per t;
* ``support_lines``: the gamma-grid tangent lines with their intercepts
  marked on the vertical axis (reads the ``intercept,slope`` schema of
  ``pressure-forge convex support``).

Rendering never mutates or reorders its input, and SVG output is
byte-idempotent (fixed hash salt, no embedded dates).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "report-plots"

import matplotlib.pyplot as plt


PRESSURE_COLUMNS = [
    "t",
    "n",
    "upper",
    "lower",
    "target",
    "gap",
    "gamma_grid_spacing",
    "pruned_mass_bound",
]
SUPPORT_COLUMNS = ["intercept", "slope"]

KINDS = ("pressure_vs_t", "gap_vs_n", "support_lines")


class SchemaError(Exception):
    """The input CSV does not carry the expected columns or rows."""


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    kind: str
    out_path: str
    xlabel: Optional[str] = None
    ylabel: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}")


def _read_rows(path: str, columns: Sequence[str]) -> List[Dict[str, float]]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [l for l in fh if not l.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None:
        raise SchemaError(f"{path}: no header row (row count 0)")
    missing = [c for c in columns if c not in reader.fieldnames]
    if missing:
        raise SchemaError(f"{path}: missing columns {missing}")
    rows = []
    for raw in reader:
        try:
            rows.append({c: float(raw[c]) for c in columns})
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{path}: unparseable row {raw}: {exc}")
    if not rows:
        raise SchemaError(f"{path}: no data rows (row count 0)")
    return rows


def _save(fig, out_path: str) -> None:
    # no embedded creation date: vector output must be byte-stable
    fig.savefig(out_path, metadata={"Date": None} if out_path.endswith(".svg") else None)
    plt.close(fig)


def _render_pressure_vs_t(spec: FigureSpec) -> None:
    rows = _read_rows(spec.csv_path, PRESSURE_COLUMNS)
    ts = sorted({r["t"] for r in rows})
    ns = sorted({int(r["n"]) for r in rows})
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for n in ns:
        sub = sorted((r for r in rows if int(r["n"]) == n), key=lambda r: r["t"])
        ax.plot(
            [r["t"] for r in sub],
            [r["upper"] for r in sub],
            marker="o",
            linewidth=1.0,
            label=f"upper, n={n}",
        )
    by_t = {t: next(r for r in rows if r["t"] == t) for t in ts}
    ax.plot(ts, [by_t[t]["lower"] for t in ts], marker="s", color="black",
            linewidth=1.2, label="lower bound")
    ax.plot(ts, [by_t[t]["target"] for t in ts], linestyle="--", color="gray",
            linewidth=1.6, label="target f(t)")
    ax.set_xlabel(spec.xlabel or "t")
    ax.set_ylabel(spec.ylabel or "pressure")
    ax.legend(fontsize=8)
    ax.set_title("pressure sandwich")
    _save(fig, spec.out_path)


def _render_gap_vs_n(spec: FigureSpec) -> None:
    rows = _read_rows(spec.csv_path, PRESSURE_COLUMNS)
    ts = sorted({r["t"] for r in rows})
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for t in ts:
        sub = sorted((r for r in rows if r["t"] == t), key=lambda r: r["n"])
        ax.plot(
            [int(r["n"]) for r in sub],
            [r["gap"] for r in sub],
            marker="o",
            label=f"t = {t:g}",
        )
    ax.set_xlabel(spec.xlabel or "block length n")
    ax.set_ylabel(spec.ylabel or "upper - lower")
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    ax.set_title("sandwich gap vs block length")
    _save(fig, spec.out_path)


def _render_support_lines(spec: FigureSpec) -> None:
    rows = _read_rows(spec.csv_path, SUPPORT_COLUMNS)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    t_hi = 4.0
    for r in rows:
        h, v = r["intercept"], r["slope"]
        ax.plot([0, t_hi], [h, h + v * t_hi], color="steelblue", alpha=0.45,
                linewidth=0.8)
    intercepts = [r["intercept"] for r in rows]
    ax.plot([0] * len(intercepts), intercepts, "k+", markersize=6)
    env_ts = [0.05 * k for k in range(int(t_hi / 0.05) + 1)]
    env = [max(r["intercept"] + r["slope"] * t for r in rows) for t in env_ts]
    ax.plot(env_ts, env, color="crimson", linewidth=1.6, label="envelope")
    ax.set_xlabel(spec.xlabel or "t")
    ax.set_ylabel(spec.ylabel or "value")
    ax.set_title("support lines and their intercepts")
    ax.legend(fontsize=8)
    _save(fig, spec.out_path)


_RENDERERS = {
    "pressure_vs_t": _render_pressure_vs_t,
    "gap_vs_n": _render_gap_vs_n,
    "support_lines": _render_support_lines,
}


def render(spec: FigureSpec) -> str:
    """Render the figure; returns the output path."""
    _RENDERERS[spec.kind](spec)
    return spec.out_path
