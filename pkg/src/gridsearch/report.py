"""Delimited run summaries and the figures that go with them.

Column orders are fixed so that repeated runs diff cleanly. Every writer is
deterministic byte for byte given the same inputs.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .geometry import ceil_sqrt

RUNS_COLUMNS = [
    "label",
    "kind",
    "n_nodes",
    "n_edges",
    "side",
    "peak_total",
    "bound",
    "within_bound",
    "peak_guards",
    "guard_cap",
    "peak_cleaners",
    "peak_explorers",
    "explorer_cap",
    "phases",
    "steps",
    "moves",
    "lemma_suite_pass",
    "rounds",
    "total_searchers",
    "round_budget",
    "l",
    "algorithm",
    "peak",
    "lower_bound",
    "ratio",
    "oracle_mcs",
]

STRIP_COLUMNS = [
    "label",
    "call",
    "checkpoint",
    "frontier_anchor",
    "orientation",
    "depth_i",
    "side",
    "peak_cleaners",
    "bound",
    "within",
    "explorers",
    "cleared_edges",
]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: str | Path, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(col)) for col in columns])


def write_metrics(path: str | Path, metrics: dict) -> None:
    Path(path).write_text(json.dumps(metrics, sort_keys=True, indent=2) + "\n")


def render_figures(outdir: str | Path, runs: list[dict], strips: list[dict]) -> list[Path]:
    """Plot team peaks, per-call cleaner calibration, and game peaks."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    sweep = [r for r in runs if r.get("kind") == "sweep"]
    if sweep:
        fig, ax = plt.subplots(figsize=(7, 5))
        xs = [r["n_nodes"] for r in sweep]
        ys = [r["peak_total"] for r in sweep]
        ax.scatter(xs, ys, s=18, label="team peak", zorder=3)
        span = list(range(1, max(xs) + 1))
        ax.plot(
            span,
            [46 * ceil_sqrt(n) + 4 for n in span],
            "r--",
            linewidth=1,
            label="46*ceil(sqrt(n)) + 4",
        )
        ax.set_xlabel("nodes")
        ax.set_ylabel("searchers")
        ax.set_title("team peak vs grid size")
        ax.legend()
        p = outdir / "peaks.png"
        fig.savefig(p, dpi=110)
        plt.close(fig)
        written.append(p)

    if strips:
        fig, ax = plt.subplots(figsize=(7, 5))
        xs = [r["depth_i"] for r in strips]
        ys = [r["peak_cleaners"] for r in strips]
        ax.scatter(xs, ys, s=14, alpha=0.5, label="cleaners per call", zorder=3)
        top = max(xs)
        ax.plot(range(1, top + 1), [6 * i + 4 for i in range(1, top + 1)], "r--",
                linewidth=1, label="6*depth + 4")
        ax.set_xlabel("layer depth")
        ax.set_ylabel("cleaners")
        ax.set_title("layer call calibration")
        ax.legend()
        p = outdir / "strip_calibration.png"
        fig.savefig(p, dpi=110)
        plt.close(fig)
        written.append(p)

    games = [r for r in runs if r.get("kind") == "game"]
    if games:
        fig, ax = plt.subplots(figsize=(7, 5))
        for algo in sorted({r["algorithm"] for r in games}):
            rows = [r for r in games if r["algorithm"] == algo]
            ax.plot([r["l"] for r in rows], [r["peak"] for r in rows],
                    marker="o", label=algo)
        ls = sorted({r["l"] for r in games})
        ax.plot(ls, [(l + 1) / 2 for l in ls], "k--", linewidth=1, label="(l + 1) / 2")
        ax.set_xlabel("tree depth")
        ax.set_ylabel("searchers")
        ax.set_title("adaptive tree games")
        ax.legend()
        p = outdir / "adversary.png"
        fig.savefig(p, dpi=110)
        plt.close(fig)
        written.append(p)

    return written
