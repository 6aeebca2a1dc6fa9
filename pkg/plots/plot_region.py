#!/usr/bin/env python3
"""Render the achievable rate region against the Gaussian capacity boundary.

Reads rate_points.csv, frontier.csv and (optionally) capacity.csv from the
input directory, exactly as written by `gbctin region`, and draws:
the capacity boundary curve, the achievable frontier, the alpha* generator
points as box markers, and the time-sharing segments.  All numbers come from
the CSVs; this script computes nothing.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csv_schema import CAPACITY_COLUMNS, RATE_COLUMNS, SchemaError, column, load_csv


def nearly(a: float, b: float, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def plot_region(in_dir: Path, out_file: Path, title: str | None = None) -> Path:
    _, points = load_csv(in_dir / "rate_points.csv", RATE_COLUMNS)
    _, frontier = load_csv(in_dir / "frontier.csv", RATE_COLUMNS)

    fig, ax = plt.subplots(figsize=(7.2, 5.4))

    capacity_path = in_dir / "capacity.csv"
    if capacity_path.exists():
        _, cap = load_csv(capacity_path, CAPACITY_COLUMNS)
        ax.plot(column(cap, "c1"), column(cap, "c2"), "k-", linewidth=1.6,
                label="capacity boundary")
    else:
        print(f"warning: {capacity_path.name} not found, rendering the "
              "frontier alone", file=sys.stderr)

    ax.plot(column(frontier, "r1"), column(frontier, "r2"), "-", color="tab:red",
            linewidth=1.2, label="achievable frontier")

    ts = [row for row in points if row["scheme"] == "ts_combination"]
    if ts:
        ax.plot(column(ts, "r1"), column(ts, "r2"), "s", color="tab:orange",
                markersize=2.5, label="time-sharing mixes")

    # Generator points evaluated exactly at the largest non-overlapping split.
    boxes = [row for row in points
             if row["scheme"] != "ts_combination"
             and 0.0 < float(row["alpha"]) < 1.0
             and nearly(float(row["alpha"]), _alpha_star(row))]
    if boxes:
        ax.plot(column(boxes, "r1"), column(boxes, "r2"), "s",
                markerfacecolor="none", markeredgecolor="tab:blue",
                markersize=7, linestyle="none", label="alpha* rate pairs")

    ax.set_xlabel("user 1 rate  [bits/channel use]")
    ax.set_ylabel("user 2 rate  [bits/channel use]")
    ax.set_title(title or "Achievable rate region vs. capacity region")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right")
    fig.tight_layout()
    out_file.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_file, dpi=160, metadata=_clean_metadata(out_file))
    plt.close(fig)
    return out_file


def _alpha_star(row: dict) -> float:
    m1, m2 = int(row["m1"]), int(row["m2"])
    if m1 * m2 < 2:
        return -1.0
    return (m1 * m1 - 1.0) / (m1 * m1 * m2 * m2 - 1.0)


def _clean_metadata(out_file: Path) -> dict:
    # Keep output bytes reproducible: no embedded timestamps.
    if out_file.suffix == ".svg":
        return {"Date": None}
    return {}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory holding the region CSVs")
    parser.add_argument("--out", dest="out_file", required=True,
                        help="output image path (.png, .pdf, .svg)")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        path = plot_region(Path(args.in_dir), Path(args.out_file), args.title)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
