#!/usr/bin/env python3
"""Render the weak user's rate curves against the Gaussian boundary.

Consumes fig5.csv as written by `gbctin fig5`: one row per power split with
the Gaussian boundary rate (c2) and one column per modulation-order pair.
Absent curve columns are skipped with a warning; the alpha and c2 columns are
mandatory.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csv_schema import FIG5_CURVES, FIG5_REQUIRED, SchemaError, column, load_csv

CURVE_LABELS = {
    "mi_52": "(M1, M2) = (5, 2)",
    "mi_42": "(M1, M2) = (4, 2)",
    "mi_33": "(M1, M2) = (3, 3)",
}


def plot_fig5(in_path: Path, out_file: Path, title: str | None = None) -> Path:
    if in_path.is_dir():
        in_path = in_path / "fig5.csv"
    header, rows = load_csv(in_path, FIG5_REQUIRED)
    alpha = column(rows, "alpha")

    fig, ax = plt.subplots(figsize=(7.2, 5.0))
    ax.plot(alpha, column(rows, "c2"), "k--", linewidth=1.6,
            label="Gaussian boundary")
    plotted = 0
    for name in FIG5_CURVES:
        if name not in header:
            print(f"warning: column '{name}' missing, skipping its curve",
                  file=sys.stderr)
            continue
        ax.plot(alpha, column(rows, name), linewidth=1.3,
                label=CURVE_LABELS.get(name, name))
        plotted += 1
    if plotted == 0:
        raise SchemaError(f"{in_path.name}: no rate curve columns found "
                          f"(expected any of {', '.join(FIG5_CURVES)})")

    ax.set_xlabel("power fraction for user 1")
    ax.set_ylabel("user 2 rate  [bits/channel use]")
    ax.set_title(title or "Weak-user rate under TIN vs. Gaussian boundary")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right")
    fig.tight_layout()
    out_file.parent.mkdir(parents=True, exist_ok=True)
    metadata = {"Date": None} if out_file.suffix == ".svg" else {}
    fig.savefig(out_file, dpi=160, metadata=metadata)
    plt.close(fig)
    return out_file


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="in_path", required=True,
                        help="fig5.csv or the directory containing it")
    parser.add_argument("--out", dest="out_file", required=True,
                        help="output image path (.png, .pdf, .svg)")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        path = plot_fig5(Path(args.in_path), Path(args.out_file), args.title)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
