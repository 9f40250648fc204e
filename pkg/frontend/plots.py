#!/usr/bin/env python3
"""Render experiment summary CSVs as utility-vs-gamma charts.

Reads the summary CSV produced by the experiment driver (fixed header
``game,rational,k,model,gamma,mean,std,stderr,count``) and writes one SVG
panel per (game, rational, model) group: x is the noise level gamma, y the
mean commitment value, one curve per lookahead depth k, with error bars.

This script depends only on the CSV contract, not on the solver package.

Usage:
    plots.py --summary <csv> --outdir <dir> [--errorbar std|stderr]
"""
from __future__ import annotations

import argparse
import csv
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

EXPECTED_HEADER = ["game", "rational", "k", "model", "gamma", "mean", "std",
                   "stderr", "count"]
MARKERS = ["o", "s", "^", "D", "v"]


def read_summary(path: str) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != EXPECTED_HEADER:
            raise SystemExit(
                f"{path}: expected header {','.join(EXPECTED_HEADER)}, "
                f"got {reader.fieldnames}")
        rows = []
        for rec in reader:
            rows.append({"game": rec["game"], "rational": int(rec["rational"]),
                         "k": int(rec["k"]), "model": rec["model"],
                         "gamma": float(rec["gamma"]),
                         "mean": float(rec["mean"]), "std": float(rec["std"]),
                         "stderr": float(rec["stderr"]),
                         "count": int(rec["count"])})
    if not rows:
        raise SystemExit(f"{path}: no data rows")
    return rows


def panel_name(game: str, rational: int, model: str) -> str:
    return f"{game}_r{rational}_{model}.svg"


def render(rows: list[dict], outdir: str, errorbar: str = "std") -> list[Path]:
    """Write one SVG per (game, rational, model) panel; returns the paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    panels: dict[tuple, list[dict]] = defaultdict(list)
    for row in rows:
        panels[(row["game"], row["rational"], row["model"])].append(row)

    # Deterministic SVG output: fixed hash salt, no creation date.
    plt.rcParams["svg.hashsalt"] = "llg-plots"

    written = []
    for (game, rational, model), recs in sorted(panels.items()):
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ks = sorted({r["k"] for r in recs})
        for ki, k in enumerate(ks):
            pts = sorted((r for r in recs if r["k"] == k),
                         key=lambda r: r["gamma"])
            xs = [r["gamma"] for r in pts]
            ys = [r["mean"] for r in pts]
            errs = [r[errorbar] for r in pts]
            ax.errorbar(xs, ys, yerr=errs, marker=MARKERS[ki % len(MARKERS)],
                        capsize=3, label=f"lookahead {k}")
        ax.set_xlabel("noise level $\\gamma$")
        ax.set_ylabel("mean value (committing player)")
        ax.set_title(f"{game}, seat {rational}, {model} noise")
        ax.legend()
        fig.tight_layout()
        path = out / panel_name(game, rational, model)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        written.append(path)
    return written


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--summary", required=True, help="summary CSV path")
    ap.add_argument("--outdir", required=True, help="output directory")
    ap.add_argument("--errorbar", choices=["std", "stderr"], default="std")
    args = ap.parse_args(argv)
    rows = read_summary(args.summary)
    written = render(rows, args.outdir, args.errorbar)
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
