#!/usr/bin/env python3
"""Plot casimir_cavity CSV tables.

    python3 tools/plot_figures.py fig1.csv [fig2a.csv ...]

One PNG per table, next to it. Curves are split by every column that is
constant along a curve (L, Omega, constraint, placement, method).
"""
import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

X_COLUMNS = ("x_d", "alpha", "N", "separation")
Y_COLUMNS = ("energy", "force", "total_force", "medium_force")
GROUP_COLUMNS = ("L", "Omega", "constraint", "placement")


def read(path):
    with open(path) as f:
        rows = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(rows))


def plot(path):
    rows = read(path)
    if not rows:
        print(f"{path}: empty table, skipped")
        return
    cols = rows[0].keys()
    x = next(c for c in X_COLUMNS if c in cols)
    y = next(c for c in Y_COLUMNS if c in cols)
    groups = {}
    for r in rows:
        key = tuple(f"{g}={r[g]}" for g in GROUP_COLUMNS if g in cols)
        groups.setdefault(key, []).append((float(r[x]), float(r[y])))
    fig, ax = plt.subplots(figsize=(6, 4))
    for key, pts in groups.items():
        xs, ys = zip(*pts)
        ax.plot(xs, ys, label=", ".join(key))
    if "casimir_reference" in cols:
        ax.plot([float(r[x]) for r in rows], [float(r["casimir_reference"]) for r in rows], "k--", label="empty cavity")
    if x == "N" and max(float(r[x]) for r in rows) > 1e4:
        ax.set_xscale("log")
        ax.set_yscale("symlog", linthresh=1e-30)
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    ax.legend(fontsize=7)
    fig.tight_layout()
    out = Path(path).with_suffix(".png")
    fig.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    for p in sys.argv[1:]:
        plot(p)
