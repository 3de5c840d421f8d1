#!/usr/bin/env python3
"""Plot a fidelity/success/concurrence sweep produced by the qst tool.

    build/tools/qst --preset fig2a --out fig2a.csv
    python3 docs/plot_curves.py fig2a.csv
"""
import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt


def main(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        sys.exit("empty table")
    columns = rows[0].keys()
    curve_cols = [c for c in columns if c not in ("t", "p", "f_abs")]

    fig, axes = plt.subplots(1, len(curve_cols), figsize=(5 * len(curve_cols), 4))
    if len(curve_cols) == 1:
        axes = [axes]
    for ax, col in zip(axes, curve_cols):
        series = defaultdict(list)
        for row in rows:
            series[row.get("p", "")].append((float(row["t"]), float(row[col])))
        for p, points in sorted(series.items()):
            ts, ys = zip(*points)
            label = f"p = {float(p):g}" if p else None
            ax.plot(ts, ys, label=label)
        ax.set_xlabel("t")
        ax.set_ylabel(col)
        if len(series) > 1:
            ax.legend()
    fig.tight_layout()
    out = path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    main(sys.argv[1])
