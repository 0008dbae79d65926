"""Dephased entropy of W_N in the symmetric local basis, p over [0, 1]."""
import argparse

import numpy as np

from supent.figures import FIG2_COLUMNS, fig2_rows, to_csv

ap = argparse.ArgumentParser()
ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5, 6])
ap.add_argument("--grid", type=int, default=1001)
ap.add_argument("--prefix", default="fig2")
args = ap.parse_args()

for N in args.n:
    rows = np.array(fig2_rows(N, args.grid))
    path = f"{args.prefix}_N{N}.csv"
    with open(path, "w") as fh:
        fh.write(to_csv(FIG2_COLUMNS, rows))
    k = np.argmax(rows[:, 1])
    print(f"N={N}: min {rows[:, 1].min():.6f} (log2 N = {np.log2(N):.6f}), "
          f"max {rows[k, 1]:.6f} at p = {rows[k, 0]:.3f} -> {path}")
