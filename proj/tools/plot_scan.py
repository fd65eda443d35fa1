#!/usr/bin/env python3
"""Plot one or more `psring scan` CSV files (columns r,V) on a log r axis.

    psring scan --model ring-ml --rmin 1e-6 --rmax 1e-4 > ml.csv
    psring scan --model ring-ml --n 2 --rmin 1e-6 --rmax 1e-4 > ml2.csv
    python3 tools/plot_scan.py ml.csv ml2.csv -o ml.png
"""

import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    r, v = [], []
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            r.append(float(row["r"]))
            v.append(float(row["V"]))
    return r, v


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("csv", nargs="+")
    p.add_argument("-o", "--output", default="scan.png")
    p.add_argument("--ymin", type=float)
    p.add_argument("--ymax", type=float)
    p.add_argument("--linear", action="store_true", help="linear r axis")
    args = p.parse_args()

    fig, ax = plt.subplots(figsize=(6, 4))
    for path in args.csv:
        r, v = read(path)
        ax.plot(r, v, label=path)
    if not args.linear:
        ax.set_xscale("log")
    ax.set_ylim(args.ymin, args.ymax)
    ax.set_xlabel(r"$r$  [$\hbar/mc$]")
    ax.set_ylabel(r"$V_n(r)$  [$mc^2$]")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
