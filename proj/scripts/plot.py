#!/usr/bin/env python3
"""Plot qsz CSV output.

  qsz sweep --config configs/balance-work-vs-t.cfg --out balance.csv
  scripts/plot.py balance.csv --x t --y W_balance_kT --logx

  qsz forces --config configs/forces-t1.cfg --out forces-t1.csv
  scripts/plot.py forces-t1.csv --x x --y forward_force backward_force
"""

import argparse
import csv

import matplotlib.pyplot as plt


def read(path):
    rows, footer = [], {}
    with open(path, newline="") as f:
        lines = [line for line in f]
    for line in lines:
        if line.startswith("# "):
            key, _, value = line[2:].strip().partition("=")
            footer[key] = value
    body = [line for line in lines if not line.startswith("#")]
    for row in csv.DictReader(body):
        rows.append(row)
    return rows, footer


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("--x", required=True)
    ap.add_argument("--y", nargs="+", required=True)
    ap.add_argument("--logx", action="store_true")
    ap.add_argument("--out")
    args = ap.parse_args()

    rows, footer = read(args.csv)
    xs = [float(r[args.x]) for r in rows]
    for col in args.y:
        ys = [float(r[col]) if r[col] else float("nan") for r in rows]
        plt.plot(xs, ys, label=col)
    for key in ("balance_point", "optimal_point"):
        if key in footer:
            plt.axvline(float(footer[key]), linestyle=":", color="gray")
    if args.logx:
        plt.xscale("log")
    plt.axhline(0.0, color="black", linewidth=0.5)
    plt.xlabel(args.x)
    plt.legend()
    if args.out:
        plt.savefig(args.out, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
