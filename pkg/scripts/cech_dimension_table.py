"""Print the H^1 dimension of O(k) on the two-chart cover for a range of k,
from the solver and from the closed form, with the gap basis."""

import argparse

from superdeform.cech import LineBundleModel, count_nontrivial_classes, h1_dimension


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--low", type=int, default=-6)
    p.add_argument("--high", type=int, default=3)
    p.add_argument("--window", type=int, default=12, help="Laurent powers probed by the solver")
    args = p.parse_args()
    print(f"{'k':>4} {'solver':>7} {'max(0,-k-1)':>12}  basis")
    for k in range(args.low, args.high + 1):
        basis = ", ".join(f"x^{q}" for q in LineBundleModel(k).gap_powers()) or "-"
        print(f"{k:>4} {count_nontrivial_classes(k, args.window):>7} {h1_dimension(k):>12}  {basis}")


if __name__ == "__main__":
    main()
