"""Reproduce the greedy square-root trace on 2C2 + 12C3 + 26C6.

Each row shows the remainder before the pick and the appended cycle
length; the final line is the root."""

import argparse

from fdds.formats import format_perm_expr, parse_perm_expr
from fdds.perm import kth_root_perm


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-b", default="2*C2 + 12*C3 + 26*C6", help="permutation B")
    ap.add_argument("-k", type=int, default=2, help="root degree")
    args = ap.parse_args()

    b = parse_perm_expr(args.b)
    trace: list = []
    x = kth_root_perm(b, args.k, trace=trace)
    for remainder, length in trace:
        print(f"remainder {format_perm_expr(remainder):40s} pick C{length}")
    if x is None:
        print("no solution")
    else:
        print(f"root      {format_perm_expr(x)}")


if __name__ == "__main__":
    main()
