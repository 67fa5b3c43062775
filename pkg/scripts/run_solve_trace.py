"""Reproduce the general solver trace on C2 X^2 + (C4 + C6) X = B.

With B = 16C2 + 4C4 + 18C6 + C12 the solver finds 4C1 + C3 in five
iterations, one connected component per row."""

import argparse

from fdds.core import Polynomial, ZERO, single
from fdds.formats import format_fdds, parse_perm_expr
from fdds.solver import solve_pseudo_inj_fdds


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "-b", default="16*C2 + 4*C4 + 18*C6 + C12", help="right-hand side B"
    )
    args = ap.parse_args()

    p = Polynomial.make(
        [ZERO, parse_perm_expr("C4 + C6"), parse_perm_expr("C2")]
    )
    b = parse_perm_expr(args.b)
    report = solve_pseudo_inj_fdds(p, b)
    for remainder, picked in report.trace:
        print(
            f"remainder {format_fdds(remainder):40s} "
            f"pick {format_fdds(single(picked))}"
        )
    if report.solution is None:
        print("no solution")
    else:
        print(f"solution  {format_fdds(report.solution)}")


if __name__ == "__main__":
    main()
