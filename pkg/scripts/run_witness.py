"""Collision witness for a non-injective permutation coefficient.

For A with cycle lengths N, prints the per-subset alpha/beta/delta table
and the two distinct X, Y with A X = A Y.  The default A = C2 + C3 + C6."""

import argparse
from itertools import chain, combinations
from math import lcm

from fdds.core import Polynomial, ZERO, eval_poly
from fdds.formats import format_fdds, parse_perm_expr
from fdds.numtheory import alpha, beta, delta
from fdds.solver import noninjectivity_witness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-a", default="C2 + C3 + C6", help="coefficient A")
    args = ap.parse_args()

    a = parse_perm_expr(args.a)
    n = sorted(a.cycle_lengths())
    subsets = chain.from_iterable(
        combinations(n, k) for k in range(len(n) + 1)
    )
    print(f"N = {set(n)}")
    print(f"{'I':16s} {'lcm':>6s} {'alpha':>6s} {'beta':>6s} {'delta':>6s}")
    for i in subsets:
        l = lcm(*i) if i else 1
        print(
            f"{str(set(i)) if i else '{}':16s} {l:6d} "
            f"{alpha(n, i):6d} {beta(n, i):6d} {delta(i):6d}"
        )

    p = Polynomial.make([ZERO, a])
    w = noninjectivity_witness(p)
    print(f"X   = {format_fdds(w.x)}")
    print(f"Y   = {format_fdds(w.y)}")
    print(f"A*X = {format_fdds(eval_poly(p, w.x))}")
    print(f"A*Y = {format_fdds(eval_poly(p, w.y))}")
    assert w.x != w.y and eval_poly(p, w.x) == eval_poly(p, w.y)
    print("X != Y and A*X = A*Y verified")


if __name__ == "__main__":
    main()
