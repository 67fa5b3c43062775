"""Round-trip benchmark: solve P(X) = P(x) for sampled pseudo-injective P.

Enumerates every pseudo-injective polynomial of degree <= 2 with
coefficients of at most --max-states states, evaluates each on the whole
candidate pool, and solves every resulting instance, checking that the
returned solution has the maximum component count among all solutions."""

import argparse
import itertools
import random
import time

from fdds.core import Polynomial, ZERO, eval_poly
from fdds.oracle import fdds_of_size
from fdds.solver import classify_fdds_poly, solve_pseudo_inj_fdds


def pseudo_injective_polys(pool):
    polys = []
    for a1 in pool:
        p = Polynomial.make([ZERO, a1])
        if classify_fdds_poly(p).pseudo_injective:
            polys.append(p)
    for a1, a2 in itertools.product([ZERO] + pool, pool):
        p = Polynomial.make([ZERO, a1, a2])
        if classify_fdds_poly(p).pseudo_injective:
            polys.append(p)
    return polys


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-states", type=int, default=5)
    ap.add_argument("--sample", type=int, default=0,
                    help="number of polynomials to sample (0 = all)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    pool = [f for n in range(1, args.max_states + 1) for f in fdds_of_size(n)]
    polys = pseudo_injective_polys(pool)
    if args.sample:
        polys = random.Random(args.seed).sample(polys, args.sample)
    print(f"pool: {len(pool)} values, polynomials: {len(polys)}")

    t0 = time.monotonic()
    solves = 0
    for i, p in enumerate(polys):
        images: dict = {}
        for x in pool:
            images.setdefault(eval_poly(p, x), []).append(x)
        for b, xs in images.items():
            report = solve_pseudo_inj_fdds(p, b)
            assert report.solution in xs
            assert report.solution.num_components == max(
                s.num_components for s in xs
            )
            solves += 1
        if (i + 1) % 500 == 0:
            rate = solves / (time.monotonic() - t0)
            print(f"  {i + 1}/{len(polys)} polynomials, {rate:.0f} solves/s")
    dt = time.monotonic() - t0
    print(f"{solves} solves in {dt:.1f}s ({solves / dt:.0f}/s), all maximal")


if __name__ == "__main__":
    main()
