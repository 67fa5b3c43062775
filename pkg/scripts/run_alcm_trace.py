"""Anti-lcm of a pair a | b: smallest c with lcm(a, c) = b.

Prints the closed form, the iterative refinement trace, and a cross-check
that both realizations agree."""

import argparse

from fdds.numtheory import alcm, alcm_iter


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("a", nargs="?", type=int, default=3584)
    ap.add_argument("b", nargs="?", type=int, default=43008)
    args = ap.parse_args()

    closed = alcm(args.a, args.b)
    trace: list = []
    iterated = alcm_iter(args.a, args.b, trace=trace)
    print(f"alcm_{args.a}({args.b}) = {closed}")
    for i, c in enumerate(trace, start=1):
        print(f"  step {i}: c = {c}")
    assert closed == iterated
    print("closed form and iteration agree")


if __name__ == "__main__":
    main()
