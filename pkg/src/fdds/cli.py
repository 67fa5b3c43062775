"""Command-line surface.

Subcommands: product, pow, root, divide, solve, unroll, classify, witness,
oracle, alcm.  Inputs are permutation expressions, function-table files,
or compact permutation files; exit code 0 means solved (or true), 1 means
no solution, 2 means a malformed input or an unsupported polynomial class.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .core import Fdds, Polynomial, ZERO, add, multiply, power
from . import numtheory
from .formats import (
    FormatError,
    format_compact,
    format_fdds,
    format_forest,
    parse_compact,
    parse_perm_expr,
    parse_poly,
    parse_table,
    poly_to_compact,
)
from .oracle import OracleIndex, enumerate_fdds, enumerate_fdds_sweep, oracle_solve
from .perm import (
    CompactPerm,
    decode,
    divide_pseudo_cancelable,
    encode,
    kth_root_perm,
    solve_pseudo_inj_perm_compact,
)
from .solver import classify_fdds_poly, noninjectivity_witness, solve_pseudo_inj_fdds
from .unroll import unroll_cut

__all__ = [
    "cli_main",
    "main",
    "OracleIndex",
    "enumerate_fdds",
    "enumerate_fdds_sweep",
    "oracle_solve",
]

OK, NO_SOLUTION, ERROR = 0, 1, 2


def _read(path: str) -> str:
    with open(path) as f:
        return f.read()


def _sniff_file(text: str) -> str:
    lines = [l for l in text.splitlines() if l.strip()]
    if lines and len(lines[0].split()) == 1:
        try:
            n = int(lines[0])
        except ValueError:
            return "expr"
        if len(lines) == 1 and n == 0:
            return "table"
        if len(lines) > 1 and len(lines[1].split()) == n:
            return "table"
    if lines and all(len(l.split()) == 2 for l in lines):
        return "compact"
    return "expr"


def load_fdds(arg: str, fmt: str = "auto") -> Fdds:
    """An FDDS from an expression, a table file, or a compact file."""
    if fmt == "auto":
        if os.path.isfile(arg):
            text = _read(arg)
            fmt = _sniff_file(text)
        else:
            return parse_perm_expr(arg)
    else:
        text = _read(arg) if os.path.isfile(arg) else arg
    if fmt == "table":
        return parse_table(text)
    if fmt == "compact":
        return decode(parse_compact(text))
    return parse_perm_expr(text)


def load_compact(arg: str) -> CompactPerm:
    if os.path.isfile(arg):
        text = _read(arg)
        if _sniff_file(text) == "compact":
            return parse_compact(text)
        return encode(load_fdds(arg))
    return encode(parse_perm_expr(arg))


def load_poly(arg: str) -> Polynomial:
    if os.path.isfile(arg):
        return parse_poly(_read(arg), base_dir=os.path.dirname(arg) or ".")
    if ":" in arg:
        return parse_poly(arg.replace(";", "\n"))
    raise FormatError(f"no such polynomial file: {arg}")


def _print_trace(rows, out) -> None:
    for i, row in enumerate(rows, start=1):
        remainder, picked = row[0], row[1:]
        picked_text = " ".join(str(p) for p in picked)
        print(f"{i:>3}  {format_fdds(remainder)}  ->  {picked_text}", file=out)


def cli_main(argv: Optional[list] = None, out=None) -> int:
    out = out or sys.stdout
    parser = argparse.ArgumentParser(
        prog="fdds",
        description="Semiring arithmetic and equation solving over finite "
        "discrete dynamical systems.",
    )
    parser.add_argument(
        "--format",
        choices=["auto", "table", "expr", "compact"],
        default="auto",
        help="input format for FDDS arguments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_product = sub.add_parser("product", help="direct product A * B")
    p_product.add_argument("a")
    p_product.add_argument("b")

    p_pow = sub.add_parser("pow", help="power A^k")
    p_pow.add_argument("a")
    p_pow.add_argument("k", type=int)

    p_root = sub.add_parser("root", help="k-th root of a permutation")
    p_root.add_argument("b")
    p_root.add_argument("k", type=int)
    p_root.add_argument("--trace", action="store_true")

    p_div = sub.add_parser("divide", help="solve A*X = B (A pseudo-cancelable)")
    p_div.add_argument("b")
    p_div.add_argument("a")

    p_solve = sub.add_parser("solve", help="solve P(X) = B")
    p_solve.add_argument("poly")
    p_solve.add_argument("b")
    p_solve.add_argument("--compact", action="store_true")
    p_solve.add_argument("--trace", action="store_true")

    p_unroll = sub.add_parser("unroll", help="depth-d cut of the unroll")
    p_unroll.add_argument("a")
    p_unroll.add_argument("--depth", type=int, required=True)

    p_classify = sub.add_parser("classify", help="seed and polynomial class")
    p_classify.add_argument("poly")

    p_witness = sub.add_parser("witness", help="collision witness for a "
                               "polynomial without dendron coefficients")
    p_witness.add_argument("poly")
    p_witness.add_argument("-k", type=int, default=None,
                           help="use the monomial (sum of coefficients)*X^k")

    p_oracle = sub.add_parser("oracle", help="all solutions by brute force")
    p_oracle.add_argument("poly")
    p_oracle.add_argument("b")
    p_oracle.add_argument("--max-states", type=int, required=True)

    p_alcm = sub.add_parser("alcm", help="smallest c with lcm(a, c) = b")
    p_alcm.add_argument("a", type=int)
    p_alcm.add_argument("b", type=int)

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK

    try:
        return _dispatch(args, out)
    except (FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


def _dispatch(args, out) -> int:
    fmt = args.format

    if args.command == "product":
        result = multiply(load_fdds(args.a, fmt), load_fdds(args.b, fmt))
        print(format_fdds(result), file=out)
        return OK

    if args.command == "pow":
        print(format_fdds(power(load_fdds(args.a, fmt), args.k)), file=out)
        return OK

    if args.command == "root":
        trace: list = []
        result = kth_root_perm(load_fdds(args.b, fmt), args.k, trace=trace)
        if args.trace:
            _print_trace(trace, out)
        if result is None:
            print("no solution", file=out)
            return NO_SOLUTION
        print(format_fdds(result), file=out)
        return OK

    if args.command == "divide":
        result = divide_pseudo_cancelable(
            load_fdds(args.b, fmt), load_fdds(args.a, fmt)
        )
        if result is None:
            print("no solution", file=out)
            return NO_SOLUTION
        print(format_fdds(result), file=out)
        return OK

    if args.command == "solve":
        poly = load_poly(args.poly)
        seed = classify_fdds_poly(poly)
        if not seed.pseudo_injective:
            raise ValueError("polynomial is not pseudo-injective")
        if args.compact:
            compact_trace: list = []
            result = solve_pseudo_inj_perm_compact(
                poly_to_compact(poly),
                load_compact(args.b),
                trace=compact_trace if args.trace else None,
            )
            if args.trace:
                for i, (rem, c, q) in enumerate(compact_trace, start=1):
                    print(f"{i:>3}  min length {rem.min_len()}  ->  "
                          f"{q} * C{c}", file=out)
            if result is None:
                print("no solution", file=out)
                return NO_SOLUTION
            print(format_compact(result), file=out)
            return OK
        report = solve_pseudo_inj_fdds(poly, load_fdds(args.b, fmt))
        if args.trace:
            _print_trace(report.trace, out)
        if report.solution is None:
            print("no solution", file=out)
            return NO_SOLUTION
        print(format_fdds(report.solution), file=out)
        return OK

    if args.command == "unroll":
        print(format_forest(unroll_cut(load_fdds(args.a, fmt), args.depth)),
              file=out)
        return OK

    if args.command == "classify":
        seed = classify_fdds_poly(load_poly(args.poly))
        pseudo = "yes" if seed.pseudo_injective else "no"
        inj = "yes" if seed.injective else "no"
        print(f"seed={seed.g} pseudo-injective={pseudo} injective={inj}",
              file=out)
        return OK

    if args.command == "witness":
        poly = load_poly(args.poly)
        if args.k is not None:
            summed = ZERO
            for _, coeff in poly.nonconstant_coeffs():
                summed = add(summed, coeff)
            poly = Polynomial.make([ZERO] * args.k + [summed])
        witness = noninjectivity_witness(poly)
        print(f"X = {format_fdds(witness.x)}", file=out)
        print(f"Y = {format_fdds(witness.y)}", file=out)
        return OK

    if args.command == "oracle":
        poly = load_poly(args.poly)
        solutions = oracle_solve(poly, load_fdds(args.b, fmt),
                                 args.max_states)
        for solution in sorted(solutions, key=lambda v: v.comps):
            print(format_fdds(solution).replace("\n", " ; "), file=out)
        return OK if solutions else NO_SOLUTION

    if args.command == "alcm":
        print(numtheory.alcm(args.a, args.b), file=out)
        return OK

    raise AssertionError(f"unhandled command {args.command}")


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
