"""Polynomial equations over arbitrary FDDSs.

Classification (injective / pseudo-injective), the general pseudo-injective
solver, and the collision-witness generator for non-injective polynomials.

The solver builds the solution one connected component per iteration: it
restricts the equation to the components whose cycle length divides the
shortest remainder length, solves the restricted equation over unroll cuts,
and turns the minimal new unroll tree into a component whose cycle length is
lcm(period, anti-lcm of the seed and the shortest remainder length).  The
returned solution maximizes the number of connected components.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cmp_to_key
from math import lcm
from typing import Optional

from .core import (
    Component,
    Fdds,
    Polynomial,
    SizeBudgetExceeded,
    ZERO,
    add,
    compare_ct,
    comps_len_div,
    cycle,
    eval_poly,
    pure_cycle,
    single,
    subtract,
)
from .numtheory import alcm, alpha, beta
from .perm import Seed, _classify_lengths
from . import unroll
from .unroll import (
    EMPTY_FOREST,
    UTree,
    forest_subtract,
    min_period,
    reconstruct_component,
    solve_forest_poly,
    sufficient_depth,
    unroll_cut,
)


@dataclass(frozen=True, slots=True)
class SolveReport:
    """Outcome of a solve: the solution (or None) and the greedy trace of
    (remainder, picked component) pairs."""

    solution: Optional[Fdds]
    trace: tuple

    @property
    def iterations(self) -> int:
        return len(self.trace)


@dataclass(frozen=True, slots=True)
class Witness:
    """Two distinct points with equal image: eval_poly(P, X) = eval_poly(P, Y).
    k is the smallest non-constant degree of P."""

    x: Fdds
    y: Fdds
    k: int


def classify_fdds_poly(p: Polynomial) -> Seed:
    """Seed and solver class over arbitrary FDDSs: injective iff some
    non-constant coefficient contains a dendron (component of cycle length
    1); seed and pseudo-injectivity from all non-constant cycle lengths."""
    lengths: set[int] = set()
    for _, coeff in p.nonconstant_coeffs():
        lengths |= coeff.cycle_lengths()
    if not lengths:
        raise ValueError("polynomial has no non-constant coefficient")
    return _classify_lengths(lengths)


def min_unroll_tree(comp: Component, depth: int) -> UTree:
    """The order-minimal tree of the component's unroll cut at the given
    comparison depth."""
    return unroll.min_unroll_cut_tree(comp, depth)


def _min_component(value: Fdds) -> Component:
    return min(
        (c for c, _ in value.comps),
        key=cmp_to_key(compare_ct),
    )


def compare_lep(p: Polynomial, x: Component, y: Component) -> int:
    """Order induced by P: compare the minimal components of P(X) and P(Y),
    breaking ties by the component order itself."""
    pn = p.without_constant()
    r = compare_ct(
        _min_component(eval_poly(pn, single(x))),
        _min_component(eval_poly(pn, single(y))),
    )
    if r:
        return r
    return compare_ct(x, y)


# ---------------------------------------------------------------------------
# The general pseudo-injective solver.


def _is_perm_instance(coeffs: list[Fdds], b: Fdds) -> bool:
    return b.is_permutation and all(c.is_permutation for c in coeffs)


def _heuristic_depth(restricted_b: Fdds, coeffs: list[Fdds], l: int) -> int:
    h = restricted_b.max_tree_depth()
    ha = max((c.max_tree_depth() for c in coeffs if not c.is_zero), default=0)
    return 2 * l + h + ha + 2


def _heuristic_depth_deep(restricted_b: Fdds, coeffs: list[Fdds], l: int) -> int:
    h = restricted_b.max_tree_depth()
    ha = max((c.max_tree_depth() for c in coeffs if not c.is_zero), default=0)
    return 4 * l + 2 * (h + ha) + 4


# The exact sufficient cut depth is quadratic in the number of components,
# so its tree recursion can exceed the default thread stack.
_BIG_STACK = 512 * 1024 * 1024
_DEEP_CUT_LIMIT = 2000


def _run_big_stack(fn):
    box: list = []

    def runner():
        try:
            box.append((True, fn()))
        except BaseException as e:  # noqa: BLE001 - reraised in the caller
            box.append((False, e))

    old = threading.stack_size(_BIG_STACK)
    try:
        worker = threading.Thread(target=runner)
        worker.start()
        worker.join()
    finally:
        threading.stack_size(old)
    ok, value = box[0]
    if not ok:
        raise value
    return value


def solve_pseudo_inj_fdds(
    p: Polynomial,
    b: Fdds,
    depth: Optional[int] = None,
) -> SolveReport:
    """Solve P(X) = B for pseudo-injective P over arbitrary FDDSs.

    With depth=None a ladder of working depths is tried (shallow heuristic,
    deeper heuristic, then the exact sufficient depth); success is
    self-verifying since the loop only terminates when B - P(X) reaches
    zero.  An explicit depth forces that cut depth for every restricted
    subequation."""
    seed = classify_fdds_poly(p)
    if not seed.pseudo_injective:
        raise ValueError("polynomial is not pseudo-injective")
    if depth is not None:
        if depth > _DEEP_CUT_LIMIT:
            return _run_big_stack(lambda: _solve_at(p, b, seed, depth=depth))
        return _solve_at(p, b, seed, depth=depth)
    report = _solve_at(p, b, seed, depth=None)
    if report.solution is not None:
        return report
    report = _solve_at(p, b, seed, depth=-2)
    if report.solution is not None:
        return report
    return _run_big_stack(lambda: _solve_at(p, b, seed, depth=-1))


def _solve_at(
    p: Polynomial,
    b: Fdds,
    seed: Seed,
    depth: Optional[int],
) -> SolveReport:
    """One solving attempt.  depth: None = shallow heuristic per iteration,
    -2 = deeper heuristic, -1 = exact sufficient depth, other = that fixed
    depth."""
    trace: list = []

    def fail() -> SolveReport:
        return SolveReport(solution=None, trace=tuple(trace))

    b0 = subtract(b, p.constant)
    if b0 is None:
        return fail()
    pn = p.without_constant()
    coeffs = list(pn.coeffs)
    x = ZERO
    while True:
        try:
            value = eval_poly(pn, x, budget=b0.size)
        except SizeBudgetExceeded:
            return fail()
        remainder = subtract(b0, value)
        if remainder is None:
            return fail()
        if remainder.is_zero:
            return SolveReport(solution=x, trace=tuple(trace))
        l = remainder.min_cycle_len()
        if l % seed.g:
            return fail()
        alc = alcm(seed.g, l)
        # comps_len_div is a semiring endomorphism, so the cycle lengths
        # dividing l of the full right-hand side satisfy the restricted
        # equation; the solved forest then contains the cuts of the
        # already-found components, which are subtracted below.
        restricted_b = comps_len_div(b0, l)
        restricted_coeffs = [comps_len_div(c, l) for c in coeffs]
        if _is_perm_instance(restricted_coeffs[1:], restricted_b):
            # Permutation case: every unroll tree is a bare path, the
            # minimal period is 1, and the picked component is a cycle.
            d_comp = pure_cycle(alc)
        else:
            if depth is None:
                d_cut = _heuristic_depth(restricted_b, restricted_coeffs, l)
            elif depth == -2:
                d_cut = _heuristic_depth_deep(restricted_b, restricted_coeffs, l)
            elif depth == -1:
                d_cut = sufficient_depth(restricted_b)
            else:
                d_cut = depth
            forest_coeffs = [EMPTY_FOREST] + [
                unroll_cut(c, d_cut) for c in restricted_coeffs[1:]
            ]
            forest_b = unroll_cut(restricted_b, d_cut)
            y = solve_forest_poly(forest_coeffs, forest_b)
            if y is None:
                return fail()
            x_forest = unroll_cut(comps_len_div(x, l), d_cut)
            new_trees = forest_subtract(y, x_forest)
            if new_trees is None or new_trees.is_zero:
                return fail()
            t = new_trees.min_tree()
            try:
                period = min_period(t)
                d_comp = reconstruct_component(t, lcm(period, alc))
            except ValueError:
                return fail()
        trace.append((remainder, d_comp))
        x = add(x, single(d_comp))
        if x.num_components > b0.num_components:
            return fail()


# ---------------------------------------------------------------------------
# Collision witnesses for non-injective polynomials.


def noninjectivity_witness(p: Polynomial, max_set_size: int = 12) -> Witness:
    """Two distinct X, Y with eval_poly(P, X) = eval_poly(P, Y), for any P
    whose non-constant coefficients contain no dendron.

    With N the cycle lengths of the summed non-constant coefficients,
    X = sum over I subset of N of alpha_I * C_lcm(I) and Y likewise with
    beta_I; the returned pair is verified before being returned."""
    nonconst = p.nonconstant_coeffs()
    if not nonconst:
        raise ValueError("polynomial has no non-constant coefficient")
    summed = ZERO
    for _, coeff in nonconst:
        summed = add(summed, coeff)
    n = sorted(summed.cycle_lengths())
    if 1 in n:
        raise ValueError("a non-constant coefficient contains a dendron")
    if len(n) > max_set_size:
        raise ValueError(
            f"|N| = {len(n)} exceeds the witness size limit {max_set_size}"
        )
    x = ZERO
    y = ZERO
    for mask in range(1 << len(n)):
        subset = [n[i] for i in range(len(n)) if mask >> i & 1]
        l = lcm(*subset) if subset else 1
        x = add(x, cycle(l, alpha(n, subset)))
        y = add(y, cycle(l, beta(n, subset)))
    if x == y or eval_poly(p, x) != eval_poly(p, y):
        raise AssertionError("witness construction failed verification")
    return Witness(x=x, y=y, k=nonconst[0][0])
