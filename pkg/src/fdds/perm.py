"""Equation solvers over permutations (disjoint unions of cycles).

Covers k-th roots, injective polynomial equations, division by a
pseudo-cancelable permutation, pseudo-injective polynomial equations, and the
compact (cycle length, multiplicity) encoding with its big-number solver.

Solvers return None when the equation has no solution; optional ``trace`` and
``diagnostics`` lists expose the greedy iterations and the failure reason.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd, lcm
from typing import Optional

from .core import (
    Fdds,
    Polynomial,
    SizeBudgetExceeded,
    ZERO,
    add,
    cycle,
    eval_poly,
    multiply,
    power,
    pure_cycle,
    subtract,
)
from .numtheory import alcm


@dataclass(frozen=True, slots=True)
class Seed:
    """Classification of a polynomial: seed g plus the two solver classes."""

    g: int
    pseudo_injective: bool
    injective: bool


def _require_perm(value: Fdds, what: str) -> None:
    if not value.is_permutation:
        raise ValueError(f"{what} must be a permutation (no transient states)")


def _classify_lengths(lengths: set[int]) -> Seed:
    g = min(lengths)
    pseudo = all(l % g == 0 for l in lengths)
    return Seed(g=g, pseudo_injective=pseudo, injective=1 in lengths)


def classify_perm_poly(p: Polynomial) -> Seed:
    """Seed and solver class of a polynomial with permutation coefficients.

    g is the minimum cycle length over non-constant coefficients; the
    polynomial is pseudo-injective when every such cycle length is a multiple
    of g, and injective when some non-constant coefficient contains C_1."""
    for coeff in p.coeffs:
        _require_perm(coeff, "every coefficient")
    lengths: set[int] = set()
    for _, coeff in p.nonconstant_coeffs():
        lengths |= coeff.cycle_lengths()
    if not lengths:
        raise ValueError("polynomial has no non-constant coefficient")
    return _classify_lengths(lengths)


def kth_root_perm(
    b: Fdds,
    k: int,
    trace: Optional[list] = None,
) -> Optional[Fdds]:
    """The unique X with X^k = B, or None.  Greedy: repeatedly append the
    shortest cycle of the remainder B - X^k.

    Each trace row is (remainder before the pick, appended cycle length)."""
    _require_perm(b, "B")
    if k < 1:
        raise ValueError("k must be >= 1")
    x = ZERO
    while True:
        remainder = subtract(b, power(x, k)) if not x.is_zero else b
        if remainder is None:
            return None
        if remainder.is_zero:
            return x
        l = remainder.min_cycle_len()
        if trace is not None:
            trace.append((remainder, l))
        x = add(x, cycle(l))


def solve_injective_perm(
    p: Polynomial,
    b: Fdds,
    trace: Optional[list] = None,
) -> Optional[Fdds]:
    """The unique X with P(X) = B for injective P, or None.  Greedy: append
    the shortest cycle of B - P(X) until the remainder vanishes."""
    _require_perm(b, "B")
    if not classify_perm_poly(p).injective:
        raise ValueError("polynomial is not injective")
    b = subtract(b, p.constant)
    if b is None:
        return None
    p = p.without_constant()
    x = ZERO
    while True:
        try:
            remainder = subtract(b, eval_poly(p, x, budget=b.size))
        except SizeBudgetExceeded:
            return None
        if remainder is None:
            return None
        if remainder.is_zero:
            return x
        l = remainder.min_cycle_len()
        if trace is not None:
            trace.append((remainder, l))
        x = add(x, cycle(l))


def is_pseudo_cancelable(a: Fdds) -> bool:
    """True iff every cycle length of a is a multiple of the smallest one."""
    if a.is_zero:
        return False
    g = a.min_cycle_len()
    return all(l % g == 0 for l in a.cycle_lengths())


def _mult_of_len(value: Fdds, length: int) -> int:
    return sum(m for c, m in value.comps if c.cycle_len == length)


def divide_pseudo_cancelable(
    b: Fdds,
    a: Fdds,
    diagnostics: Optional[list] = None,
) -> Optional[Fdds]:
    """Solve AX = B for permutations with A pseudo-cancelable.

    Returns the solution with the maximum number of connected components
    (every picked cycle length is the anti-lcm of ell(A) and the current
    shortest remainder length), or None."""
    _require_perm(b, "B")
    _require_perm(a, "A")
    if a.is_zero:
        raise ValueError("divisor must be nonzero")
    if not is_pseudo_cancelable(a):
        raise ValueError("divisor is not pseudo-cancelable")

    def fail(reason: str) -> None:
        if diagnostics is not None:
            diagnostics.append(reason)

    g = a.min_cycle_len()
    x = ZERO
    remainder = b
    while not remainder.is_zero:
        l = remainder.min_cycle_len()
        if l % g:
            fail(f"shortest remainder length {l} is not a multiple of {g}")
            return None
        c = alcm(g, l)
        chunk = multiply(a, cycle(c))
        per_copy = _mult_of_len(chunk, l)
        have = _mult_of_len(remainder, l)
        if have % per_copy:
            fail(f"multiplicity {have} of C_{l} not divisible by {per_copy}")
            return None
        q = have // per_copy
        remainder = subtract(remainder, multiply(a, cycle(c, q)))
        if remainder is None:
            fail(f"removing {q} copies of C_{c} is not a submultiset step")
            return None
        x = add(x, cycle(c, q))
    return x


def solve_pseudo_inj_perm(
    p: Polynomial,
    b: Fdds,
    trace: Optional[list] = None,
    diagnostics: Optional[list] = None,
) -> Optional[Fdds]:
    """Solve P(X) = B for pseudo-injective P over permutations.

    Greedy: each iteration appends one cycle C_c with c the anti-lcm of the
    seed and the shortest remainder length; the result maximizes the number
    of connected components among all solutions."""
    _require_perm(b, "B")
    seed = classify_perm_poly(p)
    if not seed.pseudo_injective:
        raise ValueError("polynomial is not pseudo-injective")

    def fail(reason: str) -> None:
        if diagnostics is not None:
            diagnostics.append(reason)

    b = subtract(b, p.constant)
    if b is None:
        fail("constant term is not a submultiset of B")
        return None
    p = p.without_constant()
    x = ZERO
    while True:
        try:
            remainder = subtract(b, eval_poly(p, x, budget=b.size))
        except SizeBudgetExceeded:
            fail("partial evaluation exceeds |B|")
            return None
        if remainder is None:
            fail("partial evaluation is not a submultiset of B")
            return None
        if remainder.is_zero:
            return x
        l = remainder.min_cycle_len()
        if l % seed.g:
            fail(f"shortest remainder length {l} is not a multiple of {seed.g}")
            return None
        c = alcm(seed.g, l)
        if trace is not None:
            trace.append((remainder, c))
        x = add(x, cycle(c))


# ---------------------------------------------------------------------------
# Compact encoding: sorted (cycle length, multiplicity) pairs of big integers.


@dataclass(frozen=True, slots=True)
class CompactPerm:
    """Permutation as (len, mult) pairs, strictly ascending by len."""

    entries: tuple  # tuple of (len, mult)

    @staticmethod
    def make(pairs) -> "CompactPerm":
        counter: Counter = Counter()
        for l, m in pairs:
            if l < 1 or m < 0:
                raise ValueError("lengths must be >= 1 and multiplicities >= 0")
            counter[l] += m
        return CompactPerm(tuple(sorted((l, m) for l, m in counter.items() if m)))

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def size(self) -> int:
        return sum(l * m for l, m in self.entries)

    def min_len(self) -> int:
        if self.is_zero:
            raise ValueError("zero permutation has no cycles")
        return self.entries[0][0]

    def lengths(self) -> set[int]:
        return {l for l, _ in self.entries}

    def mult_of(self, length: int) -> int:
        return dict(self.entries).get(length, 0)


COMPACT_ZERO = CompactPerm(())
COMPACT_ONE = CompactPerm(((1, 1),))


def encode(a: Fdds) -> CompactPerm:
    """Compact encoding of an explicit permutation."""
    _require_perm(a, "A")
    return CompactPerm.make((c.cycle_len, m) for c, m in a.comps)


def decode(a: CompactPerm, max_states: int = 10**6) -> Fdds:
    """Explicit permutation of a compact one; guarded against blow-up."""
    if a.size > max_states:
        raise ValueError(f"decoding would need {a.size} states")
    counter = Counter({pure_cycle(l): m for l, m in a.entries})
    return Fdds.from_counter(counter)


def compact_add(a: CompactPerm, b: CompactPerm) -> CompactPerm:
    return CompactPerm.make(a.entries + b.entries)


def compact_subtract(a: CompactPerm, b: CompactPerm) -> Optional[CompactPerm]:
    counter = Counter(dict(a.entries))
    for l, m in b.entries:
        counter[l] -= m
        if counter[l] < 0:
            return None
    return CompactPerm.make(counter.items())


def compact_is_submultiset(a: CompactPerm, b: CompactPerm) -> bool:
    return compact_subtract(b, a) is not None


def compact_multiply(a: CompactPerm, x: CompactPerm) -> CompactPerm:
    """Pairwise products: C_p * C_q = gcd(p,q) copies of C_lcm(p,q)."""
    counter: Counter = Counter()
    for l1, m1 in a.entries:
        for l2, m2 in x.entries:
            counter[lcm(l1, l2)] += gcd(l1, l2) * m1 * m2
    return CompactPerm.make(counter.items())


def compact_power(a: CompactPerm, k: int) -> CompactPerm:
    if k < 1:
        raise ValueError("exponent must be >= 1")
    result = a
    for _ in range(k - 1):
        result = compact_multiply(result, a)
    return result


@dataclass(frozen=True, slots=True)
class CompactPoly:
    """P(X) = sum coeffs[i] * X^i with CompactPerm coefficients."""

    coeffs: tuple  # tuple of CompactPerm

    @staticmethod
    def make(coeffs) -> "CompactPoly":
        cs = list(coeffs) or [COMPACT_ZERO]
        while len(cs) > 1 and cs[-1].is_zero:
            cs.pop()
        return CompactPoly(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant(self) -> CompactPerm:
        return self.coeffs[0]

    def without_constant(self) -> "CompactPoly":
        return CompactPoly.make((COMPACT_ZERO,) + self.coeffs[1:])


def encode_poly(p: Polynomial) -> CompactPoly:
    return CompactPoly.make(encode(c) for c in p.coeffs)


def compact_eval(p: CompactPoly, x: CompactPerm) -> CompactPerm:
    result = p.coeffs[0]
    xp = None
    for i, coeff in enumerate(p.coeffs):
        if i == 0:
            continue
        xp = x if xp is None else compact_multiply(xp, x)
        if not coeff.is_zero:
            result = compact_add(result, compact_multiply(coeff, xp))
    return result


def classify_compact_poly(p: CompactPoly) -> Seed:
    lengths: set[int] = set()
    for i, coeff in enumerate(p.coeffs):
        if i > 0:
            lengths |= coeff.lengths()
    if not lengths:
        raise ValueError("polynomial has no non-constant coefficient")
    return _classify_lengths(lengths)


def solve_pseudo_inj_perm_compact(
    p: CompactPoly,
    b: CompactPerm,
    trace: Optional[list] = None,
    diagnostics: Optional[list] = None,
) -> Optional[CompactPerm]:
    """Compact-encoding pseudo-injective solver.

    Same greedy as the explicit solver, but each iteration appends q copies
    of the picked cycle at once, with q found by binary search on the
    predicate "P(X + q*C_c) is still a submultiset of B"."""
    seed = classify_compact_poly(p)
    if not seed.pseudo_injective:
        raise ValueError("polynomial is not pseudo-injective")

    def fail(reason: str) -> None:
        if diagnostics is not None:
            diagnostics.append(reason)

    b = compact_subtract(b, p.constant)
    if b is None:
        fail("constant term is not a submultiset of B")
        return None
    p = p.without_constant()

    def feasible(x: CompactPerm) -> bool:
        return compact_is_submultiset(compact_eval(p, x), b)

    x = COMPACT_ZERO
    while True:
        remainder = compact_subtract(b, compact_eval(p, x))
        if remainder is None:
            fail("partial evaluation is not a submultiset of B")
            return None
        if remainder.is_zero:
            return x
        l = remainder.min_len()
        if l % seed.g:
            fail(f"shortest remainder length {l} is not a multiple of {seed.g}")
            return None
        c = alcm(seed.g, l)

        def with_copies(q: int) -> CompactPerm:
            return compact_add(x, CompactPerm.make([(c, q)]))

        probe = compact_subtract(compact_eval(p, with_copies(1)), compact_eval(p, x))
        per_copy = probe.mult_of(l) if probe is not None else 0
        if per_copy == 0 or not feasible(with_copies(1)):
            fail(f"appending C_{c} does not consume any C_{l} within B")
            return None
        lo, hi = 1, max(1, remainder.mult_of(l) // per_copy)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if feasible(with_copies(mid)):
                lo = mid
            else:
                hi = mid - 1
        if trace is not None:
            trace.append((remainder, c, lo))
        x = with_copies(lo)
