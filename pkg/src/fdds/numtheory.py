"""Integer kernels: anti-lcm and the delta/alpha/beta sequences.

The anti-lcm ``alcm(a, b)`` is the smallest c with lcm(a, c) = b, defined
whenever a divides b.  It is computed with gcd arithmetic only, never by
factoring.  The delta/alpha/beta sequences build collision witnesses for
non-injective polynomials over permutations.
"""

from __future__ import annotations

from math import gcd, lcm, prod
from typing import Iterable, Sequence


def _check_divides(a: int, b: int) -> None:
    if a < 1 or b < 1:
        raise ValueError("arguments must be positive")
    if b % a:
        raise ValueError(f"{a} does not divide {b}")


def alcm(a: int, b: int) -> int:
    """Smallest c with lcm(a, c) = b, via the closed form gcd((b/a)^k, b)
    with k = ceil(log2 b).  Requires a | b."""
    _check_divides(a, b)
    if b == 1:
        return 1
    k = max(1, (b - 1).bit_length())
    return gcd((b // a) ** k, b)


def alcm_iter(a: int, b: int, trace: list[int] | None = None) -> int:
    """Same value as alcm, by the squaring/gcd fixpoint loop.

    When ``trace`` is given, every value taken by the running result is
    appended to it (the final repeat included)."""
    _check_divides(a, b)
    res1 = b // a
    if trace is not None:
        trace.append(res1)
    res2 = None
    while res1 != res2:
        res2 = res1
        res1 = gcd(b, res1 * res1)
        if trace is not None and res1 != res2:
            trace.append(res1)
    if trace is not None:
        trace.append(res1)
    return res1


def quotient_shape(a: int, b: int, c: int) -> int:
    """Given lcm(a, c) = b, return c / alcm(a, b): an integer dividing a and
    coprime with alcm(a, b)."""
    if lcm(a, c) != b:
        raise ValueError(f"lcm({a}, {c}) != {b}")
    return c // alcm(a, b)


def delta(j: Iterable[int]) -> int:
    """delta of an integer set, by inserting elements in ascending order:
    delta(J + {a}) = gcd(a, lcm(J)) * delta(J), delta({}) = 1.

    The value does not depend on the insertion order; ascending order is the
    canonical one."""
    result = 1
    running_lcm = 1
    for a in sorted(set(j)):
        if a <= 1:
            raise ValueError("elements must be > 1")
        result *= gcd(a, running_lcm)
        running_lcm = lcm(running_lcm, a)
    return result


def _check_subset(n: Sequence[int], i: Sequence[int]) -> tuple[set, set]:
    ns, js = set(n), set(i)
    if any(a <= 1 for a in ns):
        raise ValueError("elements must be > 1")
    if not js <= ns:
        raise ValueError("I must be a subset of N")
    return ns, js


def alpha(n: Iterable[int], i: Iterable[int]) -> int:
    """alpha_I = delta_N * prod(N); constant over the subsets I of N."""
    ns, _ = _check_subset(list(n), list(i))
    return delta(ns) * prod(ns)


def beta(n: Iterable[int], i: Iterable[int]) -> int:
    """beta_I = alpha_I + (-1)^|I| * delta_I * prod(N - I)."""
    ns, js = _check_subset(list(n), list(i))
    sign = -1 if len(js) % 2 else 1
    return alpha(ns, js) + sign * delta(js) * prod(ns - js)
