"""Brute-force enumeration oracle.

Enumerates every FDDS up to isomorphism with a bounded number of states, by
composing connected components from rooted trees (the fast strategy) or by
sweeping all function tables (the independent cross-check strategy), and
finds all solutions of a polynomial equation by exhaustion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .core import (
    Component,
    Fdds,
    LEAF,
    Polynomial,
    ZERO,
    add,
    canonicalize,
    eval_poly,
    single,
    tree_size,
)

_rooted_memo: dict[int, tuple] = {}
_forest_memo: dict[int, tuple] = {}


def rooted_trees(n: int) -> tuple:
    """All rooted unordered trees with exactly n nodes (canonical form)."""
    if n < 1:
        raise ValueError("need at least one node")
    result = _rooted_memo.get(n)
    if result is None:
        if n == 1:
            result = (LEAF,)
        else:
            result = tuple(tree_forests(n - 1))
        _rooted_memo[n] = result
    return result


def tree_forests(total: int) -> tuple:
    """All multisets of rooted trees with the given total node count, as
    sorted tuples (so each multiset is also a canonical tree body)."""
    result = _forest_memo.get(total)
    if result is None:
        items = [
            t for s in range(1, total + 1) for t in rooted_trees(s)
        ]

        def rec(remaining: int, start: int):
            if remaining == 0:
                yield ()
                return
            for i in range(start, len(items)):
                s = tree_size(items[i])
                if s <= remaining:
                    for rest in rec(remaining - s, i):
                        yield rest + (items[i],)

        result = tuple(tuple(sorted(f)) for f in rec(total, 0))
        _forest_memo[total] = result
    return result


_component_memo: dict[int, tuple] = {}


def connected_components(n: int) -> tuple:
    """All connected FDDSs (components) with exactly n states."""
    result = _component_memo.get(n)
    if result is None:
        found = set()
        for cycle_len in range(1, n + 1):
            for sizes in _compositions(n, cycle_len):
                for trees in iter_product(*(rooted_trees(s) for s in sizes)):
                    found.add(Component.make(cycle_len, trees))
        result = tuple(sorted(found))
        _component_memo[n] = result
    return result


def _compositions(total: int, parts: int):
    """Ordered tuples of `parts` positive integers summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


_size_memo: dict[int, tuple] = {}


def fdds_of_size(n: int) -> tuple:
    """All FDDSs with exactly n states, composed from components."""
    result = _size_memo.get(n)
    if result is None:
        items = [
            c for s in range(1, n + 1) for c in connected_components(s)
        ]

        def rec(remaining: int, start: int):
            if remaining == 0:
                yield ZERO
                return
            for i in range(start, len(items)):
                s = items[i].size
                if s <= remaining:
                    for rest in rec(remaining - s, i):
                        yield add(rest, single(items[i]))

        result = tuple(rec(n, 0))
        _size_memo[n] = result
    return result


@dataclass(frozen=True, slots=True)
class OracleIndex:
    """The complete catalog of FDDSs with at most max_states states."""

    max_states: int
    catalog: tuple

    def of_size(self, n: int) -> tuple:
        return tuple(v for v in self.catalog if v.size == n)


def enumerate_fdds(max_states: int, limit: int = 10) -> OracleIndex:
    """Catalog by component composition (the fast strategy)."""
    if max_states > limit:
        raise ValueError(f"max_states {max_states} exceeds the limit {limit}")
    catalog = []
    for n in range(1, max_states + 1):
        catalog.extend(fdds_of_size(n))
    return OracleIndex(max_states=max_states, catalog=tuple(catalog))


def enumerate_fdds_sweep(max_states: int, limit: int = 7) -> OracleIndex:
    """Catalog by sweeping all function tables (the cross-check strategy)."""
    if max_states > limit:
        raise ValueError(f"max_states {max_states} exceeds the limit {limit}")
    catalog = []
    for n in range(1, max_states + 1):
        seen = set()
        for table in iter_product(range(n), repeat=n):
            seen.add(canonicalize(table))
        catalog.extend(sorted(seen, key=lambda v: v.comps))
    return OracleIndex(max_states=max_states, catalog=tuple(catalog))


def oracle_solve(p: Polynomial, b: Fdds, max_states: int) -> set:
    """All X with at most max_states states and eval_poly(P, X) = B.

    Only the sizes s with predicted size |P| at s equal to |B| need to be
    evaluated, since sizes multiply and add exactly."""
    solutions = set()
    if p.size_at(0) == b.size and eval_poly(p, ZERO) == b:
        solutions.add(ZERO)
    for s in range(1, max_states + 1):
        if p.size_at(s) != b.size:
            continue
        for x in fdds_of_size(s):
            if eval_poly(p, x) == b:
                solutions.add(x)
    return solutions
