"""Canonical values of the semiring of finite discrete dynamical systems.

An FDDS is a finite set with a total transition function, i.e. a functional
digraph.  Every value here is kept in a canonical form so that structural
equality coincides with isomorphism:

* a transient in-tree is a nested tuple of sorted child keys (the empty tuple
  is a single node);
* a connected component is a cycle length together with the cyclic sequence of
  in-trees rooted on the cycle, rotated to the lexicographically minimal
  position;
* an FDDS is a sorted multiset of components with multiplicities.

Sum is disjoint union, product is the direct product of the state graphs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, Iterable, Optional, Sequence

# ---------------------------------------------------------------------------
# Transient trees: nested tuples, children sorted.

Tree = tuple
LEAF: Tree = ()

_depth_memo: dict[Tree, int] = {LEAF: 0}
_size_memo: dict[Tree, int] = {LEAF: 1}


def tree_of(children: Iterable[Tree]) -> Tree:
    """Canonical rooted unordered tree with the given child subtrees."""
    return tuple(sorted(children))


def tree_depth(t: Tree) -> int:
    try:
        return _depth_memo[t]
    except KeyError:
        d = 1 + max(tree_depth(c) for c in t)
        _depth_memo[t] = d
        return d


def tree_size(t: Tree) -> int:
    try:
        return _size_memo[t]
    except KeyError:
        s = 1 + sum(tree_size(c) for c in t)
        _size_memo[t] = s
        return s


# ---------------------------------------------------------------------------
# Components and FDDS values.


@dataclass(frozen=True, slots=True)
class Component:
    """One connected component: a cycle with in-trees rooted on it.

    ``trees[i]`` is the in-tree rooted at cycle node ``i`` (the root is the
    cycle node itself), with ``f(node i) = node (i+1) mod cycle_len``.  The
    sequence is stored at its lexicographically minimal rotation, which makes
    the pair ``(cycle_len, trees)`` a canonical key under isomorphism.
    """

    cycle_len: int
    trees: tuple

    @staticmethod
    def make(cycle_len: int, trees: Sequence[Tree]) -> "Component":
        if cycle_len < 1 or len(trees) != cycle_len:
            raise ValueError("need exactly cycle_len trees")
        trees = tuple(trees)
        if cycle_len > 1 and any(t != trees[0] for t in trees):
            trees = min(
                trees[r:] + trees[:r] for r in range(cycle_len)
            )
        return Component(cycle_len, trees)

    @property
    def canonical_key(self) -> tuple:
        return (self.cycle_len, self.trees)

    @property
    def size(self) -> int:
        return sum(tree_size(t) for t in self.trees)

    @property
    def tree_depth_max(self) -> int:
        return max(tree_depth(t) for t in self.trees)

    @property
    def is_cycle(self) -> bool:
        return all(t == LEAF for t in self.trees)

    def __lt__(self, other: "Component") -> bool:
        return self.canonical_key < other.canonical_key


def pure_cycle(n: int) -> Component:
    if n < 1:
        raise ValueError("cycle length must be positive")
    return Component(n, (LEAF,) * n)


@dataclass(frozen=True, slots=True)
class Fdds:
    """A canonical FDDS value: sorted multiset of components."""

    comps: tuple  # tuple of (Component, multiplicity), sorted by key

    @staticmethod
    def from_counter(counter: Counter) -> "Fdds":
        items = sorted(
            ((c, m) for c, m in counter.items() if m > 0),
            key=lambda cm: cm[0].canonical_key,
        )
        return Fdds(tuple(items))

    def counter(self) -> Counter:
        return Counter(dict(self.comps))

    @property
    def size(self) -> int:
        return sum(c.size * m for c, m in self.comps)

    @property
    def num_components(self) -> int:
        return sum(m for _, m in self.comps)

    @property
    def is_zero(self) -> bool:
        return not self.comps

    @property
    def is_permutation(self) -> bool:
        return all(c.is_cycle for c, _ in self.comps)

    def min_cycle_len(self) -> int:
        """ell(A): the smallest cycle length.  Undefined on the zero value."""
        if self.is_zero:
            raise ValueError("zero FDDS has no cycles")
        return min(c.cycle_len for c, _ in self.comps)

    def cycle_lengths(self) -> set[int]:
        """L(A): the set of cycle lengths."""
        return {c.cycle_len for c, _ in self.comps}

    def cycle_node_count(self) -> int:
        return sum(c.cycle_len * m for c, m in self.comps)

    def max_tree_depth(self) -> int:
        if self.is_zero:
            return 0
        return max(c.tree_depth_max for c, _ in self.comps)

    def components_iter(self) -> Iterable[Component]:
        for c, m in self.comps:
            for _ in range(m):
                yield c

    def __add__(self, other: "Fdds") -> "Fdds":
        return add(self, other)

    def __mul__(self, other: "Fdds") -> "Fdds":
        return multiply(self, other)

    def __pow__(self, k: int) -> "Fdds":
        return power(self, k)

    def __str__(self) -> str:
        from .formats import format_fdds

        return format_fdds(self)


ZERO = Fdds(())


def single(comp: Component, mult: int = 1) -> Fdds:
    return Fdds.from_counter(Counter({comp: mult}))


def cycle(n: int, mult: int = 1) -> Fdds:
    """The permutation mult * C_n."""
    return single(pure_cycle(n), mult)


ONE = cycle(1)


class SizeBudgetExceeded(Exception):
    """Raised when an evaluation would exceed the caller's size budget."""


# ---------------------------------------------------------------------------
# Canonicalization of raw function tables.


def canonicalize(succ: Sequence[int]) -> Fdds:
    """Canonical FDDS of a successor table ``f(i) = succ[i]``."""
    n = len(succ)
    for v in succ:
        if not 0 <= v < n:
            raise ValueError(f"successor {v} out of range [0, {n})")
    if n == 0:
        return ZERO

    on_cycle = bytearray(n)
    state = bytearray(n)  # 0 new, 1 on current path, 2 done
    for v in range(n):
        if state[v]:
            continue
        path = []
        u = v
        while state[u] == 0:
            state[u] = 1
            path.append(u)
            u = succ[u]
        if state[u] == 1:
            i = path.index(u)
            for w in path[i:]:
                on_cycle[w] = 1
        for w in path:
            state[w] = 2

    children: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for v in range(n):
        if not on_cycle[v]:
            children[succ[v]].append(v)
            indeg[v] = 0
    for v in range(n):
        indeg[v] = len(children[v])

    # Tree keys bottom-up (Kahn order over the transient forest).
    key: list[Optional[Tree]] = [None] * n
    queue = [v for v in range(n) if indeg[v] == 0]
    while queue:
        v = queue.pop()
        key[v] = tuple(sorted(key[c] for c in children[v]))
        if not on_cycle[v]:
            p = succ[v]
            indeg[p] -= 1
            if indeg[p] == 0:
                queue.append(p)

    counter: Counter = Counter()
    seen = bytearray(n)
    for v in range(n):
        if on_cycle[v] and not seen[v]:
            order = [v]
            seen[v] = 1
            u = succ[v]
            while u != v:
                order.append(u)
                seen[u] = 1
                u = succ[u]
            comp = Component.make(len(order), [key[w] for w in order])
            counter[comp] += 1
    return Fdds.from_counter(counter)


def component_table(comp: Component) -> list[int]:
    """A successor table realizing one component (cycle nodes first)."""
    L = comp.cycle_len
    succ = [(i + 1) % L for i in range(L)]

    def emit(tree: Tree, parent: int) -> None:
        for child in tree:
            idx = len(succ)
            succ.append(parent)
            emit(child, idx)

    for i, t in enumerate(comp.trees):
        emit(t, i)
    return succ


def to_table(value: Fdds) -> list[int]:
    """A successor table realizing the FDDS (one block per component copy)."""
    succ: list[int] = []
    for comp in value.components_iter():
        base = len(succ)
        succ.extend(base + v for v in component_table(comp))
    return succ


# ---------------------------------------------------------------------------
# Semiring operations.


def add(a: Fdds, b: Fdds) -> Fdds:
    return Fdds.from_counter(a.counter() + b.counter())


def subtract(a: Fdds, b: Fdds) -> Optional[Fdds]:
    """a - b, or None when b is not a submultiset of a."""
    ca, cb = a.counter(), b.counter()
    for comp, m in cb.items():
        if ca[comp] < m:
            return None
    return Fdds.from_counter(ca - cb)


def is_submultiset(a: Fdds, b: Fdds) -> bool:
    """True iff the components of a are a submultiset of those of b."""
    return subtract(b, a) is not None


@lru_cache(maxsize=None)
def _pair_product(c1: Component, c2: Component) -> tuple:
    """Product of two connected components, as ((Component, mult), ...)."""
    p, q = c1.cycle_len, c2.cycle_len
    g, m = gcd(p, q), lcm(p, q)
    if c1.is_cycle and c2.is_cycle:
        return ((pure_cycle(m), g),)
    if c2.is_cycle:
        # In-trees of the product repeat the in-trees of c1 periodically.
        comp = Component.make(m, c1.trees * (m // p))
        return ((comp, g),)
    if c1.is_cycle:
        comp = Component.make(m, c2.trees * (m // q))
        return ((comp, g),)
    t1 = component_table(c1)
    t2 = component_table(c2)
    n2 = len(t2)
    prod = [t1[i] * n2 + t2[j] for i in range(len(t1)) for j in range(n2)]
    return tuple(canonicalize(prod).comps)


@lru_cache(maxsize=65536)
def multiply(a: Fdds, b: Fdds) -> Fdds:
    """Direct product.  |a*b| = |a|*|b|; C_p * C_q = gcd(p,q) * C_lcm(p,q)."""
    counter: Counter = Counter()
    for c1, m1 in a.comps:
        for c2, m2 in b.comps:
            for comp, m in _pair_product(c1, c2):
                counter[comp] += m * m1 * m2
    return Fdds.from_counter(counter)


def power(a: Fdds, k: int) -> Fdds:
    if k < 1:
        raise ValueError("exponent must be >= 1")
    result = a
    for _ in range(k - 1):
        result = multiply(result, a)
    return result


def comps_len_div(a: Fdds, p: int) -> Fdds:
    """D_p(A): the components whose cycle length divides p (an endomorphism)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return Fdds(tuple((c, m) for c, m in a.comps if p % c.cycle_len == 0))


# ---------------------------------------------------------------------------
# Polynomials with FDDS coefficients.


@dataclass(frozen=True, slots=True)
class Polynomial:
    """P(X) = sum coeffs[i] * X^i; coeffs[0] is the constant term."""

    coeffs: tuple  # tuple of Fdds

    @staticmethod
    def make(coeffs: Sequence[Fdds]) -> "Polynomial":
        cs = list(coeffs) or [ZERO]
        while len(cs) > 1 and cs[-1].is_zero:
            cs.pop()
        return Polynomial(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant(self) -> Fdds:
        return self.coeffs[0]

    def nonconstant_coeffs(self) -> list[tuple[int, Fdds]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if i > 0 and not c.is_zero]

    def without_constant(self) -> "Polynomial":
        return Polynomial.make((ZERO,) + self.coeffs[1:])

    def size_at(self, x_size: int) -> int:
        return sum(c.size * x_size**i for i, c in enumerate(self.coeffs))


def eval_poly(p: Polynomial, x: Fdds, budget: Optional[int] = None) -> Fdds:
    """Evaluate P(X).  The result size is known up front from the operand
    sizes, so a budget overflow is detected before any product is formed."""
    if budget is not None and p.size_at(x.size) > budget:
        raise SizeBudgetExceeded(
            f"|P(X)| = {p.size_at(x.size)} exceeds budget {budget}"
        )
    return _eval_poly_cached(p, x)


@lru_cache(maxsize=65536)
def _eval_poly_cached(p: Polynomial, x: Fdds) -> Fdds:
    result = p.coeffs[0]
    xp = None
    for i, coeff in enumerate(p.coeffs):
        if i == 0:
            continue
        xp = x if xp is None else multiply(xp, x)
        if not coeff.is_zero:
            result = add(result, multiply(coeff, xp))
    return result


# ---------------------------------------------------------------------------
# Component orders, prefixes.


def compare_ct(c1: Component, c2: Component, depth: Optional[int] = None) -> int:
    """Total order on components: cycle length, then minimal unroll tree,
    then canonical key.  Returns -1 / 0 / 1."""
    if c1 == c2:
        return 0
    if c1.cycle_len != c2.cycle_len:
        return -1 if c1.cycle_len < c2.cycle_len else 1
    if not (c1.is_cycle and c2.is_cycle):
        from . import unroll

        if depth is None:
            depth = (
                c1.cycle_len
                + c2.cycle_len
                + max(c1.tree_depth_max, c2.tree_depth_max)
            )
        r = unroll.tree_cmp(
            unroll.min_unroll_cut_tree(c1, depth),
            unroll.min_unroll_cut_tree(c2, depth),
        )
        if r:
            return r
    k1, k2 = c1.canonical_key, c2.canonical_key
    return 0 if k1 == k2 else (-1 if k1 < k2 else 1)


CompOrder = Callable[[Component, Component], int]


def _sorted_components(x: Fdds, order: CompOrder) -> list[tuple[Component, int]]:
    import functools

    return sorted(x.comps, key=functools.cmp_to_key(lambda a, b: order(a[0], b[0])))


def prefix(x: Fdds, i: int, order: CompOrder = compare_ct) -> Fdds:
    """The first i connected components of x under the given order."""
    if i < 0:
        raise ValueError("prefix length must be >= 0")
    counter: Counter = Counter()
    left = i
    for comp, mult in _sorted_components(x, order):
        if left <= 0:
            break
        take = min(mult, left)
        counter[comp] += take
        left -= take
    return Fdds.from_counter(counter)


def super_prefix(x: Fdds, i: int, order: CompOrder = compare_ct) -> Fdds:
    """The first i distinct component classes of x, with multiplicities."""
    if i < 0:
        raise ValueError("prefix length must be >= 0")
    counter: Counter = Counter()
    for comp, mult in _sorted_components(x, order)[:i]:
        counter[comp] += mult
    return Fdds.from_counter(counter)
