"""Unroll cuts and the levelwise tree algebra.

Unwinding a component backward from its cycle yields one infinite tree per
cycle node (the transient trees hook periodically onto the infinite spine);
cutting those trees at depth d gives a finite forest.  Forests with disjoint
union and the levelwise tree product form a commutative semiring, and cutting
is a semiring morphism, which lets polynomial equations over FDDSs be solved
over forests of finite trees.

Trees are hash-consed: structurally equal trees are the same object, so
equality is identity and every expensive operation (product, comparison,
cut) is memoized by object id.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from itertools import product as iter_product
from typing import Optional, Sequence

from .core import Component, Fdds, Tree, tree_of

sys.setrecursionlimit(max(sys.getrecursionlimit(), 300_000))


class UTree:
    """An immutable rooted unordered tree of bounded depth (interned)."""

    __slots__ = ("children", "depth", "size", "uid")

    def __init__(self, children: tuple, depth: int, size: int, uid: int):
        self.children = children
        self.depth = depth
        self.size = size
        self.uid = uid

    def __repr__(self) -> str:
        return "(" + "".join(map(repr, self.children)) + ")"


_intern: dict = {}
_cut_memo: dict = {}
_cmp_memo: dict = {}
_prod_memo: dict = {}


def utree(children) -> UTree:
    """The canonical tree with the given child subtrees.

    Children are stored sorted by uid: cheap, and canonical because
    subtrees are interned before their parent."""
    kids = sorted(children, key=lambda c: c.uid)
    key = tuple(c.uid for c in kids)
    node = _intern.get(key)
    if node is None:
        kids = tuple(kids)
        depth = 1 + max((c.depth for c in kids), default=-1)
        size = 1 + sum(c.size for c in kids)
        node = UTree(kids, depth, size, len(_intern))
        _intern[key] = node
    return node


_sorted_kids_memo: dict = {}


def sorted_children(t: UTree) -> tuple:
    """Children of t in the tree order (computed lazily; the stored child
    order is by uid)."""
    result = _sorted_kids_memo.get(t.uid)
    if result is None:
        result = tuple(sorted(t.children, key=cmp_to_key(tree_cmp)))
        _sorted_kids_memo[t.uid] = result
    return result


def cut(t: UTree, d: int) -> UTree:
    """Restriction of t to the nodes of depth at most d."""
    if t.depth <= d:
        return t
    key = (t.uid, d)
    result = _cut_memo.get(key)
    if result is None:
        if d == 0:
            result = SINGLE
        else:
            result = utree(cut(c, d - 1) for c in t.children)
        _cut_memo[key] = result
    return result


def tree_cmp(a: UTree, b: UTree) -> int:
    """Total order on trees: compare the depth-d cuts (d = min of the two
    depths) by breadth-first refinement, with the shallower tree first on a
    tie.  Compatible with the product and with cutting (tested exhaustively
    on small trees)."""
    if a is b:
        return 0
    key = (a.uid, b.uid)
    result = _cmp_memo.get(key)
    if result is None:
        d = min(a.depth, b.depth)
        ca, cb = cut(a, d), cut(b, d)
        if ca is cb:
            result = -1 if a.depth < b.depth else 1
        else:
            result = _cmp_same_depth(ca, cb)
        _cmp_memo[key] = result
        _cmp_memo[(b.uid, a.uid)] = -result
    return result


def _cmp_same_depth(x: UTree, y: UTree) -> int:
    d = x.depth
    if d > 0:
        r = tree_cmp(cut(x, d - 1), cut(y, d - 1))
        if r:
            return r
    if x.size != y.size:
        return -1 if x.size < y.size else 1
    for u, v in zip(sorted_children(x), sorted_children(y)):
        r = tree_cmp(u, v)
        if r:
            return r
    raise AssertionError("distinct interned trees compared equal")


def tree_key(t: UTree):
    return cmp_to_key(tree_cmp)(t)


SINGLE = utree(())


def path(d: int) -> UTree:
    """The bare path of depth d (cut of a pure cycle's unroll)."""
    node = SINGLE
    for _ in range(d):
        node = utree((node,))
    return node


def tree_product(t1: UTree, t2: UTree) -> UTree:
    """Levelwise product: nodes are same-depth pairs, the root pairs with
    the root; depth of the result is the minimum of the factor depths."""
    if t1.uid > t2.uid:
        t1, t2 = t2, t1
    key = (t1.uid, t2.uid)
    result = _prod_memo.get(key)
    if result is None:
        if t1.depth == 0 or t2.depth == 0:
            result = SINGLE
        else:
            result = utree(
                tree_product(c1, c2)
                for c1 in t1.children
                for c2 in t2.children
            )
        _prod_memo[key] = result
    return result


def tree_power(t: UTree, k: int) -> UTree:
    result = t
    for _ in range(k - 1):
        result = tree_product(result, t)
    return result


# ---------------------------------------------------------------------------
# Forests.


@dataclass(frozen=True, slots=True)
class Forest:
    """Multiset of trees: (tree, multiplicity) pairs in increasing order."""

    trees: tuple

    @staticmethod
    def make(items) -> "Forest":
        # trees are interned, so sorting by uid gives a canonical (and
        # cheap) representation; the tree order is only needed in min_tree
        counter = items if isinstance(items, Counter) else Counter(items)
        pairs = sorted(
            ((t, m) for t, m in counter.items() if m > 0),
            key=lambda tm: tm[0].uid,
        )
        return Forest(tuple(pairs))

    def counter(self) -> Counter:
        return Counter(dict(self.trees))

    @property
    def is_zero(self) -> bool:
        return not self.trees

    @property
    def num_trees(self) -> int:
        return sum(m for _, m in self.trees)

    @property
    def depth(self) -> int:
        return max(t.depth for t, _ in self.trees)

    def min_tree(self) -> UTree:
        if self.is_zero:
            raise ValueError("empty forest has no trees")
        return _forest_min_tree(self)


EMPTY_FOREST = Forest(())


@lru_cache(maxsize=65536)
def _forest_min_tree(f: Forest) -> UTree:
    return min((t for t, _ in f.trees), key=tree_key)


def forest_add(a: Forest, b: Forest) -> Forest:
    return Forest.make(a.counter() + b.counter())


def forest_subtract(a: Forest, b: Forest) -> Optional[Forest]:
    counter = a.counter()
    for t, m in b.trees:
        counter[t] -= m
        if counter[t] < 0:
            return None
    return Forest.make(counter)


def forest_is_submultiset(a: Forest, b: Forest) -> bool:
    return forest_subtract(b, a) is not None


@lru_cache(maxsize=65536)
def forest_multiply(a: Forest, b: Forest) -> Forest:
    counter: Counter = Counter()
    for t1, m1 in a.trees:
        for t2, m2 in b.trees:
            counter[tree_product(t1, t2)] += m1 * m2
    return Forest.make(counter)


def forest_power(a: Forest, k: int) -> Forest:
    result = a
    for _ in range(k - 1):
        result = forest_multiply(result, a)
    return result


def tall_trees(f: Forest, d: int) -> Forest:
    """The subforest of trees of depth at least d."""
    return Forest(tuple((t, m) for t, m in f.trees if t.depth >= d))


# ---------------------------------------------------------------------------
# Unroll cuts of FDDS components.


_utree_of_memo: dict = {}


def _utree_of(t: Tree, budget: int) -> UTree:
    """The transient tree t (nested tuples) as a UTree of depth <= budget."""
    key = (t, budget)
    result = _utree_of_memo.get(key)
    if result is None:
        if budget <= 0:
            result = SINGLE
        else:
            result = utree(_utree_of(c, budget - 1) for c in t)
        _utree_of_memo[key] = result
    return result


_unroll_memo: dict = {}


def _unroll_component(comp: Component, d: int) -> tuple:
    """The d-cuts of the unroll trees of one component (one per cycle node).

    The tree rooted at cycle node j has, at spine depth k, the spine
    continuation plus the transient children of cycle node (j - k) mod L."""
    key = (comp, d)
    result = _unroll_memo.get(key)
    if result is None:
        L = comp.cycle_len
        trees = []
        for j in range(L):
            node = None
            for k in range(d, -1, -1):
                kids = [] if node is None else [node]
                budget = d - k - 1
                if budget >= 0:
                    kids.extend(
                        _utree_of(c, budget) for c in comp.trees[(j - k) % L]
                    )
                node = utree(kids)
            trees.append(node)
        result = tuple(trees)
        _unroll_memo[key] = result
    return result


@lru_cache(maxsize=65536)
def unroll_cut(a: Fdds, d: int) -> Forest:
    """The depth-d cut of the unroll of a: one tree per cycle node.

    Cutting at any fixed depth is a semiring morphism."""
    if d < 0:
        raise ValueError("depth must be >= 0")
    counter: Counter = Counter()
    for comp, m in a.comps:
        for t in _unroll_component(comp, d):
            counter[t] += m
    return Forest.make(counter)


def min_unroll_cut_tree(comp: Component, d: int) -> UTree:
    """The order-minimal tree of the depth-d unroll cut of one component."""
    return min(_unroll_component(comp, d), key=tree_key)


def sufficient_depth(b: Fdds) -> int:
    """A cut depth at which the forest equation is equivalent to the FDDS
    equation: 2 * alpha^2 + h, with alpha the cycle-node count of B and h
    its maximum transient-tree depth."""
    alpha = b.cycle_node_count()
    return 2 * alpha * alpha + b.max_tree_depth()


# ---------------------------------------------------------------------------
# Division and roots of trees.


_div_memo: dict = {}


def _divide_search(b: UTree, a: UTree) -> Optional[UTree]:
    key = (b.uid, a.uid)
    if key in _div_memo:
        return _div_memo[key]
    result = _divide_search_raw(b, a)
    _div_memo[key] = result
    return result


def _divide_search_raw(b: UTree, a: UTree) -> Optional[UTree]:
    if b.depth == 0:
        return SINGLE
    if a.depth < b.depth:
        return None
    na, nb = len(a.children), len(b.children)
    if na == 0 or nb % na:
        return None
    kids = _match_quotient_children(Counter(b.children), a, nb // na)
    return utree(kids) if kids is not None else None


def _match_quotient_children(
    remaining: Counter, a: UTree, slots: int
) -> Optional[list]:
    """Children of the quotient, deepest first with backtracking.

    The deepest remaining child of b is the product of some child of a with
    the deepest undiscovered quotient child (every child of a tops out at
    depth(b) - 1 or deeper), so its quotient by a child of a is
    depth-unambiguous."""
    if slots == 0:
        return [] if not remaining else None
    if not remaining:
        return None
    dmax = max(t.depth for t in remaining)
    b_deep = min((t for t in remaining if t.depth == dmax), key=tree_key)
    tried = set()
    for ac in a.children:
        if ac.uid in tried or ac.depth < dmax:
            continue
        tried.add(ac.uid)
        xc = _divide_search(b_deep, ac)
        if xc is None:
            continue
        rest_remaining = Counter(remaining)
        feasible = True
        for aj in a.children:
            p = tree_product(aj, xc)
            rest_remaining[p] -= 1
            if rest_remaining[p] < 0:
                feasible = False
                break
            if rest_remaining[p] == 0:
                del rest_remaining[p]
        if not feasible:
            continue
        rest = _match_quotient_children(rest_remaining, a, slots - 1)
        if rest is not None:
            return [xc] + rest
    return None


def tree_divide(b: UTree, a: UTree) -> Optional[UTree]:
    """The x with a * x = b and depth(x) = depth(b), or None.  The greedy
    search result is verified by re-multiplication before being returned."""
    x = _divide_search(b, a)
    if x is None or tree_product(a, x) is not b:
        return None
    return x


def _int_kth_root(n: int, k: int) -> Optional[int]:
    m = round(n ** (1.0 / k))
    for c in (m - 1, m, m + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def tree_kth_root(b: UTree, k: int) -> Optional[UTree]:
    """The x with x^k = b, or None; verified by re-multiplication."""
    if k < 1:
        raise ValueError("k must be >= 1")
    x = _root_search(b, k)
    if x is None or tree_power(x, k) is not b:
        return None
    return x


_root_memo: dict = {}


def _root_search(b: UTree, k: int) -> Optional[UTree]:
    if k == 1 or b.depth == 0:
        return b
    key = (b.uid, k)
    if key in _root_memo:
        return _root_memo[key]
    result = _root_search_raw(b, k)
    _root_memo[key] = result
    return result


def _expand_power(kids, k: int) -> Counter:
    expansion: Counter = Counter()
    for combo in iter_product(kids, repeat=k):
        t = combo[0]
        for c in combo[1:]:
            t = tree_product(t, c)
        expansion[t] += 1
    return expansion


def _root_search_raw(b: UTree, k: int) -> Optional[UTree]:
    nx = _int_kth_root(len(b.children), k)
    if nx is None or nx == 0:
        return None
    greedy = _root_greedy(b, k, nx)
    if greedy is not None:
        return greedy
    return _root_exhaustive(b, k, nx)


def _root_greedy(b: UTree, k: int, nx: int) -> Optional[UTree]:
    """Discover root children smallest-first: the minimal remaining child of
    b is the product of the new child with x1^(k-1)."""
    x1 = _root_search(min(b.children, key=tree_key), k)
    if x1 is None:
        return None
    kids = [x1]
    while True:
        remaining = Counter(b.children)
        for t, m in _expand_power(kids, k).items():
            remaining[t] -= m
            if remaining[t] < 0:
                return None
        remaining = +remaining
        if not remaining:
            return utree(kids) if len(kids) == nx else None
        if len(kids) >= nx:
            return None
        if k == 1:
            xnew: Optional[UTree] = min(remaining, key=tree_key)
        else:
            xnew = tree_divide(
                min(remaining, key=tree_key), tree_power(x1, k - 1)
            )
        if xnew is None:
            return None
        kids.append(xnew)


_MAX_ROOT_COMBOS = 200_000


def _root_exhaustive(b: UTree, k: int, nx: int) -> Optional[UTree]:
    """Fallback: every root child is a k-th root of some diagonal product
    among b's children, so search all size-nx multisets of those roots."""
    from itertools import combinations_with_replacement
    from math import comb

    candidates = sorted(
        {r.uid: r for t in set(b.children)
         if (r := _root_search(t, k)) is not None}.values(),
        key=tree_key,
    )
    if comb(len(candidates) + nx - 1, nx) > _MAX_ROOT_COMBOS:
        return None
    target = Counter(b.children)
    for combo in combinations_with_replacement(candidates, nx):
        if _expand_power(list(combo), k) == target:
            return utree(combo)
    return None


# ---------------------------------------------------------------------------
# Polynomial equations over forests.


def forest_eval(
    coeffs: Sequence[Forest],
    x: Forest,
    max_trees: Optional[int] = None,
) -> Optional[Forest]:
    """Evaluate sum coeffs[i] * x^i (coeffs[0] is the constant term).

    Tree counts multiply exactly, so a budget overflow is detected before
    any product is formed; None signals overflow."""
    if max_trees is not None:
        predicted = sum(
            c.num_trees * x.num_trees**i for i, c in enumerate(coeffs)
        )
        if predicted > max_trees:
            return None
    result = coeffs[0] if coeffs else EMPTY_FOREST
    xp = None
    for i, coeff in enumerate(coeffs):
        if i == 0:
            continue
        xp = x if xp is None else forest_multiply(xp, x)
        if not coeff.is_zero:
            result = forest_add(result, forest_multiply(coeff, xp))
    return result


def solve_forest_poly(
    coeffs: Sequence[Forest],
    b: Forest,
) -> Optional[Forest]:
    """Solve sum coeffs[i] * X^i = b over forests (the unique solution or
    None; polynomials over forests are injective).

    Trees of X are found deepest-first.  The first tree at the deepest
    remaining level is a k-th root of (min tall tree of the remainder) /
    (min tall tree of A_k), with k the smallest degree whose candidate x
    keeps P(X + x) inside b; later trees at the level come from division by
    (min tall tree of A_k) * x1^(k-1)."""
    return _solve_forest_poly_cached(tuple(coeffs), b)


@lru_cache(maxsize=65536)
def _solve_forest_poly_cached(
    coeffs: tuple,
    b: Forest,
) -> Optional[Forest]:
    b = forest_subtract(b, coeffs[0]) if coeffs else b
    if b is None:
        return None
    rest = [EMPTY_FOREST] + list(coeffs[1:])
    ks = [k for k in range(1, len(rest)) if not rest[k].is_zero]
    if not ks:
        return EMPTY_FOREST if b.is_zero else None

    x_counter: Counter = Counter()
    x = EMPTY_FOREST
    value: Optional[Forest] = EMPTY_FOREST
    while True:
        # the accepted trial below already computed P(X) and checked it
        # against b, so value is always a submultiset of b here
        remainder = forest_subtract(b, value)
        if remainder is None:
            return None
        if remainder.is_zero:
            return x
        d = remainder.depth
        t = tall_trees(remainder, d).min_tree()
        x_tall = tall_trees(x, d)
        options = []
        for k in ks:
            ak_tall = tall_trees(rest[k], d)
            if ak_tall.is_zero:
                continue
            a = ak_tall.min_tree()
            # t = a * xc^k when the new tree precedes every old tree at
            # this level, or t = a * x1^(k-1) * xc when it does not; both
            # shapes are possible, so try both and keep the minimal pick.
            q = tree_divide(t, a)
            if q is not None:
                options.append((tree_kth_root(q, k), k))
            if not x_tall.is_zero and k > 1:
                divisor = tree_product(a, tree_power(x_tall.min_tree(), k - 1))
                options.append((tree_divide(t, divisor), k))
        candidate = None
        for xc, _ in sorted(
            (o for o in options if o[0] is not None),
            key=lambda o: tree_key(o[0]),
        ):
            trial = Counter(x_counter)
            trial[xc] += 1
            trial_x = Forest.make(trial)
            trial_val = forest_eval(rest, trial_x, max_trees=b.num_trees)
            if trial_val is not None and forest_is_submultiset(trial_val, b):
                candidate = xc
                break
        if candidate is None:
            return None
        x_counter[candidate] += 1
        x, value = trial_x, trial_val


# ---------------------------------------------------------------------------
# Recognizing unroll cuts: periods and reconstruction.


def _utree_to_nested(t: UTree) -> Tree:
    return tree_of(_utree_to_nested(c) for c in t.children)


_spine_memo: dict = {}


def _spine_pattern(t: UTree) -> tuple:
    """The multisets of non-spine children along the maximal-depth path,
    one entry per spine depth, as nested-tuple transient trees.

    Stops at the first depth where the spine is ambiguous (two distinct
    maximal-depth children; ties broken by the canonical order)."""
    cached = _spine_memo.get(t.uid)
    if cached is not None:
        return cached
    pattern = []
    node = t
    depth_left = t.depth
    while True:
        kids = list(node.children)
        if not kids:
            pattern.append(())
            break
        spine = max(kids, key=lambda c: (c.depth, tree_key(c)))
        if spine.depth < depth_left - 1:
            raise ValueError("no consistent spine: tree is not an unroll cut")
        kids.remove(spine)
        pattern.append(tree_of(_utree_to_nested(c) for c in kids))
        node = spine
        depth_left -= 1
    result = tuple(pattern)
    _spine_memo[t.uid] = result
    return result


_period_memo: dict = {}


def min_period(t: UTree) -> int:
    """The smallest p such that t is the cut of the unroll of a component
    with cycle length p (pattern of transient trees p-periodic)."""
    cached = _period_memo.get(t.uid)
    if cached is not None:
        return cached
    d = t.depth
    pattern = _spine_pattern(t)
    for p in range(1, len(pattern) + 1):
        comp = _component_from_pattern(pattern[:p], p)
        if t in dict(_unroll_trees_as_counter(comp, d)):
            _period_memo[t.uid] = p
            return p
    raise ValueError("tree is not recognizable as an unroll cut")


def _unroll_trees_as_counter(comp: Component, d: int) -> Counter:
    return Counter(_unroll_component(comp, d))


def _component_from_pattern(entries: Sequence[Tree], cycle_len: int) -> Component:
    """Component whose cycle node i carries the pattern entry (-i) mod p."""
    p = len(entries)
    trees = [entries[(-i) % p] for i in range(cycle_len)]
    return Component.make(cycle_len, trees)


_reconstruct_memo: dict = {}


def reconstruct_component(t: UTree, cycle_len: int) -> Component:
    """The component with the given cycle length whose unroll cut at
    depth(t) contains t; the transient-tree pattern of t is repeated
    cycle_len / p times."""
    cached = _reconstruct_memo.get((t.uid, cycle_len))
    if cached is not None:
        return cached
    p = min_period(t)
    if cycle_len % p:
        raise ValueError(f"period {p} does not divide cycle length {cycle_len}")
    pattern = _spine_pattern(t)[:p]
    comp = _component_from_pattern(pattern, cycle_len)
    if t not in _unroll_trees_as_counter(comp, t.depth):
        raise ValueError("inconsistent spine: reconstruction failed")
    _reconstruct_memo[(t.uid, cycle_len)] = comp
    return comp
