"""Semiring values, canonical forms, and the core operations."""

import random
from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as st

from fdds.core import (
    Component,
    ONE,
    Polynomial,
    SizeBudgetExceeded,
    ZERO,
    add,
    canonicalize,
    compare_ct,
    comps_len_div,
    cycle,
    eval_poly,
    is_submultiset,
    multiply,
    power,
    prefix,
    pure_cycle,
    single,
    subtract,
    super_prefix,
    tree_of,
)
from conftest import LEAF, comp, dendron, perm


# ---------------------------------------------------------------------------
# canonicalize


def test_canonicalize_fixed_point():
    assert canonicalize([0]) == cycle(1)


def test_canonicalize_pure_3_cycle():
    assert canonicalize([1, 2, 0]) == cycle(3)


def test_canonicalize_two_leaves_label_invariant():
    a = canonicalize([0, 0, 0])
    b = canonicalize([2, 2, 2])
    assert a == b == single(dendron(LEAF, LEAF))


def test_canonicalize_rejects_bad_index():
    with pytest.raises(ValueError):
        canonicalize([0, 3])


def test_canonicalize_empty_is_zero():
    assert canonicalize([]) == ZERO


def test_canonicalize_random_relabelings_agree():
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randrange(1, 9)
        succ = [rng.randrange(n) for _ in range(n)]
        base = canonicalize(succ)
        relabel = list(range(n))
        rng.shuffle(relabel)
        inv = [0] * n
        for i, v in enumerate(relabel):
            inv[v] = i
        shuffled = [relabel[succ[inv[i]]] for i in range(n)]
        assert canonicalize(shuffled) == base


# ---------------------------------------------------------------------------
# add / subtract / submultiset


def test_add_identity_and_counts():
    a = perm(2, 3)
    assert add(a, ZERO) == a
    assert add(cycle(2), cycle(2)) == cycle(2, 2)
    assert add(perm(2, 3), cycle(3)) == add(cycle(2), cycle(3, 2))


def test_subtract_examples():
    a = add(cycle(2, 2), cycle(3))
    assert subtract(a, ZERO) == a
    assert subtract(a, cycle(2)) == perm(2, 3)
    assert subtract(cycle(2), cycle(3)) is None


def test_is_submultiset():
    assert is_submultiset(ZERO, perm(2))
    assert not is_submultiset(cycle(2, 2), cycle(2))
    assert is_submultiset(perm(6, 12), multiply(perm(2, 4), cycle(3)))


# ---------------------------------------------------------------------------
# multiply / power


def test_cycle_product_formula():
    for p in range(1, 21):
        for q in range(1, 21):
            assert multiply(cycle(p), cycle(q)) == cycle(lcm(p, q), gcd(p, q))


def test_multiply_identity(small_fdds):
    for a in small_fdds[:40]:
        assert multiply(a, ONE) == a


def test_square_of_mixed_permutation():
    b = add(add(cycle(2), cycle(3, 2)), cycle(6))
    expected = add(add(cycle(2, 2), cycle(3, 12)), cycle(6, 26))
    assert multiply(b, b) == expected
    assert power(b, 2) == expected


def test_power_trivia():
    a = perm(2, 5)
    assert power(a, 1) == a
    assert power(cycle(1, 2), 2) == cycle(1, 4)


def test_size_homomorphism(small_fdds):
    rng = random.Random(1)
    for _ in range(200):
        a, b = rng.choice(small_fdds), rng.choice(small_fdds)
        assert multiply(a, b).size == a.size * b.size
        assert add(a, b).size == a.size + b.size


def test_product_matches_explicit_state_graph():
    # Direct product of the state graphs, canonicalized independently.
    rng = random.Random(2)
    for _ in range(30):
        n, m = rng.randrange(1, 6), rng.randrange(1, 6)
        f = [rng.randrange(n) for _ in range(n)]
        g = [rng.randrange(m) for _ in range(m)]
        pairs = [(i, j) for i in range(n) for j in range(m)]
        index = {p: k for k, p in enumerate(pairs)}
        succ = [index[(f[i], g[j])] for i, j in pairs]
        assert multiply(canonicalize(f), canonicalize(g)) == canonicalize(succ)


# ---------------------------------------------------------------------------
# semiring laws

# Sum and product are both defined componentwise (product distributes over
# the multiset union on both sides by construction), so associativity and
# commutativity of the product reduce to the connected case; they are checked
# exhaustively on connected triples and randomly on general values.


def test_commutativity_exhaustive_components(small_connected):
    for a in small_connected:
        for b in small_connected:
            assert multiply(a, b) == multiply(b, a)


def test_associativity_exhaustive_connected_triples():
    from fdds.oracle import connected_components

    comps = [single(c) for n in range(1, 6) for c in connected_components(n)]
    for a in comps:
        for b in comps:
            ab = multiply(a, b)
            for c in comps:
                assert multiply(ab, c) == multiply(a, multiply(b, c))


def test_laws_random_general_values(small_fdds):
    rng = random.Random(3)
    for _ in range(150):
        a, b, c = (rng.choice(small_fdds) for _ in range(3))
        assert add(a, b) == add(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert multiply(a, b) == multiply(b, a)
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        assert multiply(a, add(b, c)) == add(multiply(a, b), multiply(a, c))
        assert multiply(a, ZERO) == ZERO
        assert multiply(a, ONE) == a


# ---------------------------------------------------------------------------
# comps_len_div


def test_comps_len_div_examples():
    assert comps_len_div(perm(1, 2), 1) == cycle(1)
    assert comps_len_div(perm(2, 3, 4), 6) == perm(2, 3)


def test_comps_len_div_endomorphism(small_connected):
    for p in range(1, 13):
        for a in small_connected:
            for b in small_connected:
                assert comps_len_div(multiply(a, b), p) == multiply(
                    comps_len_div(a, p), comps_len_div(b, p)
                )


def test_comps_len_div_additive(small_fdds):
    rng = random.Random(4)
    for _ in range(100):
        a, b = rng.choice(small_fdds), rng.choice(small_fdds)
        p = rng.randrange(1, 13)
        assert comps_len_div(add(a, b), p) == add(
            comps_len_div(a, p), comps_len_div(b, p)
        )


# ---------------------------------------------------------------------------
# eval_poly


def test_eval_constant():
    p = Polynomial.make([perm(2, 3)])
    assert eval_poly(p, cycle(7)) == perm(2, 3)


def test_eval_quadratic_golden():
    p = Polynomial.make([ZERO, perm(4, 6), cycle(2)])
    b = add(add(cycle(2, 16), cycle(4, 4)), add(cycle(6, 18), cycle(12)))
    assert eval_poly(p, add(cycle(1, 4), cycle(3))) == b
    assert eval_poly(p, add(cycle(2, 2), cycle(3))) == b


def test_eval_budget():
    p = Polynomial.make([ZERO, cycle(2)])
    with pytest.raises(SizeBudgetExceeded):
        eval_poly(p, cycle(3, 50), budget=10)


# ---------------------------------------------------------------------------
# compare_ct, prefix, super_prefix


def test_compare_ct_cycles():
    assert compare_ct(pure_cycle(2), pure_cycle(3)) < 0
    assert compare_ct(pure_cycle(4), pure_cycle(4)) == 0


def test_compare_ct_cycle_before_decorated():
    withleaf = comp(2, tree_of([LEAF]), LEAF)
    assert compare_ct(pure_cycle(2), withleaf) < 0


def test_compare_ct_total_order(small_components):
    comps = small_components
    for a in comps:
        for b in comps:
            r1, r2 = compare_ct(a, b), compare_ct(b, a)
            assert (r1 == 0) == (a == b)
            assert (r1 > 0) == (r2 < 0)
    # transitivity on a sample
    rng = random.Random(5)
    for _ in range(300):
        a, b, c = (rng.choice(comps) for _ in range(3))
        if compare_ct(a, b) <= 0 and compare_ct(b, c) <= 0:
            assert compare_ct(a, c) <= 0


def test_prefix_and_super_prefix():
    x = add(cycle(2), cycle(3, 2))
    assert prefix(x, 0) == ZERO
    assert prefix(x, 2) == perm(2, 3)
    assert prefix(x, 9) == x
    assert super_prefix(x, 1) == cycle(2)
    assert super_prefix(x, 2) == x


# ---------------------------------------------------------------------------
# hypothesis: random tables round-trip through the component form


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=10))
def test_canonicalize_size_preserved(raw):
    succ = [v % len(raw) for v in raw]
    value = canonicalize(succ)
    assert value.size == len(succ)
    assert canonicalize(succ) == value
