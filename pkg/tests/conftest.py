"""Shared fixtures: exhaustive small catalogs and tiny builders."""

import pytest

from fdds.core import Component, Fdds, ZERO, add, cycle, single, tree_of
from fdds.oracle import connected_components, fdds_of_size


LEAF = ()


def comp(cycle_len, *trees):
    return Component.make(cycle_len, trees)


def dendron(*children):
    """A fixed point with the given child subtrees hanging off it."""
    return comp(1, tree_of(children))


def perm(*lengths):
    value = ZERO
    for n in lengths:
        value = add(value, cycle(n))
    return value


@pytest.fixture(scope="session")
def small_fdds():
    """Every canonical FDDS with 1..6 states."""
    return [f for n in range(1, 7) for f in fdds_of_size(n)]


@pytest.fixture(scope="session")
def small_components():
    """Every connected component with 1..6 states."""
    return [c for n in range(1, 7) for c in connected_components(n)]


@pytest.fixture(scope="session")
def small_connected(small_components):
    """The same components as single-component FDDS values."""
    return [single(c) for c in small_components]


@pytest.fixture(scope="session")
def small_perms():
    """Every permutation FDDS with 1..6 states."""
    return [f for n in range(1, 7) for f in fdds_of_size(n) if f.is_permutation]
