"""Semiring arithmetic and polynomial equation solving over finite discrete
dynamical systems (functional digraphs)."""

from .core import (
    Component,
    Fdds,
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
)
from .numtheory import alcm, alcm_iter, alpha, beta, delta, quotient_shape
from .perm import (
    CompactPerm,
    CompactPoly,
    Seed,
    classify_perm_poly,
    compact_multiply,
    decode,
    divide_pseudo_cancelable,
    encode,
    kth_root_perm,
    solve_injective_perm,
    solve_pseudo_inj_perm,
    solve_pseudo_inj_perm_compact,
)
from .solver import (
    SolveReport,
    Witness,
    classify_fdds_poly,
    compare_lep,
    min_unroll_tree,
    noninjectivity_witness,
    solve_pseudo_inj_fdds,
)
from .unroll import (
    Forest,
    UTree,
    min_period,
    reconstruct_component,
    solve_forest_poly,
    sufficient_depth,
    tall_trees,
    tree_cmp,
    tree_divide,
    tree_kth_root,
    tree_product,
    unroll_cut,
)

__version__ = "0.1.0"
