"""Text formats: permutation expressions, function tables, compact
permutations, polynomial files, and tree/forest notation.

All formats are line-oriented decimal text; parse errors carry line and
column positions.
"""

from __future__ import annotations

import re
from typing import Optional

from .core import Fdds, Polynomial, ZERO, add, canonicalize, cycle, to_table
from .perm import CompactPerm, CompactPoly, encode
from .unroll import Forest, UTree, sorted_children, tree_key, utree


class FormatError(ValueError):
    """A parse failure with a position."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Permutation expressions: expr ::= term ('+' term)* ; term ::= [INT '*'] 'C' INT


_TOKEN = re.compile(r"\s*(?:(\d+)|(\*)|(\+)|([Cc])|(\S))")


def parse_perm_expr(text: str, line: int = 1) -> Fdds:
    """Parse an expression like ``2*C2 + 12*C3 + 26*C6`` (or ``0``)."""
    tokens = []
    for m in _TOKEN.finditer(text):
        col = m.start(m.lastindex) + 1
        tokens.append((m.lastindex, m.group(m.lastindex), col))
    if not tokens:
        raise FormatError("empty expression", line, len(text) + 1)
    if len(tokens) == 1 and tokens[0][1] == "0":
        return ZERO

    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, "end of input", len(text) + 1)

    def take(kind: int, what: str) -> str:
        nonlocal pos
        k, value, col = peek()
        if k != kind:
            raise FormatError(f"expected {what}, found {value!r}", line, col)
        pos += 1
        return value

    def term() -> Fdds:
        nonlocal pos
        k, value, col = peek()
        mult = 1
        if k == 1:
            mult = int(take(1, "integer"))
            take(2, "'*'")
        take(4, "'C'")
        n = int(take(1, "cycle length"))
        if n < 1 or mult < 1:
            raise FormatError("cycle length and multiplicity must be >= 1", line, col)
        return cycle(n, mult)

    result = term()
    while pos < len(tokens):
        k, value, col = peek()
        if k != 3:
            raise FormatError(f"expected '+', found {value!r}", line, col)
        pos += 1
        result = add(result, term())
    return result


def format_perm_expr(value: Fdds) -> str:
    if value.is_zero:
        return "0"
    if not value.is_permutation:
        raise ValueError("not a permutation")
    terms = []
    for comp, mult in sorted(value.comps, key=lambda cm: cm[0].cycle_len):
        prefix = f"{mult}*" if mult > 1 else ""
        terms.append(f"{prefix}C{comp.cycle_len}")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# Function tables (.fdds): line 1 = N, line 2 = N successors.


def parse_table(text: str) -> Fdds:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise FormatError("missing state count", 1, 1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise FormatError(f"bad state count {lines[0].strip()!r}", 1, 1) from None
    if n == 0:
        return ZERO
    if len(lines) < 2:
        raise FormatError("missing successor line", 2, 1)
    fields = lines[1].split()
    if len(fields) != n:
        raise FormatError(f"expected {n} successors, found {len(fields)}", 2, 1)
    succ = []
    col = 1
    for f in fields:
        try:
            v = int(f)
        except ValueError:
            raise FormatError(f"bad successor {f!r}", 2, col) from None
        if not 0 <= v < n:
            raise FormatError(f"successor {v} out of range [0, {n})", 2, col)
        succ.append(v)
        col += len(f) + 1
    return canonicalize(succ)


def format_table(value: Fdds) -> str:
    table = to_table(value)
    return f"{len(table)}\n{' '.join(map(str, table))}"


def format_fdds(value: Fdds) -> str:
    """Canonical expression for permutations, table format otherwise."""
    if value.is_permutation:
        return format_perm_expr(value)
    return format_table(value)


# ---------------------------------------------------------------------------
# Compact permutations: one `<len> <mult>` pair per line, ascending len.


def parse_compact(text: str) -> CompactPerm:
    pairs = []
    for i, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != 2:
            raise FormatError("expected '<len> <mult>'", i, 1)
        try:
            l, m = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(f"bad integer in {raw.strip()!r}", i, 1) from None
        if l < 1 or m < 1:
            raise FormatError("length and multiplicity must be >= 1", i, 1)
        pairs.append((l, m))
    return CompactPerm.make(pairs)


def format_compact(value: CompactPerm) -> str:
    return "\n".join(f"{l} {m}" for l, m in value.entries)


# ---------------------------------------------------------------------------
# Polynomial files: lines `<degree>: <perm-expr | @file>`.


def parse_poly(text: str, base_dir: Optional[str] = None) -> Polynomial:
    import os

    coeffs: dict[int, Fdds] = {}
    for i, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        if ":" not in raw:
            raise FormatError("expected '<degree>: <coefficient>'", i, 1)
        head, _, body = raw.partition(":")
        try:
            degree = int(head.strip())
        except ValueError:
            raise FormatError(f"bad degree {head.strip()!r}", i, 1) from None
        if degree < 0:
            raise FormatError("degree must be >= 0", i, 1)
        if degree in coeffs:
            raise FormatError(f"duplicate degree {degree}", i, 1)
        body = body.strip()
        if body.startswith("@"):
            ref = body[1:]
            if base_dir is not None:
                ref = os.path.join(base_dir, ref)
            try:
                with open(ref) as f:
                    coeffs[degree] = parse_table(f.read())
            except OSError as e:
                raise FormatError(f"cannot read {body[1:]!r}: {e}", i, 1) from None
        else:
            coeffs[degree] = parse_perm_expr(body, line=i)
    if not coeffs:
        raise FormatError("empty polynomial", 1, 1)
    top = max(coeffs)
    return Polynomial.make([coeffs.get(d, ZERO) for d in range(top + 1)])


def format_poly(p: Polynomial) -> str:
    lines = []
    for degree, coeff in enumerate(p.coeffs):
        if not coeff.is_zero:
            lines.append(f"{degree}: {format_perm_expr(coeff)}")
    return "\n".join(lines) if lines else "0: 0"


def poly_to_compact(p: Polynomial) -> CompactPoly:
    return CompactPoly.make(encode(c) for c in p.coeffs)


# ---------------------------------------------------------------------------
# Trees and forests: nested parentheses, one tree per line with an optional
# `k*` multiplicity prefix.


def parse_tree(text: str, line: int = 1) -> UTree:
    text = text.strip()
    pos = 0

    def node() -> UTree:
        nonlocal pos
        if pos >= len(text) or text[pos] != "(":
            raise FormatError("expected '('", line, pos + 1)
        pos += 1
        children = []
        while pos < len(text) and text[pos] == "(":
            children.append(node())
        if pos >= len(text) or text[pos] != ")":
            raise FormatError("expected ')'", line, pos + 1)
        pos += 1
        return utree(children)

    result = node()
    if pos != len(text):
        raise FormatError("trailing characters after tree", line, pos + 1)
    return result


def format_tree(t: UTree) -> str:
    return "(" + "".join(format_tree(c) for c in sorted_children(t)) + ")"


def parse_forest(text: str) -> Forest:
    from collections import Counter

    counter: Counter = Counter()
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.strip()
        if not body:
            continue
        mult = 1
        if "*" in body:
            head, _, body = body.partition("*")
            try:
                mult = int(head.strip())
            except ValueError:
                raise FormatError(f"bad multiplicity {head.strip()!r}", i, 1) from None
            if mult < 1:
                raise FormatError("multiplicity must be >= 1", i, 1)
            body = body.strip()
        counter[parse_tree(body, line=i)] += mult
    return Forest.make(counter)


def format_forest(f: Forest) -> str:
    lines = []
    for t, m in sorted(f.trees, key=lambda tm: tree_key(tm[0])):
        prefix = f"{m}*" if m > 1 else ""
        lines.append(prefix + format_tree(t))
    return "\n".join(lines)
