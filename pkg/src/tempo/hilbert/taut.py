"""Classical tautology test over the propositional skeleton of a formula.

Every maximal subformula headed by an atom, a quantifier or a modality is
treated as a propositional letter (equal subformulas share a letter).  The
truth table is evaluated bit-parallel: with ``n`` letters, each letter is a
``2**n``-bit integer holding its column.
"""
from __future__ import annotations

import os
from typing import Dict, List

from ..syntax import And, Bottom, Formula, Imp, Or

MAX_LETTERS = int(os.environ.get("TEMPO_TAUT_MAX_LETTERS", 20))


class SkeletonTooLarge(ValueError):
    pass


def skeleton_letters(f: Formula) -> List[Formula]:
    """The abstracted letters of ``f`` in first-occurrence order."""
    seen: Dict[Formula, None] = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (And, Or, Imp)):
            stack.append(g.right)
            stack.append(g.left)
        elif not isinstance(g, Bottom):
            seen.setdefault(g, None)
    return list(seen)


def is_classical_taut(f: Formula, max_letters: int = None) -> bool:
    cap = MAX_LETTERS if max_letters is None else max_letters
    letters = skeleton_letters(f)
    n = len(letters)
    if n > cap:
        raise SkeletonTooLarge(f"skeleton has {n} letters (cap {cap})")
    rows = 1 << n
    full = (1 << rows) - 1
    col = {}
    for i, g in enumerate(letters):
        # column i: bit r is set iff bit i of r is set
        block = ((1 << (1 << i)) - 1) << (1 << i)
        width = 1 << (i + 1)
        pat = block
        while width < rows:
            pat |= pat << width
            width <<= 1
        col[g] = pat & full
    memo: Dict[Formula, int] = {}

    def ev(g: Formula) -> int:
        r = memo.get(g)
        if r is not None:
            return r
        if isinstance(g, Bottom):
            r = 0
        elif isinstance(g, And):
            r = ev(g.left) & ev(g.right)
        elif isinstance(g, Or):
            r = ev(g.left) | ev(g.right)
        elif isinstance(g, Imp):
            r = (~ev(g.left) | ev(g.right)) & full
        else:
            r = col[g]
        memo[g] = r
        return r

    return ev(f) == full
