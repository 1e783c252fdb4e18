"""Intuitionistic propositional provability via Dyckhoff's contraction-free calculus G4ip.

Any subformula that is not ``false``, ``&``, ``|`` or ``->`` counts as an
atom, so the procedure also certifies substitution instances: a quantified
subformula is simply an opaque letter.

Invertible rules are applied eagerly; only right disjunction and the left
rule for a nested implication ``(C -> D) -> B`` branch.  Every rule shrinks
the multiset weight of the sequent, so search terminates without loop
checks.  Successful searches return a :class:`Deriv` tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Optional, Tuple

from ..syntax import And, Bottom, Formula, Imp, Or, print_formula

Gamma = FrozenSet[Formula]


@dataclass(frozen=True, eq=False)
class Deriv:
    """One rule application.  ``principal`` is the formula the rule acts on."""
    rule: str
    gamma: Gamma
    goal: Formula
    principal: Optional[Formula]
    premises: Tuple["Deriv", ...] = ()

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def rules_used(self) -> set:
        out = {self.rule}
        for p in self.premises:
            out |= p.rules_used()
        return out


def _atomic(f: Formula) -> bool:
    return not isinstance(f, (Bottom, And, Or, Imp))


class _Prover:
    def __init__(self):
        self.memo: Dict[Tuple[Gamma, Formula], Optional[Deriv]] = {}

    def prove(self, gamma: Gamma, goal: Formula) -> Optional[Deriv]:
        key = (gamma, goal)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None           # guards against re-entry; G4ip never loops
        d = self._prove(gamma, goal)
        self.memo[key] = d
        return d

    def _prove(self, gamma: Gamma, goal: Formula) -> Optional[Deriv]:
        ordered = sorted(gamma, key=_order_key)
        for phi in ordered:
            if isinstance(phi, Bottom):
                return Deriv("L_bot", gamma, goal, phi)
        if goal in gamma:
            return Deriv("Id", gamma, goal, goal)

        for phi in ordered:
            rest = gamma - {phi}
            if isinstance(phi, And):
                p = self.prove(rest | {phi.left, phi.right}, goal)
                return p and Deriv("L_and", gamma, goal, phi, (p,))
            if isinstance(phi, Or):
                p1 = self.prove(rest | {phi.left}, goal)
                if p1 is None:
                    return None
                p2 = self.prove(rest | {phi.right}, goal)
                return p2 and Deriv("L_or", gamma, goal, phi, (p1, p2))
            if isinstance(phi, Imp):
                a, b = phi.left, phi.right
                if isinstance(a, Bottom):
                    p = self.prove(rest, goal)
                    return p and Deriv("L_bot_imp", gamma, goal, phi, (p,))
                if _atomic(a) and a in gamma:
                    p = self.prove(rest | {b}, goal)
                    return p and Deriv("L0_imp", gamma, goal, phi, (p,))
                if isinstance(a, And):
                    p = self.prove(rest | {Imp(a.left, Imp(a.right, b))}, goal)
                    return p and Deriv("L_and_imp", gamma, goal, phi, (p,))
                if isinstance(a, Or):
                    p = self.prove(rest | {Imp(a.left, b), Imp(a.right, b)}, goal)
                    return p and Deriv("L_or_imp", gamma, goal, phi, (p,))

        if isinstance(goal, And):
            p1 = self.prove(gamma, goal.left)
            if p1 is None:
                return None
            p2 = self.prove(gamma, goal.right)
            return p2 and Deriv("R_and", gamma, goal, goal, (p1, p2))
        if isinstance(goal, Imp):
            p = self.prove(gamma | {goal.left}, goal.right)
            return p and Deriv("R_imp", gamma, goal, goal, (p,))

        if isinstance(goal, Or):
            p = self.prove(gamma, goal.left)
            if p is not None:
                return Deriv("R_or1", gamma, goal, goal, (p,))
            p = self.prove(gamma, goal.right)
            if p is not None:
                return Deriv("R_or2", gamma, goal, goal, (p,))
        for phi in (g for g in ordered if isinstance(g, Imp) and isinstance(g.left, Imp)):
            c, d, b = phi.left.left, phi.left.right, phi.right
            rest = gamma - {phi}
            p1 = self.prove(rest | {Imp(d, b)}, phi.left)
            if p1 is None:
                continue
            p2 = self.prove(rest | {b}, goal)
            if p2 is not None:
                return Deriv("L_imp_imp", gamma, goal, phi, (p1, p2))
        return None


@lru_cache(maxsize=1 << 16)
def _order_key(f: Formula) -> str:
    return print_formula(f)


def ipc_derivation(f: Formula, hyps=()) -> Optional[Deriv]:
    """A G4ip derivation of ``hyps => f``, or None if ``f`` is not IPC-derivable from them."""
    return _Prover().prove(frozenset(hyps), f)


def is_ipc_theorem(f: Formula) -> bool:
    return ipc_derivation(f) is not None
