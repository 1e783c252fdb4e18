"""The temporal Goedel translation and universal closure."""
from __future__ import annotations

from typing import Iterable, Optional

from .syntax import (
    And, Atom, Bottom, BoxF, DiaP, Exists, Forall, Formula, Imp, Or, free_vars,
)

__all__ = ["goedel_t", "universal_closure", "translate_closed"]


def goedel_t(a: Formula) -> Formula:
    """Translate an intuitionistic formula into the tense language.

    Atoms, implications and universal quantifiers are boxed with ``[F]``;
    existential quantifiers are prefixed with ``<P>``.
    """
    if isinstance(a, Bottom):
        return a
    if isinstance(a, Atom):
        return BoxF(a)
    if isinstance(a, And):
        return And(goedel_t(a.left), goedel_t(a.right))
    if isinstance(a, Or):
        return Or(goedel_t(a.left), goedel_t(a.right))
    if isinstance(a, Imp):
        return BoxF(Imp(goedel_t(a.left), goedel_t(a.right)))
    if isinstance(a, Forall):
        return BoxF(Forall(a.var, goedel_t(a.body)))
    if isinstance(a, Exists):
        return DiaP(Exists(a.var, goedel_t(a.body)))
    raise TypeError(f"not an intuitionistic formula: {a!r}")


def universal_closure(b: Formula, vars: Optional[Iterable[str]] = None) -> Formula:
    """Prefix ``b`` with ``forall`` over ``vars`` (outermost first).

    ``vars`` defaults to the free variables of ``b`` in first-occurrence order.
    """
    vs = free_vars(b) if vars is None else list(vars)
    if len(set(vs)) != len(vs):
        raise ValueError(f"duplicate variables in closure prefix: {vs}")
    for v in reversed(vs):
        b = Forall(v, b)
    return b


def translate_closed(a: Formula) -> Formula:
    return universal_closure(goedel_t(a), free_vars(a))
