"""Axiom schemes with explicit witnesses.

A scheme is instantiated from a witness mapping its formula metavariables
(``A``, ``B``) to formulas and its variable metavariables (``x``, ``y``) to
variable names.  Matching a proof line means instantiating and comparing
syntactically; the kernel never unifies.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Tuple, Union

from ..syntax import (
    BoxF, BoxP, CaptureError, DiaF, DiaP, Exists, Forall, Formula, Imp, Not, Or, is_free,
    substitute,
)

Witness = Mapping[str, Union[Formula, str]]


@dataclass(frozen=True)
class Scheme:
    id: str
    formula_vars: Tuple[str, ...]
    term_vars: Tuple[str, ...]
    build: Callable[[Witness], Formula]
    side: Optional[Callable[[Witness], Optional[str]]] = None
    shape: str = ""


@dataclass(frozen=True)
class Match:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _not_free(var: str, meta: str):
    def check(w: Witness) -> Optional[str]:
        if is_free(w[var], w[meta]):
            return f"side condition: {w[var]} is free in {meta}"
        return None
    return check


def _box_k(box):
    return lambda w: Imp(box(Imp(w["A"], w["B"])), Imp(box(w["A"]), box(w["B"])))


def _dual(dia, box, forward: bool):
    def build(w):
        a, b = dia(w["A"]), Not(box(Not(w["A"])))
        return Imp(a, b) if forward else Imp(b, a)
    return build


def _cbf(box):
    return lambda w: Imp(box(Forall(w["x"], w["A"])), Forall(w["x"], box(w["A"])))


def _bf(box):
    return lambda w: Imp(Forall(w["x"], box(w["A"])), box(Forall(w["x"], w["A"])))


_A, _AB, _x, _xy = ("A",), ("A", "B"), ("x",), ("x", "y")

_SCHEMES = [
    Scheme("K_F", _AB, (), _box_k(BoxF), shape="[F](A -> B) -> [F]A -> [F]B"),
    Scheme("K_P", _AB, (), _box_k(BoxP), shape="[P](A -> B) -> [P]A -> [P]B"),
    Scheme("T_F", _A, (), lambda w: Imp(BoxF(w["A"]), w["A"]), shape="[F]A -> A"),
    Scheme("T_P", _A, (), lambda w: Imp(BoxP(w["A"]), w["A"]), shape="[P]A -> A"),
    Scheme("Four_F", _A, (), lambda w: Imp(BoxF(w["A"]), BoxF(BoxF(w["A"]))),
           shape="[F]A -> [F][F]A"),
    Scheme("Four_P", _A, (), lambda w: Imp(BoxP(w["A"]), BoxP(BoxP(w["A"]))),
           shape="[P]A -> [P][P]A"),
    Scheme("PF", _A, (), lambda w: Imp(w["A"], BoxP(DiaF(w["A"]))), shape="A -> [P]<F>A"),
    Scheme("FP", _A, (), lambda w: Imp(w["A"], BoxF(DiaP(w["A"]))), shape="A -> [F]<P>A"),
    Scheme("DualF1", _A, (), _dual(DiaF, BoxF, True), shape="<F>A -> ~[F]~A"),
    Scheme("DualF2", _A, (), _dual(DiaF, BoxF, False), shape="~[F]~A -> <F>A"),
    Scheme("DualP1", _A, (), _dual(DiaP, BoxP, True), shape="<P>A -> ~[P]~A"),
    Scheme("DualP2", _A, (), _dual(DiaP, BoxP, False), shape="~[P]~A -> <P>A"),
    Scheme("ExDef1", _A, _x, lambda w: Imp(Exists(w["x"], w["A"]), Not(Forall(w["x"], Not(w["A"])))),
           shape="(exists x. A) -> ~forall x. ~A"),
    Scheme("ExDef2", _A, _x, lambda w: Imp(Not(Forall(w["x"], Not(w["A"]))), Exists(w["x"], w["A"])),
           shape="~(forall x. ~A) -> exists x. A"),
    Scheme("UI", _A, _xy, lambda w: Imp(Forall(w["x"], w["A"]), substitute(w["A"], w["x"], w["y"])),
           shape="(forall x. A) -> A(y/x)"),
    Scheme("ExIntro", _A, _xy, lambda w: Imp(substitute(w["A"], w["x"], w["y"]), Exists(w["x"], w["A"])),
           shape="A(y/x) -> exists x. A"),
    Scheme("ForallImpIn", _AB, _x,
           lambda w: Imp(Forall(w["x"], Imp(w["A"], w["B"])), Imp(w["A"], Forall(w["x"], w["B"]))),
           _not_free("x", "A"), "(forall x. A -> B) -> A -> forall x. B   [x not free in A]"),
    Scheme("ForallImpEx", _AB, _x,
           lambda w: Imp(Forall(w["x"], Imp(w["A"], w["B"])), Imp(Exists(w["x"], w["A"]), w["B"])),
           _not_free("x", "B"), "(forall x. A -> B) -> (exists x. A) -> B   [x not free in B]"),
    Scheme("UIcirc", _A, _xy,
           lambda w: Forall(w["y"], Imp(Forall(w["x"], w["A"]), substitute(w["A"], w["x"], w["y"]))),
           shape="forall y. (forall x. A) -> A(y/x)"),
    Scheme("ForallDistrib", _AB, _x,
           lambda w: Imp(Forall(w["x"], Imp(w["A"], w["B"])),
                         Imp(Forall(w["x"], w["A"]), Forall(w["x"], w["B"]))),
           shape="(forall x. A -> B) -> (forall x. A) -> forall x. B"),
    Scheme("QuantSwap", _A, _xy,
           lambda w: Imp(Forall(w["x"], Forall(w["y"], w["A"])), Forall(w["y"], Forall(w["x"], w["A"]))),
           shape="(forall x. forall y. A) -> forall y. forall x. A"),
    Scheme("VacuousForall", _A, _x, lambda w: Imp(w["A"], Forall(w["x"], w["A"])),
           _not_free("x", "A"), "A -> forall x. A   [x not free in A]"),
    Scheme("NID", _A, _x, lambda w: Imp(Forall(w["x"], w["A"]), w["A"]),
           _not_free("x", "A"), "(forall x. A) -> A   [x not free in A]"),
    Scheme("CBF", _A, _x, _cbf(BoxF), shape="[]forall x. A -> forall x. []A"),
    Scheme("BF", _A, _x, _bf(BoxF), shape="(forall x. []A) -> []forall x. A"),
    Scheme("CBF_F", _A, _x, _cbf(BoxF), shape="[F]forall x. A -> forall x. [F]A"),
    Scheme("BF_F", _A, _x, _bf(BoxF), shape="(forall x. [F]A) -> [F]forall x. A"),
    Scheme("CBF_P", _A, _x, _cbf(BoxP), shape="[P]forall x. A -> forall x. [P]A"),
    Scheme("BF_P", _A, _x, _bf(BoxP), shape="(forall x. [P]A) -> [P]forall x. A"),
    Scheme("CD", _AB, _x,
           lambda w: Imp(Forall(w["x"], Or(w["A"], w["B"])), Or(w["A"], Forall(w["x"], w["B"]))),
           _not_free("x", "A"), "(forall x. A | B) -> A | forall x. B   [x not free in A]"),
]

SCHEMES: Dict[str, Scheme] = {s.id: s for s in _SCHEMES}


def _check_witness(s: Scheme, wit: Witness) -> Optional[str]:
    need = set(s.formula_vars) | set(s.term_vars)
    missing = need - set(wit)
    if missing:
        return f"witness lacks {', '.join(sorted(missing))}"
    extra = set(wit) - need
    if extra:
        return f"witness has unexpected {', '.join(sorted(extra))}"
    for m in s.formula_vars:
        if not isinstance(wit[m], Formula):
            return f"witness {m} must be a formula"
    for m in s.term_vars:
        if not isinstance(wit[m], str) or not wit[m]:
            return f"witness {m} must be a variable"
    return None


def instantiate(scheme_id: str, wit: Witness) -> Formula:
    """The instance of ``scheme_id`` under ``wit``; raises ValueError when ill-formed."""
    s = SCHEMES[scheme_id]
    bad = _check_witness(s, wit)
    if bad:
        raise ValueError(f"{scheme_id}: {bad}")
    if s.side:
        bad = s.side(wit)
        if bad:
            raise ValueError(f"{scheme_id}: {bad}")
    try:
        return s.build(wit)
    except CaptureError as exc:
        raise ValueError(f"{scheme_id}: {exc}") from None


def match_scheme(scheme_id: str, wit: Witness, f: Formula) -> Match:
    s = SCHEMES.get(scheme_id)
    if s is None:
        return Match(False, f"unknown scheme {scheme_id}")
    try:
        g = instantiate(scheme_id, wit)
    except ValueError as exc:
        return Match(False, str(exc))
    if g != f:
        return Match(False, f"line is not the {scheme_id} instance for this witness")
    return Match(True)
