"""Generalized frames with inner and outer domains, for the tense language.

A frame has worlds, an accessibility relation ``R``, an inner domain per
world and one outer domain ``U``.  Quantifiers range over the inner domain
of the current world while variables take values anywhere in ``U``;
``[F]``/``<F>`` look along ``R`` and ``[P]``/``<P>`` along its converse.

Two frame classes are distinguished by ``TenseFrame.frame_class``:

* ``"QcircS4t"`` (default): preorder, nonempty increasing inner domains.
* ``"QcircK"``: arbitrary relation, inner domains may be empty.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Tuple

from . import kernel
from .kripke_int import (
    AssignmentError, Elem, IqcModel, ModelError, Tup, UnknownPredicate, Violation, World,
    _interp_from_json, _interp_to_json, _str_ids, canon_sorted, decode_interp, rt_closure,
)
from .syntax import (
    And, Atom, Bottom, BoxF, BoxP, DiaF, DiaP, Exists, Forall, Formula, Imp, Or, free_vars,
    signature,
)

S4T, QK = "QcircS4t", "QcircK"


@dataclass(frozen=True)
class TenseFrame:
    worlds: Tuple[World, ...]
    order: FrozenSet[Tuple[World, World]]
    inner: Mapping[World, FrozenSet[Elem]]
    outer: FrozenSet[Elem]
    frame_class: str = S4T

    def succ(self, w: World) -> List[World]:
        return [v for v in self.worlds if (w, v) in self.order]

    def pred(self, w: World) -> List[World]:
        return [v for v in self.worlds if (v, w) in self.order]


@dataclass
class TenseModel:
    frame: TenseFrame
    interp: Dict[str, Dict[World, FrozenSet[Tup]]]
    arity: Dict[str, int] = field(default_factory=dict)

    def holds(self, pred: str, w: World, tup: Tup) -> bool:
        try:
            table = self.interp[pred]
        except KeyError:
            raise UnknownPredicate(pred) from None
        return tup in table.get(w, frozenset())


def frame_properties(f: TenseFrame) -> Dict[str, bool]:
    inc = all(f.inner[w] <= f.inner[v] for w, v in f.order)
    dec = all(f.inner[v] <= f.inner[w] for w, v in f.order)
    return {
        "increasing": inc,
        "decreasing": dec,
        "constant": inc and dec,
        "nonempty_inner": all(f.inner[w] for w in f.worlds),
    }


def tense_frame_violations(f: TenseFrame) -> List[Violation]:
    out: List[Violation] = []
    ws = set(f.worlds)
    if not ws:
        out.append(Violation("nonempty worlds", ()))
    for w, v in f.order:
        if w not in ws or v not in ws:
            out.append(Violation("order on worlds", (w, v)))
    if not f.outer:
        out.append(Violation("nonempty outer", ()))
    for w in f.worlds:
        for e in canon_sorted(f.inner.get(w, frozenset()) - f.outer):
            out.append(Violation("outer contains union", (w, e)))
    if f.frame_class == S4T:
        for w in f.worlds:
            if (w, w) not in f.order:
                out.append(Violation("reflexive", (w,)))
            if not f.inner.get(w):
                out.append(Violation("nonempty inner", (w,)))
        for w, v in sorted(f.order, key=str):
            for u in f.worlds:
                if (v, u) in f.order and (w, u) not in f.order:
                    out.append(Violation("transitive", (w, v, u)))
            for e in canon_sorted(f.inner.get(w, frozenset()) - f.inner.get(v, frozenset())):
                out.append(Violation("increasing inner domains", (w, v, e)))
    elif f.frame_class != QK:
        out.append(Violation("frame class", (f.frame_class,)))
    return out


def validate_tense_model(m: TenseModel) -> List[Violation]:
    f = m.frame
    out = tense_frame_violations(f)
    ws = set(f.worlds)
    for p, table in m.interp.items():
        n = m.arity.get(p)
        for w, tuples in table.items():
            if w not in ws:
                out.append(Violation("interpretation on worlds", (p, w)))
                continue
            for t in tuples:
                if n is not None and len(t) != n:
                    out.append(Violation("arity", (p, w, t)))
                if any(e not in f.outer for e in t):
                    out.append(Violation("interpretation in outer", (p, w, t)))
    return out


def default_element(f: TenseFrame, w: World) -> Elem:
    pool = f.inner.get(w) or f.outer
    if not pool:
        raise AssignmentError("empty outer domain")
    return canon_sorted(pool)[0]


def eval_tense(m: TenseModel, w: World, s: Mapping[str, Elem], a: Formula) -> bool:
    """Truth of ``a`` at ``w`` under ``s``; missing variables get :func:`default_element`."""
    f = m.frame
    if w not in f.inner:
        raise ModelError(f"unknown world {w!r}")
    s = dict(s)
    for x in free_vars(a):
        if x not in s:
            s[x] = default_element(f, w)
        elif s[x] not in f.outer:
            raise AssignmentError(f"{x}={s[x]!r} is not in the outer domain")
    succ = {u: f.succ(u) for u in f.worlds}
    pred = {u: f.pred(u) for u in f.worlds}
    inner = {u: canon_sorted(f.inner[u]) for u in f.worlds}
    return _sat(m, succ, pred, inner, w, s, a)


def _sat(m, succ, pred, inner, w, s, a: Formula) -> bool:
    t = type(a)
    if t is Bottom:
        return False
    if t is Atom:
        return m.holds(a.pred, w, tuple(s[x] for x in a.args))
    if t is And:
        return _sat(m, succ, pred, inner, w, s, a.left) and _sat(m, succ, pred, inner, w, s, a.right)
    if t is Or:
        return _sat(m, succ, pred, inner, w, s, a.left) or _sat(m, succ, pred, inner, w, s, a.right)
    if t is Imp:
        return not _sat(m, succ, pred, inner, w, s, a.left) or _sat(m, succ, pred, inner, w, s, a.right)
    if t is Forall:
        return all(_sat(m, succ, pred, inner, w, {**s, a.var: d}, a.body) for d in inner[w])
    if t is Exists:
        return any(_sat(m, succ, pred, inner, w, {**s, a.var: d}, a.body) for d in inner[w])
    if t is BoxF:
        return all(_sat(m, succ, pred, inner, v, s, a.body) for v in succ[w])
    if t is DiaF:
        return any(_sat(m, succ, pred, inner, v, s, a.body) for v in succ[w])
    if t is BoxP:
        return all(_sat(m, succ, pred, inner, v, s, a.body) for v in pred[w])
    if t is DiaP:
        return any(_sat(m, succ, pred, inner, v, s, a.body) for v in pred[w])
    raise TypeError(f"unknown formula node {a!r}")


def mbar(m: IqcModel) -> TenseModel:
    """The tense model with the same frame data and ``U`` the union of the domains."""
    f = m.frame
    outer = frozenset().union(*f.domains.values())
    tf = TenseFrame(f.worlds, f.order, dict(f.domains), outer, S4T)
    interp = {p: dict(d) for p, d in m.interp.items()}
    return TenseModel(tf, interp, dict(m.arity))


# -- kernel bridge ---------------------------------------------------------------

def to_structure(f: TenseFrame) -> Tuple[kernel.Structure, List[World], List[Elem]]:
    ws = list(f.worlds)
    es = canon_sorted(f.outer)
    wi = {w: i for i, w in enumerate(ws)}
    ei = {e: i for i, e in enumerate(es)}
    st = kernel.make_structure(len(ws), [(wi[w], wi[v]) for w, v in f.order],
                               [[ei[e] for e in f.inner[w]] for w in ws], len(es))
    return st, ws, es


@dataclass
class FrameSearch:
    valid: Optional[bool]
    examined: int
    model: Optional[TenseModel] = None
    world: Optional[World] = None
    assignment: Optional[Dict[str, Elem]] = None


def search_frame_tense(f: TenseFrame, a: Formula, cap: Optional[int] = None,
                       backend=None) -> FrameSearch:
    """Look for an interpretation on ``f`` and an assignment over ``U`` falsifying ``a``."""
    st, ws, es = to_structure(f)
    prog = kernel.compile_formula(a, kernel.TENSE, len(es))
    res = kernel.search(prog, st, kernel.tense_choices(prog, st), kernel.TENSE, cap, backend)
    if res.status == 2:
        return FrameSearch(None, res.examined)
    if not res.found:
        return FrameSearch(True, res.examined)
    model = TenseModel(f, decode_interp(prog, res.interp, ws, es), dict(prog.preds))
    assign = {x: es[e] for x, e in res.assignment.items()}
    return FrameSearch(False, res.examined, model, ws[res.world], assign)


def frame_valid_tense(f: TenseFrame, a: Formula, sig: Optional[Mapping[str, int]] = None,
                      cap: Optional[int] = None) -> bool:
    if sig is not None:
        for p, n in signature(a).items():
            if sig.get(p, n) != n:
                raise ModelError(f"predicate {p} has arity {n}, signature says {sig[p]}")
    r = search_frame_tense(f, a, cap)
    if r.valid is None:
        raise kernel.CapExceeded(f"more than {r.examined} interpretations")
    return r.valid


def true_in_model(m: TenseModel, a: Formula) -> bool:
    """``a`` holds at every world under every assignment over ``U``."""
    fv = free_vars(a)
    us = canon_sorted(m.frame.outer)
    return all(eval_tense(m, w, dict(zip(fv, vals)), a)
               for w in m.frame.worlds for vals in itertools.product(us, repeat=len(fv)))


# -- JSON ------------------------------------------------------------------------

def tense_model_from_json(data: Mapping[str, Any]) -> TenseModel:
    try:
        if data.get("kind", "tense") != "tense":
            raise ModelError(f"expected a tense model, got kind {data.get('kind')!r}")
        fc = data.get("frame_class", S4T)
        if fc not in (S4T, QK):
            raise ModelError(f"unknown frame_class {fc!r}")
        worlds = tuple(_str_ids(data["worlds"]))
        pairs = [(str(w), str(v)) for w, v in data.get("order", [])]
        for w, v in pairs:
            if w not in worlds or v not in worlds:
                raise ModelError(f"order mentions unknown world in {(w, v)}")
        order = rt_closure(worlds, pairs) if fc == S4T else frozenset(pairs)
        inner = {str(w): frozenset(_str_ids(es)) for w, es in data["inner"].items()}
        missing = set(worlds) - set(inner)
        if missing:
            raise ModelError(f"no inner domain for worlds {sorted(missing)}")
        outer = frozenset(_str_ids(data["outer"]))
        interp, arity = _interp_from_json(data.get("interp", {}), worlds)
        arity.update({str(p): int(n) for p, n in data.get("arity", {}).items()})
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed model: {exc}") from None
    return TenseModel(TenseFrame(worlds, order, inner, outer, fc), interp, arity)


def tense_model_to_json(m: TenseModel) -> Dict[str, Any]:
    f = m.frame
    keep_refl = f.frame_class == QK
    return {
        "kind": "tense",
        "frame_class": f.frame_class,
        "worlds": _str_ids(f.worlds),
        "order": [[str(w), str(v)] for w, v in sorted(f.order, key=str) if keep_refl or w != v],
        "inner": {str(w): _str_ids(canon_sorted(f.inner[w])) for w in f.worlds},
        "outer": _str_ids(canon_sorted(f.outer)),
        "interp": _interp_to_json(m),
        "arity": dict(m.arity),
    }


def load_tense_model(path: str) -> TenseModel:
    with open(path, encoding="utf-8") as fh:
        return tense_model_from_json(json.load(fh))
