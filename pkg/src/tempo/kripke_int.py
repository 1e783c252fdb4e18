"""Kripke semantics for intuitionistic predicate logic.

Frames are finite posets with increasing nonempty domains; models add a
monotone interpretation of predicates.  :func:`eval_int` is a direct
recursive reading of the forcing clauses and serves as the reference
evaluator; :func:`frame_valid_int` enumerates interpretations through
:mod:`tempo.kernel`.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Tuple

from . import kernel
from .syntax import (
    And, Atom, Bottom, Exists, Forall, Formula, Imp, Or, free_vars, signature,
)

World = Hashable
Elem = Hashable
Tup = Tuple[Elem, ...]


class ModelError(ValueError):
    """Malformed model file or inconsistent model data."""


class AssignmentError(ValueError):
    pass


class UnknownPredicate(KeyError):
    pass


def canon_sorted(xs: Iterable) -> list:
    """Deterministic order for world and element ids of mixed type."""
    return sorted(xs, key=lambda e: (type(e).__name__, e))


def rt_closure(worlds: Iterable[World], pairs: Iterable[Tuple[World, World]]) -> FrozenSet:
    ws = list(worlds)
    succ = {w: {w} for w in ws}
    for w, v in pairs:
        succ[w].add(v)
    changed = True
    while changed:
        changed = False
        for w in ws:
            new = set().union(*(succ[v] for v in succ[w]))
            if new != succ[w]:
                succ[w] = new
                changed = True
    return frozenset((w, v) for w in ws for v in succ[w])


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: Tuple

    def __str__(self) -> str:
        return f"{self.clause}: {self.witness}"


@dataclass(frozen=True)
class IqcFrame:
    worlds: Tuple[World, ...]
    order: FrozenSet[Tuple[World, World]]
    domains: Mapping[World, FrozenSet[Elem]]

    def succ(self, w: World) -> List[World]:
        return [v for v in self.worlds if (w, v) in self.order]

    def elements(self) -> List[Elem]:
        return canon_sorted(set().union(*self.domains.values()) if self.domains else set())


@dataclass
class IqcModel:
    frame: IqcFrame
    interp: Dict[str, Dict[World, FrozenSet[Tup]]]
    arity: Dict[str, int] = field(default_factory=dict)

    def holds(self, pred: str, w: World, tup: Tup) -> bool:
        try:
            table = self.interp[pred]
        except KeyError:
            raise UnknownPredicate(pred) from None
        return tup in table.get(w, frozenset())


def frame_violations(f: IqcFrame) -> List[Violation]:
    out: List[Violation] = []
    ws = set(f.worlds)
    if not ws:
        out.append(Violation("nonempty worlds", ()))
    for w, v in f.order:
        if w not in ws or v not in ws:
            out.append(Violation("order on worlds", (w, v)))
    for w in f.worlds:
        if (w, w) not in f.order:
            out.append(Violation("reflexive", (w,)))
    for w, v in f.order:
        for u in f.worlds:
            if (v, u) in f.order and (w, u) not in f.order:
                out.append(Violation("transitive", (w, v, u)))
        if w != v and (v, w) in f.order:
            out.append(Violation("antisymmetric", (w, v)))
    for w in f.worlds:
        if not f.domains.get(w):
            out.append(Violation("nonempty domain", (w,)))
    for w, v in sorted(f.order, key=str):
        for e in canon_sorted(f.domains.get(w, ()) - f.domains.get(v, frozenset())):
            out.append(Violation("increasing domains", (w, v, e)))
    return out


def validate_iqc_model(m: IqcModel) -> List[Violation]:
    """Empty list iff ``m`` is an IQC model; otherwise one entry per failed clause."""
    f = m.frame
    out = frame_violations(f)
    ws = set(f.worlds)
    for p, table in m.interp.items():
        n = m.arity.get(p)
        for w, tuples in table.items():
            if w not in ws:
                out.append(Violation("interpretation on worlds", (p, w)))
                continue
            dom = f.domains.get(w, frozenset())
            for t in tuples:
                if n is not None and len(t) != n:
                    out.append(Violation("arity", (p, w, t)))
                if any(e not in dom for e in t):
                    out.append(Violation("interpretation in domain", (p, w, t)))
        for w, v in f.order:
            for t in table.get(w, frozenset()) - table.get(v, frozenset()):
                out.append(Violation("monotone interpretation", (p, w, v, t)))
    return out


def complete_assignment(domain: Iterable[Elem], s: Mapping[str, Elem], names: Iterable[str]) -> Dict[str, Elem]:
    """Extend ``s`` to ``names``, mapping missing variables to the least element of ``domain``."""
    out = dict(s)
    missing = [x for x in names if x not in out]
    if missing:
        dom = canon_sorted(domain)
        if not dom:
            raise AssignmentError("no element available for default assignment")
        for x in missing:
            out[x] = dom[0]
    return out


def eval_int(m: IqcModel, w: World, s: Mapping[str, Elem], a: Formula) -> bool:
    """Forcing ``m, w, s |= a``.  Variables missing from ``s`` get the default element."""
    f = m.frame
    if w not in f.domains:
        raise ModelError(f"unknown world {w!r}")
    s = complete_assignment(f.domains[w], s, free_vars(a))
    for x in free_vars(a):
        if s[x] not in f.domains[w]:
            raise AssignmentError(f"{x}={s[x]!r} is not in the domain of world {w!r}")
    succ = {u: f.succ(u) for u in f.worlds}
    return _force(m, succ, w, s, a)


def _force(m: IqcModel, succ, w, s, a: Formula) -> bool:
    if isinstance(a, Bottom):
        return False
    if isinstance(a, Atom):
        return m.holds(a.pred, w, tuple(s[x] for x in a.args))
    if isinstance(a, And):
        return _force(m, succ, w, s, a.left) and _force(m, succ, w, s, a.right)
    if isinstance(a, Or):
        return _force(m, succ, w, s, a.left) or _force(m, succ, w, s, a.right)
    if isinstance(a, Imp):
        return all(not _force(m, succ, v, s, a.left) or _force(m, succ, v, s, a.right)
                   for v in succ[w])
    if isinstance(a, Forall):
        return all(_force(m, succ, v, {**s, a.var: d}, a.body)
                   for v in succ[w] for d in canon_sorted(m.frame.domains[v]))
    if isinstance(a, Exists):
        return any(_force(m, succ, w, {**s, a.var: d}, a.body)
                   for d in canon_sorted(m.frame.domains[w]))
    raise TypeError(f"not an intuitionistic formula: {a!r}")


def true_at(m: IqcModel, w: World, a: Formula) -> bool:
    """``a`` holds at ``w`` under every w-assignment of its free variables."""
    fv = free_vars(a)
    dom = canon_sorted(m.frame.domains[w])
    return all(eval_int(m, w, dict(zip(fv, vals)), a)
               for vals in itertools.product(dom, repeat=len(fv)))


# -- kernel bridge ---------------------------------------------------------------

def to_structure(f: IqcFrame) -> Tuple[kernel.Structure, List[World], List[Elem]]:
    ws = list(f.worlds)
    es = f.elements()
    wi = {w: i for i, w in enumerate(ws)}
    ei = {e: i for i, e in enumerate(es)}
    st = kernel.make_structure(len(ws), [(wi[w], wi[v]) for w, v in f.order],
                               [[ei[e] for e in f.domains[w]] for w in ws], len(es))
    return st, ws, es


def decode_interp(prog: kernel.Program, cells_interp: List[int], ws: List[World],
                  es: List[Elem]) -> Dict[str, Dict[World, FrozenSet[Tup]]]:
    table: Dict[str, Dict[World, set]] = {p: {w: set() for w in ws} for p in prog.preds}
    for (p, tup), mask in zip(prog.cells(max(len(es), 1)), cells_interp):
        for i, w in enumerate(ws):
            if (mask >> i) & 1:
                table[p][w].add(tuple(es[e] for e in tup))
    return {p: {w: frozenset(t) for w, t in d.items()} for p, d in table.items()}


@dataclass
class FrameSearch:
    valid: Optional[bool]            # None when the cap was reached
    examined: int
    model: Optional[IqcModel] = None
    world: Optional[World] = None
    assignment: Optional[Dict[str, Elem]] = None


def search_frame_int(f: IqcFrame, a: Formula, cap: Optional[int] = None, backend=None) -> FrameSearch:
    """Look for a monotone interpretation on ``f`` falsifying ``a`` somewhere."""
    st, ws, es = to_structure(f)
    prog = kernel.compile_formula(a, kernel.IQC, len(es))
    res = kernel.search(prog, st, kernel.iqc_choices(prog, st), kernel.IQC, cap, backend)
    if res.status == 2:
        return FrameSearch(None, res.examined)
    if not res.found:
        return FrameSearch(True, res.examined)
    interp = decode_interp(prog, res.interp, ws, es)
    model = IqcModel(f, interp, dict(prog.preds))
    assign = {x: es[e] for x, e in res.assignment.items()}
    return FrameSearch(False, res.examined, model, ws[res.world], assign)


def frame_valid_int(f: IqcFrame, a: Formula, sig: Optional[Mapping[str, int]] = None,
                    cap: Optional[int] = None) -> bool:
    """Validity of ``a`` on ``f`` over every monotone interpretation.

    Raises :class:`kernel.CapExceeded` when more than ``cap`` interpretations
    would have to be examined.
    """
    if sig is not None:
        for p, n in signature(a).items():
            if sig.get(p, n) != n:
                raise ModelError(f"predicate {p} has arity {n}, signature says {sig[p]}")
    r = search_frame_int(f, a, cap)
    if r.valid is None:
        raise kernel.CapExceeded(f"more than {r.examined} interpretations")
    return r.valid


# -- JSON ------------------------------------------------------------------------

def _str_ids(xs) -> List[str]:
    return [str(x) for x in xs]


def iqc_model_from_json(data: Mapping[str, Any]) -> IqcModel:
    try:
        if data.get("kind", "iqc") != "iqc":
            raise ModelError(f"expected an iqc model, got kind {data.get('kind')!r}")
        worlds = tuple(_str_ids(data["worlds"]))
        pairs = [(str(w), str(v)) for w, v in data.get("order", [])]
        for w, v in pairs:
            if w not in worlds or v not in worlds:
                raise ModelError(f"order mentions unknown world in {(w, v)}")
        order = rt_closure(worlds, pairs)
        for w, v in order:
            if w != v and (v, w) in order:
                raise ModelError(f"order is not antisymmetric: {w} and {v}")
        domains = {str(w): frozenset(_str_ids(es)) for w, es in data["domains"].items()}
        missing = set(worlds) - set(domains)
        if missing:
            raise ModelError(f"no domain for worlds {sorted(missing)}")
        interp, arity = _interp_from_json(data.get("interp", {}), worlds)
        arity.update({str(p): int(n) for p, n in data.get("arity", {}).items()})
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed model: {exc}") from None
    return IqcModel(IqcFrame(worlds, order, domains), interp, arity)


def _interp_from_json(raw: Mapping, worlds) -> Tuple[Dict, Dict[str, int]]:
    interp: Dict[str, Dict[World, FrozenSet[Tup]]] = {}
    arity: Dict[str, int] = {}
    for p, per_world in raw.items():
        table = {}
        for w, tuples in per_world.items():
            w = str(w)
            if w not in worlds:
                raise ModelError(f"interpretation of {p} at unknown world {w}")
            ts = frozenset(tuple(str(e) for e in t) for t in tuples)
            for t in ts:
                if arity.setdefault(p, len(t)) != len(t):
                    raise ModelError(f"predicate {p} used with two arities")
            table[w] = ts
        interp[str(p)] = table
    return interp, arity


def _interp_to_json(m) -> Dict:
    return {p: {str(w): [list(map(str, t)) for t in canon_sorted(ts)] for w, ts in d.items()}
            for p, d in m.interp.items()}


def iqc_model_to_json(m: IqcModel) -> Dict[str, Any]:
    f = m.frame
    return {
        "kind": "iqc",
        "worlds": _str_ids(f.worlds),
        "order": [[str(w), str(v)] for w, v in sorted(f.order, key=str) if w != v],
        "domains": {str(w): _str_ids(canon_sorted(f.domains[w])) for w in f.worlds},
        "interp": _interp_to_json(m),
        "arity": dict(m.arity),
    }


def load_iqc_model(path: str) -> IqcModel:
    with open(path, encoding="utf-8") as fh:
        return iqc_model_from_json(json.load(fh))
