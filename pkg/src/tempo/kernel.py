"""Bitmask evaluation of formulas over all interpretations of a finite frame.

The hot loop (evaluate a compiled formula for every interpretation of its
predicates on a fixed frame) lives in a compiled extension, ``_kernel_c``.
When the extension is not built, or ``TEMPO_PURE_PYTHON=1`` is set, the
pure-Python twin ``_kernel_py`` is used instead.  ``BACKEND`` names the one in
use.

A :class:`Structure` is a frame with worlds ``0..n-1`` and elements
``0..m-1``; a :class:`Program` is a formula flattened into postfix nodes over
a fixed list of variable slots.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernel_py
from .syntax import (
    And, Atom, Bottom, BoxF, BoxP, DiaF, DiaP, Exists, Forall, Formula, Imp, Or,
    all_vars, free_vars,
)

try:
    if os.environ.get("TEMPO_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _kernel_c as _backend
    BACKEND = "cython"
except ImportError:
    _backend = _kernel_py
    BACKEND = "python"

BOT, ATOM, AND, OR, IMP, BOXF, BOXP, DIAF, DIAP, FORALL, EXISTS = range(11)
MAX_WORLDS = 63
MAX_ARITY = 4
MAX_TABLE = 1 << 22
DEFAULT_CAP = 10 ** 7

TENSE, IQC = 0, 1


class CapExceeded(RuntimeError):
    """Enumeration stopped at the candidate cap; the result is inconclusive."""


def default_cap() -> int:
    return int(os.environ.get("TEMPO_MAX_CANDIDATES", DEFAULT_CAP))


def backends() -> Dict[str, object]:
    out = {"python": _kernel_py}
    try:
        from . import _kernel_c
        out["cython"] = _kernel_c
    except ImportError:
        pass
    return out


@dataclass
class Structure:
    n_worlds: int
    succ: np.ndarray          # succ[w]: mask of v with wRv
    pred: np.ndarray          # pred[w]: mask of v with vRw
    has: np.ndarray           # has[e]: mask of worlds whose inner domain holds e

    @property
    def n_elems(self) -> int:
        return len(self.has)

    @property
    def full(self) -> int:
        return (1 << self.n_worlds) - 1


def make_structure(n_worlds: int, rel: Sequence[Tuple[int, int]],
                   inner: Sequence[Sequence[int]], n_elems: int) -> Structure:
    """``rel`` is a list of pairs (w, v) meaning wRv; ``inner[w]`` lists elements."""
    if n_worlds > MAX_WORLDS:
        raise ValueError(f"kernel supports at most {MAX_WORLDS} worlds")
    succ = [0] * n_worlds
    pred = [0] * n_worlds
    for w, v in rel:
        succ[w] |= 1 << v
        pred[v] |= 1 << w
    has = [0] * n_elems
    for w in range(n_worlds):
        for e in inner[w]:
            has[e] |= 1 << w
    u64 = np.uint64
    return Structure(n_worlds, np.array(succ, dtype=u64), np.array(pred, dtype=u64),
                     np.array(has, dtype=u64))


@dataclass
class Program:
    nodes: np.ndarray
    atoms: np.ndarray
    slots: List[str]
    free_slots: np.ndarray
    preds: Dict[str, int]          # predicate -> arity, in first-use order

    def cells(self, n_elems: int) -> List[Tuple[str, Tuple[int, ...]]]:
        out = []
        for p, n in self.preds.items():
            for tup in itertools.product(range(n_elems), repeat=n):
                out.append((p, tup))
        return out


def compile_formula(f: Formula, mode: int, n_elems: int) -> Program:
    """Flatten ``f``; in IQC mode implication and ``forall`` quantify over successors."""
    slots = all_vars(f)
    slot_of = {v: i for i, v in enumerate(slots)}
    if max(n_elems, 1) ** len(slots) > MAX_TABLE:
        raise ValueError("assignment table too large for the kernel")
    preds: Dict[str, int] = {}
    nodes: List[Tuple[int, int, int, int]] = []
    atoms: List[List[int]] = []
    memo: Dict[Formula, int] = {}

    def emit(op, a=0, b=0, c=0) -> int:
        nodes.append((op, a, b, c))
        return len(nodes) - 1

    def go(g: Formula) -> int:
        if g in memo:
            return memo[g]
        if isinstance(g, Bottom):
            r = emit(BOT)
        elif isinstance(g, Atom):
            if len(g.args) > MAX_ARITY:
                raise ValueError(f"kernel supports arity at most {MAX_ARITY}")
            if preds.setdefault(g.pred, len(g.args)) != len(g.args):
                raise ValueError(f"predicate {g.pred} used with two arities")
            atoms.append([g.pred, len(g.args)] + [slot_of[a] for a in g.args])
            r = emit(ATOM, len(atoms) - 1)
        elif isinstance(g, (And, Or)):
            a, b = go(g.left), go(g.right)
            r = emit(AND if isinstance(g, And) else OR, a, b)
        elif isinstance(g, Imp):
            a, b = go(g.left), go(g.right)
            r = emit(IMP, a, b)
            if mode == IQC:
                r = emit(BOXF, r)
        elif isinstance(g, Forall):
            r = emit(FORALL, go(g.body), 0, slot_of[g.var])
            if mode == IQC:
                r = emit(BOXF, r)
        elif isinstance(g, Exists):
            r = emit(EXISTS, go(g.body), 0, slot_of[g.var])
        else:
            op = {BoxF: BOXF, BoxP: BOXP, DiaF: DIAF, DiaP: DIAP}[type(g)]
            r = emit(op, go(g.body))
        memo[g] = r
        return r

    root = go(f)
    if root != len(nodes) - 1:
        emit(OR, root, root)
    base: Dict[str, int] = {}
    off = 0
    for p, n in preds.items():
        base[p] = off
        off += n_elems ** n
    atom_arr = np.zeros((max(len(atoms), 1), 2 + MAX_ARITY), dtype=np.int32)
    for i, row in enumerate(atoms):
        atom_arr[i, 0] = base[row[0]]
        atom_arr[i, 1] = row[1]
        for k, s in enumerate(row[2:]):
            atom_arr[i, 2 + k] = s
    fv = set(free_vars(f))
    free = np.array([1 if v in fv else 0 for v in slots] or [0], dtype=np.int32)
    return Program(np.array(nodes, dtype=np.int32).reshape(-1, 4), atom_arr, slots, free, preds)


def _n_slots(prog: Program) -> int:
    return len(prog.slots)


def eval_table(prog: Program, st: Structure, interp: Sequence[int], backend=None) -> List[int]:
    """Root table (one world mask per slot assignment) under ``interp``."""
    be = backend or _backend
    n_elems = max(st.n_elems, 1)
    arr = np.array(list(interp) or [0], dtype=np.uint64)
    has = st.has if st.n_elems else np.zeros(1, dtype=np.uint64)
    return [int(v) for v in be.eval_table(prog.nodes, prog.atoms, _n_slots(prog), n_elems,
                                          st.n_worlds, st.succ, st.pred, has, arr)]


@dataclass
class Outcome:
    status: int                     # 0 none falsifies, 1 found, 2 cap reached
    examined: int
    interp: Optional[List[int]] = None
    assignment: Optional[Dict[str, int]] = None
    world: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.status == 1


def decode_assignment(prog: Program, index: int, n_elems: int) -> Dict[str, int]:
    out = {}
    for j, v in enumerate(prog.slots):
        out[v] = (index // n_elems ** j) % n_elems
    return out


def search(prog: Program, st: Structure, choices: Sequence[Sequence[int]], mode: int,
           cap: Optional[int] = None, backend=None) -> Outcome:
    """Scan the product of per-cell ``choices`` for a falsifying interpretation."""
    be = backend or _backend
    cap = default_cap() if cap is None else cap
    n_elems = max(st.n_elems, 1)
    off = [0]
    vals: List[int] = []
    for ch in choices:
        if not ch:
            return Outcome(0, 0)
        vals.extend(ch)
        off.append(len(vals))
    has = st.has if st.n_elems else np.zeros(1, dtype=np.uint64)
    out = np.zeros(max(len(choices), 1), dtype=np.uint64)
    status, examined, a, w = be.search(
        prog.nodes, prog.atoms, _n_slots(prog), n_elems, st.n_worlds, st.succ, st.pred, has,
        np.array(off, dtype=np.int64), np.array(vals or [0], dtype=np.uint64),
        prog.free_slots, mode, int(cap), out)
    if status == 1:
        full_assign = decode_assignment(prog, a, n_elems)
        fv = set(prog.slots[j] for j in range(len(prog.slots)) if prog.free_slots[j])
        return Outcome(1, int(examined), [int(v) for v in out[:len(choices)]],
                       {v: e for v, e in full_assign.items() if v in fv}, int(w))
    return Outcome(int(status), int(examined))


def upsets(st: Structure) -> List[int]:
    """All subsets of worlds closed upward under the relation."""
    out = []
    for m in range(1 << st.n_worlds):
        ok = True
        for w in range(st.n_worlds):
            if (m >> w) & 1 and int(st.succ[w]) & ~m:
                ok = False
                break
        if ok:
            out.append(m)
    return out


def tense_choices(prog: Program, st: Structure) -> List[List[int]]:
    every = list(range(1 << st.n_worlds))
    return [every for _ in prog.cells(max(st.n_elems, 1))]


def iqc_choices(prog: Program, st: Structure) -> List[List[int]]:
    """Monotone interpretations inside the domains, one choice list per cell."""
    ups = upsets(st)
    out = []
    for _, tup in prog.cells(max(st.n_elems, 1)):
        allowed = st.full
        for e in tup:
            allowed &= int(st.has[e]) if st.n_elems else 0
        out.append([u for u in ups if u & ~allowed == 0])
    return out
