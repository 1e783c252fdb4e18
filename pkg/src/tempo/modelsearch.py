"""Finite frame enumeration, countermodel search and frame correspondence.

Frames are enumerated with labeled worlds ``w0, w1, ...`` and elements
``a, b, c, ...`` in a fixed order (fewer worlds first, then fewer
elements), so the first witness found is deterministic and small.
Interpretations on each frame are scanned by the kernel in
:mod:`tempo.kernel`; every witness is re-checked with the direct evaluators
before it is returned.
"""
from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from . import kernel
from .kripke_int import IqcFrame, IqcModel, eval_int, search_frame_int
from .kripke_tense import (
    QK, S4T, TenseFrame, TenseModel, eval_tense, frame_properties, search_frame_tense,
)
from .syntax import And, Atom, Bottom, Formula, Imp, Or, parse_tense, signature

Rel = FrozenSet[Tuple[int, int]]

MAX_POSET_POINTS = 6
MAX_PREORDER_POINTS = 4
MAX_RELATION_POINTS = 3


class BoundError(ValueError):
    """An enumeration was asked to go beyond its configured maximum."""


# -- order enumeration -------------------------------------------------------------

def _is_transitive(n: int, r: Rel) -> bool:
    return all((i, k) in r for i, j in r for j2, k in r if j == j2)


def enum_posets(n: int) -> Iterator[Rel]:
    """All partial orders on ``range(n)`` (reflexive pairs included), labeled."""
    if n > MAX_POSET_POINTS:
        raise BoundError(f"posets on {n} points exceed the maximum {MAX_POSET_POINTS}")
    if n <= 0:
        yield frozenset()
        return
    for r in enum_posets(n - 1):
        yield from _extend_poset(n - 1, r)


def _extend_poset(m: int, r: Rel) -> Iterator[Rel]:
    # the new point m gets a down-set below it and an up-set above it
    pts = range(m)
    subsets = [frozenset(c) for k in range(m + 1) for c in itertools.combinations(pts, k)]
    downs = [s for s in subsets if all(i in s for j in s for i in pts if (i, j) in r)]
    ups = [s for s in subsets if all(k in s for j in s for k in pts if (j, k) in r)]
    for d in downs:
        for u in ups:
            if d & u or not all((i, k) in r for i in d for k in u):
                continue
            yield r | {(m, m)} | {(i, m) for i in d} | {(m, k) for k in u}


def enum_preorders(n: int) -> Iterator[Rel]:
    """All reflexive transitive relations on ``range(n)``, labeled."""
    if n > MAX_PREORDER_POINTS:
        raise BoundError(f"preorders on {n} points exceed the maximum {MAX_PREORDER_POINTS}")
    diag = frozenset((i, i) for i in range(n))
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(off)):
        r = diag | {p for k, p in enumerate(off) if bits >> k & 1}
        if _is_transitive(n, r):
            yield r


def enum_relations(n: int) -> Iterator[Rel]:
    """Every binary relation on ``range(n)``."""
    if n > MAX_RELATION_POINTS:
        raise BoundError(f"relations on {n} points exceed the maximum {MAX_RELATION_POINTS}")
    allp = [(i, j) for i in range(n) for j in range(n)]
    for bits in range(1 << len(allp)):
        yield frozenset(p for k, p in enumerate(allp) if bits >> k & 1)


def _iso_key(n: int, r: Rel, doms: Sequence[FrozenSet[int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = (tuple(sorted((perm[i], perm[j]) for i, j in r)),
               tuple(tuple(sorted(doms[perm.index(k)])) for k in range(n)))
        if best is None or key < best:
            best = key
    return best


# -- bounds and results ------------------------------------------------------------

@dataclass(frozen=True)
class SearchBounds:
    max_worlds: int = 3
    max_inner: int = 2
    max_outer: int = 2
    signature: Optional[Sequence[str]] = None
    cap: Optional[int] = None
    iso_reduce: bool = False

    def __post_init__(self):
        if min(self.max_worlds, self.max_inner, self.max_outer) < 1:
            raise ValueError("search bounds must be positive")
        if self.max_outer < self.max_inner:
            raise ValueError("outer bound must be at least the inner bound")


@dataclass
class SearchResult:
    found: Optional[tuple] = None        # (model, world, assignment)
    candidates_examined: int = 0
    frames_examined: int = 0
    complete: bool = True                # False when the cap cut the search short

    @property
    def inconclusive(self) -> bool:
        return self.found is None and not self.complete


ELEMS = string.ascii_lowercase


def _names(n: int, m: int) -> Tuple[List[str], List[str]]:
    return [f"w{i}" for i in range(n)], list(ELEMS[:m])


def _subsets(m: int, lo: int, hi: int) -> List[FrozenSet[int]]:
    return [frozenset(c) for k in range(lo, hi + 1) for c in itertools.combinations(range(m), k)]


# -- frame enumeration -------------------------------------------------------------

def iqc_frames(b: SearchBounds) -> Iterator[IqcFrame]:
    """Posets with nonempty increasing domains whose union is exactly ``{a, ...}``."""
    for n in range(1, b.max_worlds + 1):
        for m in range(1, b.max_outer + 1):
            seen = set()
            for r in enum_posets(n):
                for doms in _increasing_domains(n, r, m, 1, b.max_inner):
                    if set().union(*doms) != set(range(m)):
                        continue
                    if b.iso_reduce:
                        k = _iso_key(n, r, doms)
                        if k in seen:
                            continue
                        seen.add(k)
                    ws, es = _names(n, m)
                    yield IqcFrame(tuple(ws), frozenset((ws[i], ws[j]) for i, j in r),
                                   {ws[i]: frozenset(es[e] for e in doms[i]) for i in range(n)})


def _increasing_domains(n, r, m, lo, hi, increasing=True):
    subs = _subsets(m, lo, min(hi, m))
    for doms in itertools.product(subs, repeat=n):
        if not increasing or all(doms[i] <= doms[j] for i, j in r):
            yield doms


def tense_frames(b: SearchBounds, frame_class: str = S4T) -> Iterator[TenseFrame]:
    """QcircS4t frames (preorders, nonempty increasing inner domains) or arbitrary QcircK frames."""
    for n in range(1, b.max_worlds + 1):
        rels = enum_preorders(n) if frame_class == S4T else enum_relations(n)
        rels = list(rels)
        for m in range(1, b.max_outer + 1):
            seen = set()
            for r in rels:
                lo = 1 if frame_class == S4T else 0
                for doms in _increasing_domains(n, r, m, lo, b.max_inner, frame_class == S4T):
                    if b.iso_reduce:
                        k = _iso_key(n, r, doms)
                        if k in seen:
                            continue
                        seen.add(k)
                    ws, es = _names(n, m)
                    yield TenseFrame(tuple(ws), frozenset((ws[i], ws[j]) for i, j in r),
                                     {ws[i]: frozenset(es[e] for e in doms[i]) for i in range(n)},
                                     frozenset(es), frame_class)


def count_frames(kind: str, b: SearchBounds) -> int:
    gen = iqc_frames(b) if kind == "iqc" else tense_frames(b, QK if kind == "qk" else S4T)
    return sum(1 for _ in gen)


# -- countermodel search -----------------------------------------------------------

def _check_sig(a: Formula, b: SearchBounds):
    if b.signature is not None:
        extra = set(signature(a)) - set(b.signature)
        if extra:
            raise ValueError(f"formula uses predicates outside the signature: {sorted(extra)}")


def find_countermodel_int(a: Formula, b: SearchBounds = SearchBounds()) -> SearchResult:
    _check_sig(a, b)
    return _search(a, iqc_frames(b), search_frame_int, _verify_int, b)


def find_countermodel_tense(a: Formula, b: SearchBounds = SearchBounds(),
                            frame_class: str = S4T) -> SearchResult:
    _check_sig(a, b)
    return _search(a, tense_frames(b, frame_class), search_frame_tense, _verify_tense, b)


def _verify_int(m: IqcModel, w, s, a) -> bool:
    return not eval_int(m, w, s, a)


def _verify_tense(m: TenseModel, w, s, a) -> bool:
    return not eval_tense(m, w, s, a)


def _search(a, frames, search_one, verify, b: SearchBounds) -> SearchResult:
    cap = kernel.default_cap() if b.cap is None else b.cap
    out = SearchResult()
    for fr in frames:
        left = cap - out.candidates_examined
        if left <= 0:
            out.complete = False
            return out
        r = search_one(fr, a, left)
        out.candidates_examined += r.examined
        out.frames_examined += 1
        if r.valid is None:
            out.complete = False
            return out
        if r.valid is False:
            if not verify(r.model, r.world, r.assignment, a):
                raise AssertionError("kernel witness failed re-verification")
            out.found = (r.model, r.world, r.assignment)
            return out
    return out


# -- correspondence ----------------------------------------------------------------

CORRESPONDENCE = {
    "CBF": ("increasing", ["([F] forall x. P(x)) -> forall x. [F] P(x)"]),
    "BF": ("decreasing", ["(forall x. [F] P(x)) -> [F] forall x. P(x)"]),
    "NID": ("nonempty_inner", ["(forall x. P(y)) -> P(y)", "(forall x. q) -> q"]),
}


@dataclass
class CorrespondenceReport:
    frames_checked: int = 0
    violations: List[dict] = field(default_factory=list)
    tally: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def correspondence_suite(b: SearchBounds = SearchBounds(max_worlds=2, max_inner=2, max_outer=2)
                         ) -> CorrespondenceReport:
    """Check scheme validity against the frame property it should characterize."""
    insts = {k: [parse_tense(t) for t in ts] for k, (_, ts) in CORRESPONDENCE.items()}
    rep = CorrespondenceReport(tally={k: {"valid": 0, "invalid": 0} for k in CORRESPONDENCE})
    cap = kernel.default_cap() if b.cap is None else b.cap
    for fr in tense_frames(b, QK):
        rep.frames_checked += 1
        props = frame_properties(fr)
        for k, (prop, _) in CORRESPONDENCE.items():
            valid = True
            for f in insts[k]:
                r = search_frame_tense(fr, f, cap)
                if r.valid is None:
                    raise kernel.CapExceeded(f"correspondence check exceeded {cap} candidates")
                valid = valid and r.valid
            rep.tally[k]["valid" if valid else "invalid"] += 1
            if valid != props[prop]:
                rep.violations.append({"scheme": k, "property": prop, "holds": props[prop],
                                       "valid": valid, "frame": fr})
    return rep


# -- propositional frames for the IPC cross-check ----------------------------------

def rooted_posets(max_points: int) -> List[Tuple[int, Rel]]:
    """Rooted posets up to isomorphism, root 0, for 1..max_points points."""
    out = []
    for n in range(1, max_points + 1):
        seen = set()
        for r in enum_posets(n):
            if not all((0, j) in r for j in range(n)):
                continue
            k = _iso_key(n, r, [frozenset()] * n)
            if k not in seen:
                seen.add(k)
                out.append((n, r))
    return out


class PropModels:
    """Every monotone valuation of the given letters on every rooted poset up to a size.

    The worlds of all these models are packed into one bit vector so a
    formula evaluates to a Python int (bit set = forced there).
    """

    def __init__(self, letters: Sequence[str] = ("p", "q"), max_points: int = 5):
        self.letters = tuple(letters)
        blocks = []                       # (n, rel, list of valuations)
        for n, r in rooted_posets(max_points):
            ups = [s for s in _subsets(n, 0, n) if all(j in s for i in s for j in range(n) if (i, j) in r)]
            vals = list(itertools.product(ups, repeat=len(self.letters)))
            blocks.append((n, r, vals))
        self.n_models = sum(len(v) for _, _, v in blocks)
        # bit layout: per block, point-major; bit = base + point * copies + copy
        self._shifts: List[Tuple[int, int, int]] = []      # (src offset, dst offset, width)
        self.atoms = {x: 0 for x in self.letters}
        self.roots = 0
        base = 0
        for n, r, vals in blocks:
            c = len(vals)
            for i, j in r:
                if i != j:
                    self._shifts.append((base + j * c, base + i * c, c))
            for copy, val in enumerate(vals):
                for li, x in enumerate(self.letters):
                    for pt in val[li]:
                        self.atoms[x] |= 1 << (base + pt * c + copy)
                self.roots |= 1 << (base + copy)
            base += n * c
        self.n_worlds = base
        self.full = (1 << base) - 1

    def down(self, s: int) -> int:
        """Worlds that see some world of ``s`` (the relation is already transitive)."""
        out = s
        for src, dst, w in self._shifts:
            out |= ((s >> src) & ((1 << w) - 1)) << dst
        return out

    def imp(self, a: int, b: int) -> int:
        return self.full & ~self.down(a & ~b)

    def value(self, f: Formula) -> int:
        if isinstance(f, Bottom):
            return 0
        if isinstance(f, Atom):
            return self.atoms[f.pred]
        if isinstance(f, And):
            return self.value(f.left) & self.value(f.right)
        if isinstance(f, Or):
            return self.value(f.left) | self.value(f.right)
        if isinstance(f, Imp):
            return self.imp(self.value(f.left), self.value(f.right))
        raise TypeError("propositional formulas only")

    def valid(self, f: Formula) -> bool:
        return self.value(f) == self.full
