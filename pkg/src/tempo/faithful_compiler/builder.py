"""Incremental proof construction with derived rules.

A :class:`ProofBuilder` appends kernel lines and remembers every formula it
has proved, so asking for the same fact twice costs nothing.  Helpers
return the formula they established; line numbers are looked up on demand.
Derived rules expand into primitive lines (schemes, tautologies, MP, Gen,
necessitation, S4t lemma instances) and never bypass the kernel.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence

from ..hilbert.checker import CheckResult, Library, check_proof, subst_letters
from ..hilbert.proof import (
    MP, ClassTaut, Gen, LemmaRef, Line, NecF, NecP, Proof, SchemeInst, refs,
)
from ..hilbert.schemes import instantiate
from ..hilbert.taut import is_classical_taut
from ..syntax import BoxF, BoxP, DiaF, DiaP, Exists, Forall, Formula, Imp, Not, is_free, print_formula


class GenerationError(ValueError):
    """A generator was asked for something outside its preconditions."""


def imps(premises: Sequence[Formula], concl: Formula) -> Formula:
    """``p1 -> (p2 -> ... -> concl)``."""
    for p in reversed(premises):
        concl = Imp(p, concl)
    return concl


def forall_prefix(vs: Sequence[str], body: Formula) -> Formula:
    for v in reversed(vs):
        body = Forall(v, body)
    return body


def split_prefix(f: Formula, n: int):
    vs = []
    for _ in range(n):
        if not isinstance(f, Forall):
            raise GenerationError(f"expected {n} universal quantifiers in {print_formula(f)}")
        vs.append(f.var)
        f = f.body
    return vs, f


class ProofBuilder:
    def __init__(self, logic: str = "QcircS4t", library: Optional[Library] = None):
        self.logic = logic
        self.library = library if library is not None else Library()
        self.lines: List[Line] = []
        self.index: Dict[Formula, int] = {}

    # -- primitive lines -------------------------------------------------------

    def _add(self, f: Formula, just) -> Formula:
        if f not in self.index:
            self.lines.append(Line(f, just))
            self.index[f] = len(self.lines)
        return f

    def has(self, f: Formula) -> bool:
        return f in self.index

    def line_of(self, f: Formula) -> int:
        try:
            return self.index[f]
        except KeyError:
            raise GenerationError(f"not yet proved: {print_formula(f)}") from None

    def scheme(self, sid: str, **wit) -> Formula:
        try:
            f = instantiate(sid, wit)
        except ValueError as exc:
            raise GenerationError(str(exc)) from None
        return self._add(f, SchemeInst(sid, dict(wit)))

    def taut(self, f: Formula) -> Formula:
        if f not in self.index and not is_classical_taut(f):
            raise GenerationError(f"not a tautology: {print_formula(f)}")
        return self._add(f, ClassTaut())

    def mp(self, a: Formula, ab: Formula) -> Formula:
        if not (isinstance(ab, Imp) and ab.left == a):
            raise GenerationError("mp: second argument is not an implication from the first")
        return self._add(ab.right, MP(self.line_of(a), self.line_of(ab)))

    def gen(self, f: Formula, x: str) -> Formula:
        return self._add(Forall(x, f), Gen(self.line_of(f), x))

    def necf(self, f: Formula) -> Formula:
        return self._add(BoxF(f), NecF(self.line_of(f)))

    def necp(self, f: Formula) -> Formula:
        return self._add(BoxP(f), NecP(self.line_of(f)))

    def lemma(self, name: str, **inst: Formula) -> Formula:
        entry = self.library.entries.get(name)
        if entry is None:
            raise GenerationError(f"lemma {name} not in library")
        f = subst_letters(entry.formula, inst) if inst else entry.formula
        return self._add(f, LemmaRef(name, dict(inst)))

    # -- classical glue --------------------------------------------------------

    def chain(self, premises: Sequence[Formula], concl: Formula) -> Formula:
        """From proved ``premises`` derive ``concl`` when the step is a tautology."""
        prem = list(dict.fromkeys(premises))
        cur = self.taut(imps(prem, concl))
        for p in prem:
            self.line_of(p)
            cur = self.mp(p, cur)
        return cur

    # -- modal and quantifier monotonicity ------------------------------------

    def box_f_mono(self, xy: Formula) -> Formula:
        """From ``X -> Y`` derive ``[F]X -> [F]Y``."""
        k = self.scheme("K_F", A=xy.left, B=xy.right)
        return self.mp(self.necf(xy), k)

    def box_p_mono(self, xy: Formula) -> Formula:
        k = self.scheme("K_P", A=xy.left, B=xy.right)
        return self.mp(self.necp(xy), k)

    def dia_f_mono(self, xy: Formula) -> Formula:
        k = self.lemma("k_dia_f", c=xy.left, d=xy.right)
        return self.mp(self.necf(xy), k)

    def dia_p_mono(self, xy: Formula) -> Formula:
        k = self.lemma("k_dia_p", c=xy.left, d=xy.right)
        return self.mp(self.necp(xy), k)

    def forall_mono(self, x: str, xy: Formula) -> Formula:
        """From ``X -> Y`` derive ``(forall x. X) -> forall x. Y``."""
        d = self.scheme("ForallDistrib", A=xy.left, B=xy.right, x=x)
        return self.mp(self.gen(xy, x), d)

    def exists_mono(self, x: str, xy: Formula) -> Formula:
        a, b = xy.left, xy.right
        contra = self.chain([xy], Imp(Not(b), Not(a)))
        fa = self.forall_mono(x, contra)
        e1 = self.scheme("ExDef1", A=a, x=x)
        e2 = self.scheme("ExDef2", A=b, x=x)
        return self.chain([fa, e1, e2], Imp(Exists(x, a), Exists(x, b)))

    def under_foralls(self, vs: Sequence[str], xy: Formula) -> Formula:
        """From ``X -> Y`` derive ``forall vs. X -> forall vs. Y``."""
        for v in reversed(vs):
            xy = self.forall_mono(v, xy)
        return xy

    def apply_under(self, vs: Sequence[str], xy: Formula, f: Formula) -> Formula:
        """Given proved ``forall vs. X`` and ``X -> Y``, derive ``forall vs. Y``."""
        return self.mp(f, self.under_foralls(vs, xy))

    # -- quantifier prefix manipulation ----------------------------------------

    def box_inside(self, vs: Sequence[str], f: Formula) -> Formula:
        """From ``forall vs. X`` derive ``forall vs. [F]X`` via NecF and CBF_F."""
        cur = self.necf(f)
        vs = list(vs)
        for i, v in enumerate(vs):
            _, inner = split_prefix(f, i)          # inner = forall v. R
            body = inner.body
            cbf = self.scheme("CBF_F", A=body, x=v)
            cur = self.mp(cur, self.under_foralls(vs[:i], cbf)) if i else self.mp(cur, cbf)
        return cur

    def swap_at(self, f: Formula, i: int) -> Formula:
        """Exchange the quantifiers at positions ``i`` and ``i+1`` of the prefix."""
        outer, inner = split_prefix(f, i)
        if not (isinstance(inner, Forall) and isinstance(inner.body, Forall)):
            raise GenerationError("swap_at: not enough quantifiers")
        qs = self.scheme("QuantSwap", A=inner.body.body, x=inner.var, y=inner.body.var)
        return self.apply_under(outer, qs, f)

    def reorder_prefix(self, f: Formula, current: Sequence[str], target: Sequence[str]) -> Formula:
        """From ``forall current. X`` derive ``forall target. X`` (a permutation)."""
        cur = list(current)
        if sorted(cur) != sorted(target) or len(set(cur)) != len(cur):
            raise GenerationError(f"reorder {cur} -> {list(target)} is not a permutation")
        pos = {v: i for i, v in enumerate(target)}
        n = len(cur)
        for end in range(n - 1, 0, -1):
            for i in range(end):
                if pos[cur[i]] > pos[cur[i + 1]]:
                    f = self.swap_at(f, i)
                    cur[i], cur[i + 1] = cur[i + 1], cur[i]
        return f

    def distribute_prefix(self, vs: Sequence[str], f: Formula) -> Formula:
        """From ``forall vs. (X -> Y)`` derive ``forall vs. X -> forall vs. Y``."""
        vs = list(vs)
        _, body = split_prefix(f, len(vs))
        if not vs:
            return f
        x, y = body.left, body.right
        # d_k : forall vs[k:]. (X -> Y)  ->  (forall vs[k:]. X -> forall vs[k:]. Y)
        d = self.scheme("ForallDistrib", A=x, B=y, x=vs[-1])
        for k in range(len(vs) - 2, -1, -1):
            v = vs[k]
            lifted = self.forall_mono(v, d)
            a, b = forall_prefix(vs[k + 1:], x), forall_prefix(vs[k + 1:], y)
            fd = self.scheme("ForallDistrib", A=a, B=b, x=v)
            d = self.chain([lifted, fd], Imp(forall_prefix(vs[k:], body),
                                             Imp(forall_prefix(vs[k:], x), forall_prefix(vs[k:], y))))
        return self.mp(f, d)

    def forall_imp_in(self, x: str, a: Formula, b: Formula) -> Formula:
        """``forall x. (A -> B)  ->  (A -> forall x. B)`` for ``x`` not free in ``A``."""
        if is_free(x, a):
            raise GenerationError(f"{x} is free in the antecedent")
        fd = self.scheme("ForallDistrib", A=a, B=b, x=x)
        vf = self.scheme("VacuousForall", A=a, x=x)
        return self.chain([fd, vf], Imp(Forall(x, Imp(a, b)), Imp(a, Forall(x, b))))

    def pull_out(self, vs: Sequence[str], a: Formula, b: Formula) -> Formula:
        """``forall vs. (A -> B)  ->  (A -> forall vs. B)`` when no ``vs`` is free in ``A``."""
        vs = list(vs)
        if not vs:
            return self.taut(Imp(Imp(a, b), Imp(a, b)))
        e = self.forall_imp_in(vs[-1], a, b)
        for k in range(len(vs) - 2, -1, -1):
            v = vs[k]
            lifted = self.forall_mono(v, e)
            inner_b = forall_prefix(vs[k + 1:], b)
            fi = self.forall_imp_in(v, a, inner_b)
            e = self.chain([lifted, fi], Imp(forall_prefix(vs[k:], Imp(a, b)),
                                             Imp(a, forall_prefix(vs[k:], b))))
        return e

    def drop_vacuous(self, vs: Sequence[str], f: Formula) -> Formula:
        """From ``forall vs. X`` with no ``vs`` free in ``X`` derive ``X`` by NID."""
        for _ in vs:
            nid = self.scheme("NID", A=f.body, x=f.var)
            f = self.mp(f, nid)
        return f

    def close_to(self, f: Formula, current: Sequence[str], target: Sequence[str]) -> Formula:
        """From ``forall current. X`` derive ``forall target. X`` where ``current`` is a subset."""
        missing = [v for v in target if v not in current]
        cur = list(current)
        for v in reversed(missing):
            f = self.gen(f, v)
            cur.insert(0, v)
        return self.reorder_prefix(f, cur, target)

    def box_curried(self, prems: Sequence[Formula], concl: Formula) -> Formula:
        """From ``p1 -> ... -> C`` derive ``[F]p1 -> ... -> [F]C`` (NecF, then K_F repeatedly)."""
        cur = self.necf(imps(prems, concl))
        done: List[Formula] = []
        for i, p in enumerate(prems):
            rest = imps(prems[i + 1:], concl)
            k = self.scheme("K_F", A=p, B=rest)
            if not done:
                cur = self.mp(cur, k)
            else:
                cur = self.chain([cur, k], imps([BoxF(q) for q in done] + [BoxF(p)], BoxF(rest)))
            done.append(p)
        return cur

    def absorb(self, proof: Proof) -> Formula:
        """Copy the lines of an already checked proof; returns its conclusion."""
        where: Dict[int, int] = {}
        for k, line in enumerate(proof.lines, 1):
            if line.formula not in self.index:
                rn = {r: where[r] for r in refs(line.just)}
                self.lines.append(Line(line.formula, _renumber(line.just, rn)))
                self.index[line.formula] = len(self.lines)
            where[k] = self.index[line.formula]
        return proof.conclusion

    # -- output ----------------------------------------------------------------

    def extract(self, target: Formula, goal: Optional[Formula] = None, name: Optional[str] = None) -> Proof:
        """The sub-proof of ``target``: its dependency closure, renumbered."""
        t = self.line_of(target)
        need = set()
        stack = [t]
        while stack:
            k = stack.pop()
            if k in need:
                continue
            need.add(k)
            stack.extend(refs(self.lines[k - 1].just))
        order = sorted(need)
        renum = {old: new for new, old in enumerate(order, 1)}
        out = []
        for old in order:
            line = self.lines[old - 1]
            out.append(Line(line.formula, _renumber(line.just, renum)))
        return Proof(self.logic, target if goal is None else goal, out, name)

    def check(self, proof: Proof) -> CheckResult:
        return check_proof(proof, library=self.library)


def _renumber(j, renum):
    if isinstance(j, MP):
        return MP(renum[j.a], renum[j.b])
    if isinstance(j, Gen):
        return Gen(renum[j.src], j.var)
    if isinstance(j, (NecF, NecP)):
        return type(j)(renum[j.src])
    if hasattr(j, "src"):
        return type(j)(renum[j.src])
    return j
