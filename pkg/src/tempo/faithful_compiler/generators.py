"""Proof generators for the facts the faithfulness argument relies on.

Every ``*_in`` function works inside a caller-supplied :class:`ProofBuilder`
and returns the formula it established; the public ``prove_*`` wrappers
build a fresh QcircS4t builder, extract the proof and kernel-check it.
"""
from __future__ import annotations

from typing import Dict, Mapping, Optional, Sequence, Union

from ..hilbert.ipc import Deriv, ipc_derivation
from ..hilbert.proof import Proof
from ..hilbert.schemes import instantiate
from ..syntax import (
    And, Atom, Bottom, BoxF, BoxP, DiaF, DiaP, Exists, Forall, Formula, Imp, Not, Or, all_vars,
    free_vars, is_free, is_intuitionistic, print_formula, substitute,
)
from ..translate import goedel_t, universal_closure
from .builder import GenerationError, ProofBuilder, imps
from .lemmas import s4t_library

T = goedel_t


def new_builder() -> ProofBuilder:
    return ProofBuilder("QcircS4t", s4t_library())


def finish(b: ProofBuilder, target: Formula, name: Optional[str] = None) -> Proof:
    p = b.extract(target, name=name)
    res = b.check(p)
    if not res:
        raise GenerationError(f"generated proof does not check: {res}")
    return p


# -- persistence -------------------------------------------------------------------

def persistence_in(b: ProofBuilder, a: Formula) -> Formula:
    """``A^t -> [F]A^t`` by induction on ``a``."""
    at = T(a)
    goal = Imp(at, BoxF(at))
    if b.has(goal):
        return goal
    if isinstance(a, Bottom):
        return b.taut(goal)
    if isinstance(at, BoxF):
        return b.scheme("Four_F", A=at.body)
    if isinstance(a, Exists):
        return b.lemma("dia_p_persist", c=at.body)
    if isinstance(a, (And, Or)):
        l, r = persistence_in(b, a.left), persistence_in(b, a.right)
        lt, rt = T(a.left), T(a.right)
        lem = b.lemma("box_f_and" if isinstance(a, And) else "box_f_or", c=lt, d=rt)
        return b.chain([l, r, lem], goal)
    raise GenerationError(f"not an intuitionistic formula: {print_formula(a)}")


def past_elim_in(b: ProofBuilder, a: Formula) -> Formula:
    """``<P>A^t -> A^t``: the contrapositive companion of persistence."""
    at = T(a)
    up = b.dia_p_mono(persistence_in(b, a))
    back = b.lemma("dia_p_box_f_elim", c=at)
    return b.chain([up, back], Imp(DiaP(at), at))


def prove_box_persistence(a: Formula, companion: bool = False) -> Proof:
    if not is_intuitionistic(a):
        raise GenerationError("persistence is stated for intuitionistic formulas")
    b = new_builder()
    t = past_elim_in(b, a) if companion else persistence_in(b, a)
    return finish(b, t, "box_persistence")


# -- quantifier facts over the weakened base ------------------------------------------

CORSI_KINDS = ("ex_intro", "forall_imp_in", "forall_imp_ex")


def ex_intro_in(b: ProofBuilder, a: Formula, x: str, y: str) -> Formula:
    """``forall y. A(y/x) -> exists x. A``."""
    ay = substitute(a, x, y)
    ui = b.scheme("UIcirc", A=Not(a), x=x, y=y)          # forall y. (forall x. ~A) -> ~A(y/x)
    e2 = b.scheme("ExDef2", A=a, x=x)
    step = b.chain([e2], Imp(ui.body, Imp(ay, Exists(x, a))))
    return b.mp(ui, b.forall_mono(y, step))


def forall_imp_ex_in(b: ProofBuilder, a: Formula, bb: Formula, x: str) -> Formula:
    """``forall x. (A -> B) -> (exists x. A) -> B`` for ``x`` not free in ``B``."""
    if is_free(x, bb):
        raise GenerationError(f"{x} is free in the consequent")
    contra = b.taut(Imp(Imp(a, bb), Imp(Not(bb), Not(a))))
    lifted = b.forall_mono(x, contra)
    inside = b.forall_imp_in(x, Not(bb), Not(a))
    e1 = b.scheme("ExDef1", A=a, x=x)
    return b.chain([lifted, inside, e1],
                   Imp(Forall(x, Imp(a, bb)), Imp(Exists(x, a), bb)))


def _fresh(avoid, base: str = "y") -> str:
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def prove_corsi_fact(kind: str, a: Formula, bb: Optional[Formula], x: str,
                     y: Optional[str] = None) -> Proof:
    b = new_builder()
    if kind == "ex_intro":
        if y is None:
            y = _fresh(set(all_vars(a)) | {x})
        t = ex_intro_in(b, a, x, y)
    elif kind == "forall_imp_in":
        t = b.forall_imp_in(x, a, bb)
    elif kind == "forall_imp_ex":
        t = forall_imp_ex_in(b, a, bb, x)
    else:
        raise GenerationError(f"unknown kind {kind!r}; expected one of {CORSI_KINDS}")
    return finish(b, t, kind)


# -- past Barcan --------------------------------------------------------------------

def dia_f_forall_in(b: ProofBuilder, bb: Formula, x: str) -> Formula:
    """``<F>forall x. B -> forall x. <F>B``."""
    fa = Forall(x, bb)
    ui = b.scheme("UIcirc", A=bb, x=x, y=x)                  # forall x. (forall x. B) -> B
    boxed = b.box_inside([x], ui)                            # forall x. [F]((forall x. B) -> B)
    k = b.lemma("k_dia_f", c=fa, d=bb)
    step = b.mp(boxed, b.forall_mono(x, k))                  # forall x. <F>forall x. B -> <F>B
    out = b.forall_imp_in(x, DiaF(fa), DiaF(bb))
    return b.mp(step, out)


def bfp_in(b: ProofBuilder, a: Formula, x: str) -> Formula:
    """``forall x. [P]A -> [P]forall x. A``."""
    src = Forall(x, BoxP(a))
    pf = b.scheme("PF", A=src)                               # src -> [P]<F>src
    t1 = dia_f_forall_in(b, BoxP(a), x)                      # <F>src -> forall x. <F>[P]A
    el = b.lemma("dia_f_box_p_elim", c=a)
    fm = b.forall_mono(x, el)
    mid = b.chain([t1, fm], Imp(DiaF(src), Forall(x, a)))
    lifted = b.box_p_mono(mid)
    return b.chain([pf, lifted], Imp(src, BoxP(Forall(x, a))))


def prove_bfp(a: Formula, x: str) -> Proof:
    b = new_builder()
    return finish(b, bfp_in(b, a, x), "bfp")


def prove_dia_f_forall(bb: Formula, x: str) -> Proof:
    b = new_builder()
    return finish(b, dia_f_forall_in(b, bb, x), "dia_f_forall")


def dia_p_exists_in(b: ProofBuilder, at: Formula, x: str) -> Formula:
    """``<P>exists x. C -> exists x. <P>C``, from the past Barcan formula on ``~C``."""
    n = Not(at)
    bfp = bfp_in(b, n, x)                                    # forall x. [P]~C -> [P]forall x. ~C
    ex = Exists(x, at)
    d1 = b.scheme("DualP1", A=ex)                            # <P>ex -> ~[P]~ex
    e1 = b.scheme("ExDef1", A=at, x=x)
    c1 = b.chain([e1], Imp(Forall(x, n), Not(ex)))
    lifted = b.box_p_mono(c1)                                # [P]forall x. ~C -> [P]~ex
    d2 = b.scheme("DualP2", A=at)
    c2 = b.chain([d2], Imp(Not(DiaP(at)), BoxP(n)))
    fm = b.forall_mono(x, c2)                                # forall x. ~<P>C -> forall x. [P]~C
    e2 = b.scheme("ExDef2", A=DiaP(at), x=x)
    return b.chain([bfp, d1, lifted, fm, e2], Imp(DiaP(ex), Exists(x, DiaP(at))))


# -- translated IQC axioms -----------------------------------------------------------

IQC_SCHEMES = ("UI", "ExIntro", "ForallImpIn", "ForallImpEx")


def recognize_scheme(c: Formula) -> Optional[tuple]:
    """``(scheme id, witness)`` if ``c`` is an instance of an IQC scheme."""
    if not isinstance(c, Imp):
        return None
    l, r = c.left, c.right
    cands = []
    if isinstance(l, Forall):
        cands.append(("UI", l.body, l.var))
        if isinstance(l.body, Imp):
            cands.append(("ForallImpIn", l.body, l.var))
            cands.append(("ForallImpEx", l.body, l.var))
    if isinstance(r, Exists):
        cands.append(("ExIntro", r.body, r.var))
    vs = all_vars(c)
    for sid, body, x in cands:
        if sid in ("UI", "ExIntro"):
            for y in [x] + [v for v in vs if v != x]:
                wit = {"A": body, "x": x, "y": y}
                if _inst_is(sid, wit, c):
                    return sid, wit
        else:
            wit = {"A": body.left, "B": body.right, "x": x}
            if _inst_is(sid, wit, c):
                return sid, wit
    return None


def _inst_is(sid, wit, c) -> bool:
    try:
        return instantiate(sid, wit) == c
    except ValueError:
        return False


def template_in(b: ProofBuilder, sid: str, wit: Mapping[str, Union[Formula, str]]) -> Formula:
    """The translated instance of an IQC scheme, before universal closure."""
    if sid == "UI":
        a, x, y = wit["A"], wit["x"], wit["y"]
        at = T(a)
        tf = b.scheme("T_F", A=Forall(x, at))
        if not is_free(x, a):                                        # (i)
            nid = b.scheme("NID", A=at, x=x)
            return b.necf(b.chain([tf, nid], Imp(BoxF(Forall(x, at)), at)))
        ui = b.scheme("UIcirc", A=at, x=x, y=y)                      # (ii)
        step = b.chain([tf], Imp(ui.body, Imp(BoxF(Forall(x, at)), ui.body.right)))
        return b.box_inside([y], b.mp(ui, b.forall_mono(y, step)))
    if sid == "ExIntro":
        a, x, y = wit["A"], wit["x"], wit["y"]
        at = T(a)
        ex = Exists(x, at)
        td = b.lemma("t_dia_p", c=ex)
        if not is_free(x, a):                                        # (iii)
            nid = b.scheme("NID", A=Not(at), x=x)
            e2 = b.scheme("ExDef2", A=at, x=x)
            return b.necf(b.chain([nid, e2, td], Imp(at, DiaP(ex))))
        ei = ex_intro_in(b, at, x, y)                               # (iv)
        ay = ei.body.left
        step = b.chain([td], Imp(ei.body, Imp(ay, DiaP(ex))))
        return b.box_inside([y], b.mp(ei, b.forall_mono(y, step)))
    if sid in ("ForallImpIn", "ForallImpEx"):
        a, bb, x = wit["A"], wit["B"], wit["x"]
        at, bt = T(a), T(bb)
        g = BoxF(Imp(at, bt))
        un = b.forall_mono(x, b.scheme("T_F", A=Imp(at, bt)))       # forall x. G -> forall x. (A^t -> B^t)
        if sid == "ForallImpIn":                                     # (v)
            inn = b.forall_imp_in(x, at, bt)
            l1 = b.chain([un, inn], Imp(Forall(x, g), Imp(at, Forall(x, bt))))
            k = b.scheme("K_F", A=at, B=Forall(x, bt))
            l2 = b.chain([b.box_f_mono(l1), k, persistence_in(b, a)],
                         Imp(BoxF(Forall(x, g)), Imp(at, BoxF(Forall(x, bt)))))
            four = b.scheme("Four_F", A=Forall(x, g))
            body = b.chain([four, b.box_f_mono(l2)],
                           Imp(BoxF(Forall(x, g)), BoxF(Imp(at, BoxF(Forall(x, bt))))))
            return b.necf(body)
        fe = forall_imp_ex_in(b, at, bt, x)                          # (vi)
        back = b.exists_mono(x, past_elim_in(b, a))                  # exists x. <P>A^t -> exists x. A^t
        dp = dia_p_exists_in(b, at, x)
        l1 = b.chain([un, fe, dp, back], Imp(Forall(x, g), Imp(DiaP(Exists(x, at)), bt)))
        return b.necf(b.box_f_mono(l1))
    raise GenerationError(f"no template for scheme {sid}")


def ipc_in(b: ProofBuilder, c: Formula) -> Formula:
    """``C^t`` for an IPC-valid ``C``, via its G4ip derivation."""
    d = ipc_derivation(c)
    if d is None:
        raise GenerationError(f"not an IPC instance: {print_formula(c)}")
    return _PropGen(b).run(d)


class _PropGen:
    """Translate a G4ip derivation node by node into QcircS4t lines.

    A sequent ``G1, ..., Gn => C`` becomes ``G1^t -> ... -> Gn^t -> C^t``
    with the antecedents in a canonical order.
    """

    def __init__(self, b: ProofBuilder):
        self.b = b
        self.done: Dict[int, Formula] = {}

    @staticmethod
    def _key(f: Formula) -> str:
        return print_formula(f)

    def seq(self, gamma, goal: Formula) -> Formula:
        return imps([T(g) for g in sorted(gamma, key=self._key)], T(goal))

    def run(self, d: Deriv) -> Formula:
        key = id(d)
        if key not in self.done:
            self.done[key] = self._node(d)
        return self.done[key]

    def _node(self, d: Deriv) -> Formula:
        b = self.b
        here = self.seq(d.gamma, d.goal)
        prem = [self.run(p) for p in d.premises]
        r = d.rule
        if r in ("Id", "L_bot", "L_and", "L_or", "L_bot_imp", "R_and", "R_or1", "R_or2"):
            return b.chain(prem, here)
        phi = d.principal
        if r == "L0_imp":
            tf = b.scheme("T_F", A=Imp(T(phi.left), T(phi.right)))
            return b.chain([tf] + prem, here)
        if r == "L_and_imp":
            cc, dd, bb = phi.left.left, phi.left.right, phi.right
            ct, dt, bt = T(cc), T(dd), T(bb)
            e = Imp(And(ct, dt), bt)
            cur = b.box_f_mono(b.taut(Imp(e, Imp(ct, Imp(dt, bt)))))
            k = b.scheme("K_F", A=ct, B=Imp(dt, bt))
            l = b.chain([cur, k, persistence_in(b, cc)], Imp(BoxF(e), Imp(ct, BoxF(Imp(dt, bt)))))
            four = b.scheme("Four_F", A=e)
            m = b.chain([four, b.box_f_mono(l)], Imp(BoxF(e), T(Imp(cc, Imp(dd, bb)))))
            return b.chain([m] + prem, here)
        if r == "L_or_imp":
            cc, dd, bb = phi.left.left, phi.left.right, phi.right
            e = Imp(Or(T(cc), T(dd)), T(bb))
            m1 = b.box_f_mono(b.taut(Imp(e, Imp(T(cc), T(bb)))))
            m2 = b.box_f_mono(b.taut(Imp(e, Imp(T(dd), T(bb)))))
            return b.chain([m1, m2] + prem, here)
        if r == "R_imp":
            g = d.goal
            gs = [T(x) for x in sorted(d.gamma, key=self._key)]
            body = Imp(T(g.left), T(g.right))
            p = b.chain(prem, imps(gs, body))
            if not gs:
                return b.necf(p)
            boxed = b.box_curried(gs, body)
            pers = [persistence_in(b, x) for x in sorted(d.gamma, key=self._key)]
            return b.chain([boxed] + pers, here)
        if r == "L_imp_imp":
            cc, dd, bb = phi.left.left, phi.left.right, phi.right
            ct, dt, bt = T(cc), T(dd), T(bb)
            cd = BoxF(Imp(ct, dt))
            a1 = b.chain([persistence_in(b, dd), b.box_f_mono(b.taut(Imp(dt, Imp(ct, dt))))],
                         Imp(dt, cd))
            e = Imp(cd, bt)
            a2 = b.chain([a1], Imp(e, Imp(dt, bt)))
            a3 = b.box_f_mono(a2)                                    # [F]E -> (D -> B)^t
            a4 = b.scheme("T_F", A=e)
            return b.chain([a3, a4] + prem, here)
        raise GenerationError(f"unhandled G4ip rule {r}")


def axiom_closure_in(b: ProofBuilder, c: Formula, hint=None) -> Formula:
    """``universal_closure(C^t)`` for an IQC scheme instance or IPC instance ``C``."""
    rec = hint if hint is not None else recognize_scheme(c)
    if rec is not None:
        sid, wit = rec
        if sid not in IQC_SCHEMES or instantiate(sid, wit) != c:
            raise GenerationError(f"hint {sid} does not produce {print_formula(c)}")
        core = template_in(b, sid, wit)
        current = [v for v in _prefix(core)]
    else:
        if not is_intuitionistic(c):
            raise GenerationError("not an intuitionistic formula")
        core = ipc_in(b, c)
        current = []
    return b.close_to(core, current, free_vars(c))


def _prefix(f: Formula):
    out = []
    while isinstance(f, Forall):
        out.append(f.var)
        f = f.body
    return out


def prove_axiom_closure(c: Formula, hint=None) -> Proof:
    b = new_builder()
    t = axiom_closure_in(b, c, hint)
    if t != universal_closure(T(c), free_vars(c)):
        raise GenerationError("closure mismatch")
    return finish(b, t, "axiom_closure")
