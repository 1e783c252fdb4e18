"""Propositional S4t lemmas over the letters ``c`` and ``d``.

Each lemma is derived from the finite S4t axiomatization (K, T, 4 for both
modalities, the two interaction axioms, the duality definitions) and checked
under the S4t logic.  Checked S4t lemmas may be instantiated by arbitrary
formulas in the predicate logics, which is uniform substitution into S4t
theorems.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from ..hilbert.checker import Library
from ..hilbert.proof import Proof
from ..syntax import And, Atom, BoxF, BoxP, DiaF, DiaP, Formula, Imp, Not, Or
from .builder import GenerationError, ProofBuilder

c, d = Atom("c", ()), Atom("d", ())


def _k_dia(b: ProofBuilder, box, dia, k_scheme, dual1, dual2, nec) -> Formula:
    contra = b.taut(Imp(Imp(c, d), Imp(Not(d), Not(c))))
    lift = b.mp(nec(contra), b.scheme(k_scheme, A=Imp(c, d), B=Imp(Not(d), Not(c))))
    k = b.scheme(k_scheme, A=Not(d), B=Not(c))
    return b.chain([lift, k, b.scheme(dual1, A=c), b.scheme(dual2, A=d)],
                   Imp(box(Imp(c, d)), Imp(dia(c), dia(d))))


def k_dia_f(b: ProofBuilder) -> Formula:
    return _k_dia(b, BoxF, DiaF, "K_F", "DualF1", "DualF2", b.necf)


def k_dia_p(b: ProofBuilder) -> Formula:
    return _k_dia(b, BoxP, DiaP, "K_P", "DualP1", "DualP2", b.necp)


def t_dia_f(b: ProofBuilder) -> Formula:
    return b.chain([b.scheme("T_F", A=Not(c)), b.scheme("DualF2", A=c)], Imp(c, DiaF(c)))


def t_dia_p(b: ProofBuilder) -> Formula:
    return b.chain([b.scheme("T_P", A=Not(c)), b.scheme("DualP2", A=c)], Imp(c, DiaP(c)))


def four_dia_p(b: ProofBuilder) -> Formula:
    # contrapositive: ~<P>c -> [P]~c -> [P][P]~c -> [P]~<P>c -> ~<P><P>c
    d1 = b.scheme("DualP1", A=c)                # <P>c -> ~[P]~c
    d2 = b.scheme("DualP2", A=c)                # ~[P]~c -> <P>c
    four = b.scheme("Four_P", A=Not(c))
    inner = b.chain([d1], Imp(BoxP(Not(c)), Not(DiaP(c))))
    lifted = b.box_p_mono(inner)                # [P][P]~c -> [P]~<P>c
    outer = b.scheme("DualP1", A=DiaP(c))       # <P><P>c -> ~[P]~<P>c
    return b.chain([d2, four, lifted, outer], Imp(DiaP(DiaP(c)), DiaP(c)))


def dia_p_persist(b: ProofBuilder) -> Formula:
    fp = b.scheme("FP", A=DiaP(c))              # <P>c -> [F]<P><P>c
    mono = b.box_f_mono(b.lemma("four_dia_p"))
    return b.chain([fp, mono], Imp(DiaP(c), BoxF(DiaP(c))))


def dia_p_box_f_elim(b: ProofBuilder) -> Formula:
    """``<P>[F]c -> c``, contrapositive of PF on ``~c``."""
    pf = b.scheme("PF", A=Not(c))                            # ~c -> [P]<F>~c
    dual = b.scheme("DualF1", A=Not(c))                      # <F>~c -> ~[F]~~c
    dn = b.box_f_mono(b.taut(Imp(c, Not(Not(c)))))
    step = b.chain([dual, dn], Imp(DiaF(Not(c)), Not(BoxF(c))))
    lifted = b.box_p_mono(step)                              # [P]<F>~c -> [P]~[F]c
    out = b.scheme("DualP1", A=BoxF(c))                      # <P>[F]c -> ~[P]~[F]c
    return b.chain([pf, lifted, out], Imp(DiaP(BoxF(c)), c))


def dia_f_box_p_elim(b: ProofBuilder) -> Formula:
    """``<F>[P]c -> c``, contrapositive of FP on ``~c``."""
    fp = b.scheme("FP", A=Not(c))
    dual = b.scheme("DualP1", A=Not(c))
    dn = b.box_p_mono(b.taut(Imp(c, Not(Not(c)))))
    step = b.chain([dual, dn], Imp(DiaP(Not(c)), Not(BoxP(c))))
    lifted = b.box_f_mono(step)
    out = b.scheme("DualF1", A=BoxP(c))
    return b.chain([fp, lifted, out], Imp(DiaF(BoxP(c)), c))


def box_f_and(b: ProofBuilder) -> Formula:
    pair = b.taut(Imp(c, Imp(d, And(c, d))))
    k1 = b.box_f_mono(pair)                     # [F]c -> [F](d -> c & d)
    k2 = b.scheme("K_F", A=d, B=And(c, d))
    return b.chain([k1, k2], Imp(And(BoxF(c), BoxF(d)), BoxF(And(c, d))))


def box_f_or(b: ProofBuilder) -> Formula:
    l = b.box_f_mono(b.taut(Imp(c, Or(c, d))))
    r = b.box_f_mono(b.taut(Imp(d, Or(c, d))))
    return b.chain([l, r], Imp(Or(BoxF(c), BoxF(d)), BoxF(Or(c, d))))


LEMMAS: List[Tuple[str, Callable[[ProofBuilder], Formula]]] = [
    ("k_dia_f", k_dia_f),
    ("k_dia_p", k_dia_p),
    ("t_dia_f", t_dia_f),
    ("t_dia_p", t_dia_p),
    ("four_dia_p", four_dia_p),
    ("dia_p_persist", dia_p_persist),
    ("dia_p_box_f_elim", dia_p_box_f_elim),
    ("dia_f_box_p_elim", dia_f_box_p_elim),
    ("box_f_and", box_f_and),
    ("box_f_or", box_f_or),
]


def lemma_proofs() -> Dict[str, Proof]:
    """Generate and check every lemma in dependency order."""
    lib = Library()
    out: Dict[str, Proof] = {}
    for name, gen in LEMMAS:
        b = ProofBuilder("S4t", lib)
        concl = gen(b)
        p = b.extract(concl, name=name)
        res = lib.add_checked(name, p)
        if not res:
            raise GenerationError(f"lemma {name} failed to check: {res}")
        out[name] = p
    return out


@lru_cache(maxsize=1)
def _cached() -> Tuple[Library, Dict[str, Proof]]:
    proofs = lemma_proofs()
    lib = Library()
    for name, p in proofs.items():
        lib.add_checked(name, p)
    return lib, proofs


def s4t_library() -> Library:
    """A fresh library holding the checked S4t lemmas (safe to extend)."""
    lib, _ = _cached()
    return Library(dict(lib.entries))
