"""The shipped proof and model corpus: sources, regeneration and the runner.

``build_corpus`` writes every file of ``tempo/corpus`` from the definitions
here (hand-written IQC proofs, generated S4t lemmas and QcircS4t proofs,
golden compiler outputs) together with ``manifest.json``.  ``run_corpus``
reads the manifest and checks each entry in order, so lemma files are
registered before the proofs that cite them.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .faithful_compiler import compile_proof, lemma_proofs, prove_bfp
from .hilbert.checker import Library, check_proof
from .hilbert.proof import MP, Gen, IpcInst, Line, Nec, Proof, SchemeInst, dumps, load
from .hilbert.schemes import instantiate
from .kripke_int import eval_int, load_iqc_model
from .kripke_tense import eval_tense, load_tense_model
from .modelsearch import SearchBounds, find_countermodel_int, find_countermodel_tense
from .syntax import BoxF, Forall, Formula, Imp, parse_int, parse_tense
from .syntax import print_formula as pf

CORPUS_DIR = os.path.join(os.path.dirname(__file__), "corpus")


class _Writer:
    """Write a Hilbert proof line by line; each method returns the new line number."""

    def __init__(self, logic: str, parse=parse_int):
        self.logic = logic
        self.parse = parse
        self.lines: List[Line] = []

    def _push(self, f: Formula, j) -> int:
        self.lines.append(Line(f, j))
        return len(self.lines)

    def f(self, k: int) -> Formula:
        return self.lines[k - 1].formula

    def scheme(self, sid: str, **wit) -> int:
        w = {k: (v if k in ("x", "y") else self.parse(v)) for k, v in wit.items()}
        return self._push(instantiate(sid, w), SchemeInst(sid, w))

    def ipc(self, text: str) -> int:
        return self._push(self.parse(text), IpcInst())

    def mp(self, a: int, ab: int) -> int:
        imp = self.f(ab)
        assert isinstance(imp, Imp) and imp.left == self.f(a), (a, ab)
        return self._push(imp.right, MP(a, ab))

    def gen(self, k: int, x: str) -> int:
        return self._push(Forall(x, self.f(k)), Gen(k, x))

    def nec(self, k: int) -> int:
        return self._push(BoxF(self.f(k)), Nec(k))

    def proof(self, name: str) -> Proof:
        return Proof(self.logic, self.lines[-1].formula, list(self.lines), name)


def _chain(w: _Writer, ab: int, bc: int) -> int:
    """From ``A -> B`` and ``B -> C`` get ``A -> C`` through an IPC line."""
    a, b = w.f(ab).left, w.f(ab).right
    c = w.f(bc).right
    t = w.ipc(f"({pf(Imp(a, b))}) -> ({pf(Imp(b, c))}) -> ({pf(Imp(a, c))})")
    return w.mp(bc, w.mp(ab, t))


def iqc_sources() -> List[Proof]:
    out: List[Proof] = []

    def one(name, build):
        w = _Writer("IQC")
        build(w)
        out.append(w.proof(name))

    one("iqc_identity", lambda w: w.ipc("p -> p"))
    one("iqc_k", lambda w: w.ipc("p -> q -> p"))
    one("iqc_curry", lambda w: w.ipc("(p & q -> r) -> p -> q -> r"))
    one("iqc_dn_lem", lambda w: w.ipc("~~(p | ~p)"))
    one("iqc_ui", lambda w: w.scheme("UI", A="P(x)", x="x", y="y"))
    one("iqc_ui_vacuous", lambda w: w.scheme("UI", A="q", x="x", y="y"))
    one("iqc_ex_intro", lambda w: w.scheme("ExIntro", A="P(x)", x="x", y="y"))
    one("iqc_ex_intro_vacuous", lambda w: w.scheme("ExIntro", A="q", x="x", y="y"))
    one("iqc_forall_imp_in", lambda w: w.scheme("ForallImpIn", A="q", B="P(x)", x="x"))
    one("iqc_forall_imp_ex", lambda w: w.scheme("ForallImpEx", A="P(x)", B="q", x="x"))

    def gen_ui(w):
        w.gen(w.scheme("UI", A="P(x)", x="x", y="y"), "y")
    one("iqc_gen_bound", gen_ui)

    def gen_vacuous(w):
        w.gen(w.ipc("p -> p"), "x")
    one("iqc_gen_vacuous", gen_vacuous)

    def dn_quant(w):
        w.gen(w.ipc("~~(P(x) | ~P(x))"), "x")
    one("iqc_gen_dn_lem", dn_quant)

    def all_some(w):
        a = w.scheme("UI", A="P(x)", x="x", y="x")
        b = w.scheme("ExIntro", A="P(x)", x="x", y="x")
        _chain(w, a, b)
    one("iqc_forall_exists", all_some)

    def mono_exists(w):
        F, E = "forall x. P(x) -> Q(x)", "exists x. Q(x)"
        e = w.scheme("ExIntro", A="Q(x)", x="x", y="x")
        u = w.scheme("UI", A="P(x) -> Q(x)", x="x", y="x")
        t = w.ipc(f"(Q(x) -> {E}) -> (({F}) -> P(x) -> Q(x)) -> P(x) -> ({F}) -> {E}")
        s = w.mp(u, w.mp(e, t))
        g = w.gen(s, "x")
        fe = w.scheme("ForallImpEx", A="P(x)", B=f"({F}) -> {E}", x="x")
        r = w.mp(g, fe)
        sw = w.ipc(f"((exists x. P(x)) -> ({F}) -> {E}) -> ({F}) -> (exists x. P(x)) -> {E}")
        w.mp(r, sw)
    one("iqc_mono_exists", mono_exists)

    def forall_and(w):
        A = "forall x. P(x) & Q(x)"
        u = w.scheme("UI", A="P(x) & Q(x)", x="x", y="x")
        t = w.ipc(f"(({A}) -> P(x) & Q(x)) -> ({A}) -> P(x)")
        g = w.gen(w.mp(u, t), "x")
        w.mp(g, w.scheme("ForallImpIn", A=A, B="P(x)", x="x"))
    one("iqc_forall_and", forall_and)

    def swap(w):
        A = "forall x. forall y. R(x,y)"
        a = w.scheme("UI", A="forall y. R(x,y)", x="x", y="x")
        b = w.scheme("UI", A="R(x,y)", x="y", y="y")
        c = _chain(w, a, b)
        d = w.mp(w.gen(c, "x"), w.scheme("ForallImpIn", A=A, B="R(x,y)", x="x"))
        w.mp(w.gen(d, "y"), w.scheme("ForallImpIn", A=A, B="forall x. R(x,y)", x="y"))
    one("iqc_forall_swap", swap)

    def ex_or(w):
        EP, EQ = "exists x. P(x)", "exists x. Q(x)"
        a = w.scheme("ExIntro", A="P(x)", x="x", y="x")
        b = w.scheme("ExIntro", A="Q(x)", x="x", y="x")
        t = w.ipc(f"(P(x) -> {EP}) -> (Q(x) -> {EQ}) -> P(x) | Q(x) -> ({EP}) | ({EQ})")
        g = w.gen(w.mp(b, w.mp(a, t)), "x")
        w.mp(g, w.scheme("ForallImpEx", A="P(x) | Q(x)", B=f"({EP}) | ({EQ})", x="x"))
    one("iqc_exists_or", ex_or)

    def not_ex(w):
        E = "exists x. P(x)"
        a = w.scheme("ExIntro", A="P(x)", x="x", y="x")
        t = w.ipc(f"(P(x) -> {E}) -> ~({E}) -> ~P(x)")
        g = w.gen(w.mp(a, t), "x")
        w.mp(g, w.scheme("ForallImpIn", A=f"~({E})", B="~P(x)", x="x"))
    one("iqc_not_exists", not_ex)

    def dist(w):
        F, G = "forall x. P(x) -> Q(x)", "forall x. P(x)"
        a = w.scheme("UI", A="P(x) -> Q(x)", x="x", y="x")
        b = w.scheme("UI", A="P(x)", x="x", y="x")
        t = w.ipc(f"(({F}) -> P(x) -> Q(x)) -> (({G}) -> P(x)) -> ({F}) -> ({G}) -> Q(x)")
        g = w.gen(w.mp(b, w.mp(a, t)), "x")
        c = w.mp(g, w.scheme("ForallImpIn", A=F, B=f"({G}) -> Q(x)", x="x"))
        d = w.scheme("ForallImpIn", A=G, B="Q(x)", x="x")
        _chain(w, c, d)
    one("iqc_forall_distrib", dist)

    def ex_all(w):
        a = w.scheme("UI", A="R(x,y)", x="y", y="y")
        b = w.scheme("ExIntro", A="R(x,y)", x="x", y="x")
        c = _chain(w, a, b)
        d = w.mp(w.gen(c, "x"), w.scheme("ForallImpEx", A="forall y. R(x,y)",
                                          B="exists x. R(x,y)", x="x"))
        w.mp(w.gen(d, "y"), w.scheme("ForallImpIn", A="exists x. forall y. R(x,y)",
                                      B="exists x. R(x,y)", x="y"))
    one("iqc_exists_forall", ex_all)

    def partition(w):
        a = w.ipc("S(x,y) -> S(x,y)")
        ab = w.ipc("(S(x,y) -> S(x,y)) -> T(y,z) -> T(y,z)")
        w.mp(a, ab)
    one("iqc_mp_partition", partition)
    return out


def qk_cbf() -> Proof:
    w = _Writer("QK", parse_tense)
    u = w.scheme("UI", A="P(x)", x="x", y="x")
    k = w.scheme("K_F", A="forall x. P(x)", B="P(x)")
    s = w.mp(w.nec(u), k)
    w.mp(w.gen(s, "x"), w.scheme("ForallImpIn", A="[F] forall x. P(x)", B="[F] P(x)", x="x"))
    return w.proof("qk_cbf")


def ui_in_qcirc() -> Proof:
    w = _Writer("QcircS4t", parse_tense)
    w.scheme("UI", A="P(x)", x="x", y="y")
    return w.proof("fail_ui_qcirc")


_CD_MODEL = {
    "kind": "iqc", "worlds": ["w0", "w1"], "order": [["w0", "w1"]],
    "domains": {"w0": ["a"], "w1": ["a", "b"]},
    "interp": {"q": {"w1": [[]]}, "P": {"w0": [["a"]], "w1": [["a"]]}},
}
_UI_MODEL = {
    "kind": "tense", "frame_class": "QcircS4t", "worlds": ["w0"], "order": [],
    "inner": {"w0": ["a"]}, "outer": ["a", "b"], "interp": {"P": {"w0": [["a"]]}},
}
_QK_MODEL = {
    "kind": "tense", "frame_class": "QcircK", "worlds": ["w0", "w1"], "order": [["w0", "w1"]],
    "inner": {"w0": [], "w1": ["a"]}, "outer": ["a"], "interp": {"q": {}},
}

EVALUATIONS = [
    ("model_cd.json", "iqc", "w0", {}, "forall x. q | P(x)", True),
    ("model_cd.json", "iqc", "w0", {}, "q | forall x. P(x)", False),
    ("model_ui.json", "tense", "w0", {"y": "b"}, "[F] (([F] forall x. [F] P(x)) -> [F] P(y))", False),
    ("model_ui.json", "tense", "w0", {}, "<P> exists x. [F] P(x)", True),
    ("model_qk_empty.json", "tense", "w0", {}, "(forall x. q) -> q", False),
]

QUERIES = [
    ("iqc", "(forall x. q | P(x)) -> q | forall x. P(x)", (2, 2, 2), "found"),
    ("iqc", "p -> p", (2, 2, 2), "not_found"),
    ("iqc", "p | ~p", (2, 1, 1), "found"),
    ("tense", "[F] (([F] forall x. [F] P(x)) -> [F] P(y))", (1, 2, 2), "found"),
    ("tense", "forall y. [F] (([F] forall x. [F] P(x)) -> [F] P(y))", (1, 2, 2), "not_found"),
    ("tense", "[F] p -> p", (2, 2, 2), "not_found"),
]


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def build_corpus(directory: str = CORPUS_DIR) -> Dict[str, Any]:
    """Regenerate every corpus file and the manifest; returns the manifest."""
    os.makedirs(directory, exist_ok=True)
    entries: List[Dict[str, Any]] = []

    def put(p: Proof, fname: str, expect: str = "checks", **extra):
        _write(os.path.join(directory, fname), dumps(p))
        e = {"file": fname, "logic": p.logic, "expect": expect}
        if p.name and expect == "checks":
            e["name"] = p.name
        e.update(extra)
        entries.append(e)

    for name, p in lemma_proofs().items():
        put(p, f"s4t_{name}.json", lemma=True)
    bfp = prove_bfp(parse_tense("P(x)"), "x")
    bfp.name = "qcirc_bfp"
    put(bfp, "qcirc_bfp.json")
    put(qk_cbf(), "qk_cbf.json")
    put(ui_in_qcirc(), "fail_ui_qcirc.json", expect="fails(1)")
    for src in iqc_sources():
        gold = f"compiled_{src.name[4:]}.json"
        put(src, f"{src.name}.json", compile=gold)
        final = compile_proof(src).final
        final.name = f"compiled_{src.name[4:]}"
        put(final, gold)

    models = []
    for fname, data in (("model_cd.json", _CD_MODEL), ("model_ui.json", _UI_MODEL),
                        ("model_qk_empty.json", _QK_MODEL)):
        _write(os.path.join(directory, fname), json.dumps(data, indent=1) + "\n")
        models.append({"file": fname, "kind": data["kind"]})
    manifest = {
        "proofs": entries,
        "models": models,
        "evaluations": [{"model": m, "kind": k, "world": w, "assign": s, "formula": f, "expect": v}
                        for m, k, w, s, f, v in EVALUATIONS],
        "queries": [{"logic": l, "formula": f, "max_worlds": b[0], "max_inner": b[1],
                     "max_outer": b[2], "expect": e} for l, f, b, e in QUERIES],
    }
    _write(os.path.join(directory, "manifest.json"), json.dumps(manifest, indent=1) + "\n")
    return manifest


# -- runner ------------------------------------------------------------------------

@dataclass
class CorpusReport:
    rows: List[tuple] = field(default_factory=list)      # (item, ok, detail)

    @property
    def ok(self) -> bool:
        return all(r[1] for r in self.rows)

    def add(self, item: str, ok: bool, detail: str = "") -> None:
        self.rows.append((item, ok, detail))


def load_manifest(directory: str = CORPUS_DIR) -> Dict[str, Any]:
    with open(os.path.join(directory, "manifest.json"), encoding="utf-8") as fh:
        return json.load(fh)


def _expect_matches(expect: str, res) -> bool:
    if expect == "checks":
        return res.ok
    if expect.startswith("fails(") and expect.endswith(")"):
        return not res.ok and res.line == int(expect[6:-1])
    raise ValueError(f"unknown expected outcome {expect!r}")


def run_corpus(directory: str = CORPUS_DIR, compile_golden: bool = True) -> CorpusReport:
    man = load_manifest(directory)
    rep = CorpusReport()
    lib = Library()
    for e in man["proofs"]:
        path = os.path.join(directory, e["file"])
        p = load(path)
        if p.logic != e["logic"]:
            rep.add(e["file"], False, f"logic {p.logic} but manifest says {e['logic']}")
            continue
        res = check_proof(p, library=lib)
        ok = _expect_matches(e["expect"], res)
        rep.add(e["file"], ok, f"{res} (expected {e['expect']})")
        if ok and res.ok and e.get("name"):
            lib.add_checked(e["name"], p)
        if compile_golden and e.get("compile") and res.ok:
            with open(os.path.join(directory, e["compile"]), encoding="utf-8") as fh:
                gold = fh.read()
            out = compile_proof(p).final
            out.name = os.path.splitext(e["compile"])[0]
            same = dumps(out) == gold
            rep.add(f"{e['file']} -> {e['compile']}", same,
                    "compiled output matches golden file" if same else "compiled output differs")
    for ev in man.get("evaluations", []):
        path = os.path.join(directory, ev["model"])
        if ev["kind"] == "iqc":
            got = eval_int(load_iqc_model(path), ev["world"], ev["assign"], parse_int(ev["formula"]))
        else:
            got = eval_tense(load_tense_model(path), ev["world"], ev["assign"], parse_tense(ev["formula"]))
        rep.add(f"eval {ev['model']} {ev['formula']}", got == ev["expect"], f"{got}")
    for q in man.get("queries", []):
        b = SearchBounds(q["max_worlds"], q["max_inner"], q["max_outer"])
        if q["logic"] == "iqc":
            r = find_countermodel_int(parse_int(q["formula"]), b)
        else:
            r = find_countermodel_tense(parse_tense(q["formula"]), b)
        got = "found" if r.found else ("not_found" if r.complete else "inconclusive")
        rep.add(f"countermodel {q['logic']} {q['formula']}", got == q["expect"], got)
    return rep


if __name__ == "__main__":
    build_corpus()
