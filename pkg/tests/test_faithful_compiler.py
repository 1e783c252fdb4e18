import os
import subprocess
import sys

import pytest

from tempo.corpus_tools import iqc_sources
from tempo.faithful_compiler import (
    GenerationError, compile_gen_step, compile_mp_step, compile_proof, prove_axiom_closure,
    prove_bfp, prove_box_persistence, prove_corsi_fact, recognize_scheme, s4t_library,
)
from tempo.hilbert.checker import check_proof
from tempo.hilbert.proof import dumps, proof_from_json
from tempo.kripke_tense import S4T, search_frame_tense
from tempo.modelsearch import SearchBounds, find_countermodel_tense, tense_frames
from tempo.syntax import BoxF, DiaP, Imp, parse_int, parse_tense
from tempo.translate import goedel_t, translate_closed

I, T = parse_int, parse_tense
LIB = s4t_library()


def checks(p, goal=None):
    res = check_proof(p, goal=goal, logic="QcircS4t", library=LIB)
    assert res, res
    return True


# -- corsi facts ----------------------------------------------------------------------

def test_corsi_facts():
    assert checks(prove_corsi_fact("ex_intro", T("P(x)"), None, "x"),
                  T("forall y. P(y) -> exists x. P(x)"))
    assert checks(prove_corsi_fact("forall_imp_in", T("q"), T("P(x)"), "x"),
                  T("(forall x. q -> P(x)) -> q -> forall x. P(x)"))
    assert checks(prove_corsi_fact("forall_imp_ex", T("P(x)"), T("q"), "x"),
                  T("(forall x. P(x) -> q) -> (exists x. P(x)) -> q"))
    with pytest.raises(GenerationError):
        prove_corsi_fact("forall_imp_in", T("P(x)"), T("Q(x)"), "x")
    with pytest.raises(GenerationError):
        prove_corsi_fact("nonsense", T("P(x)"), None, "x")


# -- persistence --------------------------------------------------------------------

@pytest.mark.parametrize("src, goal", [
    ("false", "false -> [F] false"),
    ("P(x)", "[F] P(x) -> [F] [F] P(x)"),
    ("exists x. P(x)", "(<P> exists x. [F] P(x)) -> [F] <P> exists x. [F] P(x)"),
    ("P(x) & q | r", None),
    ("forall x. P(x) -> q", None),
])
def test_box_persistence(src, goal):
    a = I(src)
    at = goedel_t(a)
    want = Imp(at, BoxF(at))
    if goal is not None:
        assert T(goal) == want
    assert checks(prove_box_persistence(a), want)


def test_companion_past_elimination():
    a = I("exists x. P(x) | q")
    at = goedel_t(a)
    p = prove_box_persistence(a, companion=True)
    assert checks(p, Imp(DiaP(at), at))


# -- BF_P ---------------------------------------------------------------------------

def test_bfp():
    assert checks(prove_bfp(T("P(x)"), "x"), T("(forall x. [P] P(x)) -> [P] forall x. P(x)"))
    assert checks(prove_bfp(T("P(z)"), "z"), T("(forall z. [P] P(z)) -> [P] forall z. P(z)"))
    assert checks(prove_bfp(T("P(x) | q"), "x"))


# -- axiom templates ------------------------------------------------------------------

@pytest.mark.parametrize("src, want", [
    ("(forall x. P(x)) -> P(y)", "forall y. [F] (([F] forall x. [F] P(x)) -> [F] P(y))"),
    ("P(y) -> exists x. P(x)", "forall y. [F] ([F] P(y) -> <P> exists x. [F] P(x))"),
    ("p -> p", "[F] ([F] p -> [F] p)"),
    ("(forall x. q) -> q", None),
    ("q -> exists x. q", None),
    ("(forall x. q -> P(x)) -> q -> forall x. P(x)", None),
    ("(forall x. P(x) -> q) -> (exists x. P(x)) -> q", None),
    ("(forall x. P(x, y)) -> P(z, y)", None),
    ("(P(x) -> Q(y)) -> P(x) -> Q(y)", None),
    ("~~(P(x) | ~P(x))", None),
])
def test_axiom_closure(src, want):
    c = I(src)
    goal = translate_closed(c)
    if want is not None:
        assert goal == T(want)
    assert checks(prove_axiom_closure(c), goal)


def test_axiom_closure_rejects_non_axioms():
    assert recognize_scheme(I("(forall x. P(x)) -> P(y)"))[0] == "UI"
    with pytest.raises(GenerationError):
        prove_axiom_closure(I("p | ~p"))
    with pytest.raises(GenerationError):
        prove_axiom_closure(I("(forall x. q | P(x)) -> q | forall x. P(x)"))


# -- MP and Gen step compilers -------------------------------------------------------

MP_CASES = [
    ("P(x) -> P(x)", "Q(x) -> Q(x)"),
    ("p -> p", "q -> q"),
    ("R(x, y) -> R(x, y)", "S(y, z) -> S(y, z)"),
]


@pytest.mark.parametrize("a, b", MP_CASES)
def test_compile_mp_step(a, b):
    a, b = I(a), I(b)
    pab = prove_axiom_closure(Imp(a, b))
    pa = prove_axiom_closure(a)
    out = compile_mp_step(pab, pa, a, b)
    assert checks(out, translate_closed(b))


def test_compile_mp_step_rejects_bad_inputs():
    a, b = I("p -> p"), I("q -> q")
    with pytest.raises(GenerationError):
        compile_mp_step(prove_axiom_closure(a), prove_axiom_closure(a), a, b)


@pytest.mark.parametrize("a, x, want", [
    ("P(x) -> P(x)", "x", "[F] forall x. [F] ([F] P(x) -> [F] P(x))"),
    ("q -> q", "x", "[F] forall x. [F] ([F] q -> [F] q)"),
    ("R(x, y) -> R(x, y)", "x", "forall y. [F] forall x. [F] ([F] R(x, y) -> [F] R(x, y))"),
])
def test_compile_gen_step(a, x, want):
    a = I(a)
    out = compile_gen_step(prove_axiom_closure(a), x, a)
    assert checks(out, T(want))


# -- whole proofs ---------------------------------------------------------------------

def _iqc(lines, goal=None):
    return proof_from_json({"logic": "IQC", "goal": goal, "lines": lines})


def test_compile_one_line():
    tr = compile_proof(_iqc([{"formula": "p -> p", "just": {"kind": "ipc"}}]))
    assert checks(tr.final, T("[F] ([F] p -> [F] p)"))
    assert [s.kind for s in tr.steps] == ["ipc"]


def test_compile_ending_in_gen():
    p = _iqc([
        {"formula": "P(x) -> P(x)", "just": {"kind": "ipc"}},
        {"formula": "forall x. P(x) -> P(x)", "just": {"kind": "gen", "from": 1, "var": "x"}},
    ])
    tr = compile_proof(p)
    assert tr.steps[-1].kind == "gen"
    assert checks(tr.final, translate_closed(p.conclusion))
    for s in tr.steps:
        assert checks(s.proof, s.target)


def test_compile_rejects_bad_source():
    with pytest.raises(GenerationError):
        compile_proof(_iqc([{"formula": "p | ~p", "just": {"kind": "ipc"}}]))
    tense = proof_from_json({"logic": "QcircS4t", "lines": [
        {"formula": "[F] p -> p", "just": {"kind": "scheme", "id": "T_F", "wit": {"A": "p"}}}]})
    with pytest.raises(GenerationError):
        compile_proof(tense)


def test_corpus_compiles():
    srcs = iqc_sources()
    assert len(srcs) >= 20
    mono = [p for p in srcs if p.name == "iqc_mono_exists"]
    assert mono and mono[0].conclusion == I(
        "(forall x. P(x) -> Q(x)) -> (exists x. P(x)) -> exists x. Q(x)")
    for p in srcs:
        assert checks(compile_proof(p).final, translate_closed(p.conclusion))


def test_closure_is_essential():
    c = I("(forall x. P(x)) -> P(y)")
    assert checks(prove_axiom_closure(c), translate_closed(c))
    b = SearchBounds(max_worlds=1, max_inner=2, max_outer=2)
    assert find_countermodel_tense(goedel_t(c), b).found
    assert not find_countermodel_tense(translate_closed(c), b).found


def test_compiled_goals_frame_valid():
    frames = list(tense_frames(SearchBounds(2, 2, 2), S4T))
    for p in iqc_sources()[:8]:
        g = translate_closed(p.conclusion)
        assert all(search_frame_tense(fr, g).valid for fr in frames), p.name


_DETERMINISM = """
from tempo.corpus_tools import iqc_sources
from tempo.faithful_compiler import compile_proof, prove_bfp
from tempo.hilbert.proof import dumps
from tempo.syntax import parse_tense
import hashlib
h = hashlib.sha256()
for p in iqc_sources():
    h.update(dumps(compile_proof(p).final).encode())
h.update(dumps(prove_bfp(parse_tense("P(x) | q"), "x")).encode())
print(h.hexdigest())
"""


def test_output_deterministic_across_hash_seeds():
    outs = set()
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        r = subprocess.run([sys.executable, "-c", _DETERMINISM], env=env, capture_output=True,
                           text=True, check=True)
        outs.add(r.stdout.strip())
    assert len(outs) == 1
    a = dumps(compile_proof(iqc_sources()[0]).final)
    assert a == dumps(compile_proof(iqc_sources()[0]).final)
