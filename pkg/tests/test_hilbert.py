import os
import random

import pytest

from tempo.corpus_tools import CORPUS_DIR
from tempo.faithful_compiler import prove_dia_f_forall, s4t_library
from tempo.hilbert.checker import Library, check_proof
from tempo.hilbert.ipc import ipc_derivation, is_ipc_theorem
from tempo.hilbert.logics import LOGICS, get_logic
from tempo.hilbert.proof import ProofFormatError, dumps, load, loads, proof_from_json
from tempo.hilbert.schemes import match_scheme
from tempo.hilbert.taut import SkeletonTooLarge, is_classical_taut
from tempo.syntax import BOT, And, Atom, Imp, Or, parse_int, parse_tense
from tempo.modelsearch import PropModels

T, I = parse_tense, parse_int


def test_match_scheme_examples():
    px = T("P(x)")
    assert match_scheme("UIcirc", {"A": px, "x": "x", "y": "y"},
                        T("forall y. (forall x. P(x)) -> P(y)"))
    assert match_scheme("NID", {"A": T("P(y)"), "x": "x"}, T("(forall x. P(y)) -> P(y)"))
    m = match_scheme("NID", {"A": px, "x": "x"}, T("(forall x. P(x)) -> P(x)"))
    assert not m and "side condition" in m.reason
    assert not match_scheme("UI", {"A": T("forall y. P(x)"), "x": "x", "y": "y"},
                            T("(forall x. forall y. P(x)) -> forall y. P(y)"))
    assert not match_scheme("K_F", {"A": px}, T("p"))          # missing metavariable


@pytest.mark.parametrize("text, want", [
    ("([F] p -> q) | ~([F] p -> q)", True),
    ("[F] p -> p", False),
    ("(a -> b) -> (b -> c) -> a -> c", True),
    ("((p -> q) -> p) -> p", True),
    ("(forall x. P(x)) -> forall x. P(x)", True),
    ("(forall x. P(x)) -> forall y. P(y)", False),
])
def test_classical_taut(text, want):
    assert is_classical_taut(T(text)) is want


def test_taut_letter_cap():
    big = T(" | ".join(f"p{i}" for i in range(25)))
    with pytest.raises(SkeletonTooLarge):
        is_classical_taut(big)


@pytest.mark.parametrize("text, want", [
    ("p -> q -> p", True),
    ("p | ~p", False),
    ("~~(p | ~p)", True),
    ("((p -> q) -> p) -> p", False),
    ("~~p -> p", False),
    ("(p -> q) | (q -> p)", False),
    ("((p -> q) -> r) -> ((q -> p) -> r) -> r", False),
    ("~(p & q) -> ~~(~p | ~q)", True),
    ("false -> p", True),
])
def test_ipc_examples(text, want):
    assert is_ipc_theorem(I(text)) is want


def _prop(rng, depth):
    if depth == 0 or rng.random() < 0.2:
        return rng.choice((BOT, Atom("q", ()), Atom("r", ())))
    op = rng.choice((And, Or, Imp))
    return op(_prop(rng, depth - 1), _prop(rng, depth - 1))


def test_ipc_inside_classical_and_semantics():
    rng = random.Random(31)
    pm = PropModels(("q", "r"), 4)
    for _ in range(3000):
        f = _prop(rng, 4)
        ipc = is_ipc_theorem(f)
        if ipc:
            assert is_classical_taut(f)
            assert ipc_derivation(f) is not None
        assert ipc == pm.valid(f)
    assert is_classical_taut(I("p | ~p")) and not is_ipc_theorem(I("p | ~p"))


def _proof(logic, lines, goal=None):
    return proof_from_json({"logic": logic, "goal": goal, "lines": lines})


UI_LINE = {"formula": "(forall x. P(x)) -> P(y)",
           "just": {"kind": "scheme", "id": "UI", "wit": {"A": "P(x)", "x": "x", "y": "y"}}}


def test_ui_logic_membership():
    assert check_proof(_proof("IQC", [UI_LINE]))
    assert check_proof(_proof("QK", [UI_LINE]))
    res = check_proof(_proof("QcircS4t", [UI_LINE]))
    assert not res and res.line == 1 and "not in logic" in res.reason


def test_forward_reference_and_goal():
    p = _proof("IQC", [
        {"formula": "p -> p", "just": {"kind": "ipc"}},
        {"formula": "q", "just": {"kind": "mp", "from": [1, 3]}},
        {"formula": "p", "just": {"kind": "ipc"}},
    ])
    res = check_proof(p)
    assert not res and res.line == 2 and "forward reference" in res.reason
    ok = _proof("IQC", [{"formula": "p -> p", "just": {"kind": "ipc"}}], goal="q -> q")
    res = check_proof(ok)
    assert not res and "goal mismatch" in res.reason
    assert check_proof(ok, goal=I("p -> p"))


def test_rule_not_in_logic():
    p = _proof("QK", [
        {"formula": "p | ~p", "just": {"kind": "taut"}},
        {"formula": "[P] (p | ~p)", "just": {"kind": "necp", "from": 1}},
    ])
    res = check_proof(p)
    assert not res and res.line == 2
    with pytest.raises(ProofFormatError):
        _proof("IQC", [{"formula": "p", "just": {"kind": "mp", "from": [1]}}])


def test_gen_records_variable():
    p = _proof("IQC", [
        {"formula": "P(x) -> P(x)", "just": {"kind": "ipc"}},
        {"formula": "forall z. P(x) -> P(x)", "just": {"kind": "gen", "from": 1, "var": "z"}},
        {"formula": "forall x. P(x) -> P(x)", "just": {"kind": "gen", "from": 1, "var": "z"}},
    ])
    res = check_proof(p)
    assert not res and res.line == 3


def test_ipc_witness_instance():
    line = {"formula": "(forall x. P(x)) -> q -> forall x. P(x)",
            "just": {"kind": "ipc", "wit": {"theorem": "a -> b -> a",
                                            "subst": {"a": "forall x. P(x)", "b": "q"}}}}
    assert check_proof(_proof("IQC", [line]))


def test_bfp_tables_check():
    lib = s4t_library()
    half = prove_dia_f_forall(T("P(x)"), "x")
    assert check_proof(half, goal=T("(<F> forall x. P(x)) -> forall x. <F> P(x)"), library=lib)
    full = load(os.path.join(CORPUS_DIR, "qcirc_bfp.json"))
    res = check_proof(full, library=lib)
    assert res, res
    assert str(res) == f"OK ({len(full)} lines)"


def test_lemma_rules():
    lib = s4t_library()
    line = {"formula": "(<P> exists x. P(x)) -> [F] <P> exists x. P(x)",
            "just": {"kind": "lemma", "name": "dia_p_persist", "inst": {"c": "exists x. P(x)"}}}
    assert check_proof(_proof("QcircS4t", [line]), library=lib)
    assert not check_proof(_proof("QcircS4t", [line]), library=Library())
    assert not check_proof(_proof("QK", [line]), library=lib)


def test_qk_cbf_corpus_proof():
    p = load(os.path.join(CORPUS_DIR, "qk_cbf.json"))
    assert p.logic == "QK" and check_proof(p)


def test_json_roundtrip_of_corpus():
    for name in sorted(os.listdir(CORPUS_DIR)):
        if name.endswith(".json") and name.startswith(("iqc_", "s4t_", "qcirc_", "qk_")):
            p = load(os.path.join(CORPUS_DIR, name))
            assert loads(dumps(p)) == p


def test_logic_table():
    assert set(LOGICS) >= {"IQC", "QK", "QcircK", "QcircK_CBF", "QcircK_CBF_BF", "S4t", "QS4t",
                           "QcircS4t"}
    qc = get_logic("QcircS4t")
    assert {"UIcirc", "NID", "CBF_F"} <= qc.schemes and "UI" not in qc.schemes
    assert get_logic("QS4t").contains(get_logic("S4t"))
    with pytest.raises(ValueError):
        get_logic("nope")
