import random

import pytest

from randgen import random_assignment, random_iformula, random_iqc_model
from tempo.kripke_int import (
    AssignmentError, IqcFrame, ModelError, UnknownPredicate, eval_int, frame_valid_int,
    iqc_model_from_json, iqc_model_to_json, validate_iqc_model,
)
from tempo.syntax import free_vars, parse_int

I = parse_int


def model(worlds, order, domains, interp):
    return iqc_model_from_json({"kind": "iqc", "worlds": worlds, "order": order,
                                "domains": domains, "interp": interp})


def clauses(m):
    return {v.clause for v in validate_iqc_model(m)}


def test_validate_examples():
    assert validate_iqc_model(model(["w"], [], {"w": ["a"]}, {"P": {"w": [["a"]]}})) == []
    bad = model(["w", "v"], [["w", "v"]], {"w": ["a", "b"], "v": ["a"]}, {})
    vs = validate_iqc_model(bad)
    assert [v.witness for v in vs if v.clause == "increasing domains"] == [("w", "v", "b")]
    mono = model(["w", "v"], [["w", "v"]], {"w": ["a"], "v": ["a"]}, {"P": {"w": [["a"]]}})
    assert "monotone interpretation" in clauses(mono)


def test_load_rejects_cycle():
    with pytest.raises(ModelError):
        model(["w", "v"], [["w", "v"], ["v", "w"]], {"w": ["a"], "v": ["a"]}, {})


CD = model(["w0", "w1"], [["w0", "w1"]], {"w0": ["a"], "w1": ["a", "b"]},
           {"q": {"w1": [[]]}, "P": {"w0": [["a"]], "w1": [["a"]]}})


def test_eval_examples():
    assert not eval_int(CD, "w0", {}, I("false"))
    assert eval_int(CD, "w0", {}, I("forall x. q | P(x)"))
    assert not eval_int(CD, "w0", {}, I("q | forall x. P(x)"))
    one = model(["w"], [], {"w": ["a"]}, {"p": {"w": [[]]}})
    assert eval_int(one, "w", {}, I("~~p"))


def test_eval_errors():
    with pytest.raises(AssignmentError):
        eval_int(CD, "w0", {"y": "b"}, I("P(y)"))
    with pytest.raises(UnknownPredicate):
        eval_int(CD, "w0", {}, I("R(x)"))


def test_json_roundtrip():
    assert iqc_model_from_json(iqc_model_to_json(CD)).interp == CD.interp


def _chain(domains):
    ws = tuple(f"w{i}" for i in range(len(domains)))
    order = frozenset((ws[i], ws[j]) for i in range(len(ws)) for j in range(i, len(ws)))
    return IqcFrame(ws, order, {w: frozenset(d) for w, d in zip(ws, domains)})


def test_frame_validity_examples():
    cd = I("(forall x. q | P(x)) -> q | forall x. P(x)")
    assert frame_valid_int(_chain(["a"]), I("p -> p"), {"p": 0})
    assert not frame_valid_int(_chain(["a", "ab"]), cd, {"q": 0, "P": 1})
    assert frame_valid_int(_chain(["ab"]), cd, {"q": 0, "P": 1})


IQC_AXIOMS = [
    "(forall x. P(x)) -> P(y)", "(forall x. q) -> q", "P(y) -> exists x. P(x)",
    "q -> exists x. q", "(forall x. q -> P(x)) -> q -> forall x. P(x)",
    "(forall x. P(x) -> q) -> (exists x. P(x)) -> q",
]


def test_iqc_axioms_valid_on_small_frames():
    frames = [_chain(["a"]), _chain(["a", "ab"]), _chain(["a", "ab", "abc"]), _chain(["ab", "ab"])]
    branch = IqcFrame(("r", "s", "t"), frozenset({("r", "r"), ("s", "s"), ("t", "t"), ("r", "s"),
                                                  ("r", "t")}),
                      {"r": frozenset("a"), "s": frozenset("ab"), "t": frozenset("ac")})
    for fr in frames + [branch]:
        for ax in IQC_AXIOMS:
            assert frame_valid_int(fr, I(ax)), (ax, fr)


def test_persistence_and_locality():
    rng = random.Random(11)
    for _ in range(1500):
        m = random_iqc_model(rng)
        w = rng.choice(m.frame.worlds)
        a = random_iformula(rng)
        s = random_assignment(rng, m.frame.domains[w], a)
        val = eval_int(m, w, s, a)
        if val:
            assert all(eval_int(m, v, s, a) for v in m.frame.succ(w))
        extra = dict(s, unused_var=sorted(m.frame.domains[w])[-1])
        assert "unused_var" not in free_vars(a)
        assert eval_int(m, w, extra, a) == val
