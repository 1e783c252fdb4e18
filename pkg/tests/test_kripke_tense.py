import random

import pytest

from randgen import random_assignment, random_iformula, random_iqc_model, random_tense_model
from tempo.kripke_int import AssignmentError, eval_int, iqc_model_from_json, true_at
from tempo.kripke_tense import (
    QK, S4T, TenseFrame, eval_tense, frame_properties, frame_valid_tense, mbar,
    tense_model_from_json, tense_model_to_json, validate_tense_model,
)
from tempo.syntax import parse_tense
from tempo.translate import goedel_t, translate_closed

T = parse_tense


def tmodel(worlds, order, inner, outer, interp=None, frame_class=S4T):
    return tense_model_from_json({"kind": "tense", "frame_class": frame_class, "worlds": worlds,
                                  "order": order, "inner": inner, "outer": outer,
                                  "interp": interp or {}})


def clauses(m):
    return {v.clause for v in validate_tense_model(m)}


def test_validate_examples():
    assert validate_tense_model(tmodel(["w"], [], {"w": ["a"]}, ["a", "b"])) == []
    assert "increasing inner domains" in clauses(
        tmodel(["w", "v"], [["w", "v"]], {"w": ["a", "b"], "v": ["a"]}, ["a", "b"]))
    assert {"outer contains union", "nonempty outer"} <= clauses(tmodel(["w"], [], {"w": ["a"]}, []))


def test_frame_properties():
    s = lambda *xs: frozenset(xs)
    order = s(("w", "w"), ("v", "v"), ("w", "v"))
    const = TenseFrame(("w", "v"), order, {"w": s("a"), "v": s("a")}, s("a"))
    assert all(frame_properties(const).values())
    grow = TenseFrame(("w", "v"), order, {"w": s("a"), "v": s("a", "b")}, s("a", "b"))
    p = frame_properties(grow)
    assert p["increasing"] and not p["decreasing"]
    empty = TenseFrame(("w",), s(("w", "w")), {"w": s()}, s("a"), QK)
    assert not frame_properties(empty)["nonempty_inner"]


UI = tmodel(["w0"], [], {"w0": ["a"]}, ["a", "b"], {"P": {"w0": [["a"]]}})


def test_eval_examples():
    assert eval_tense(UI, "w0", {}, T("<P> exists x. [F] P(x)"))
    assert not eval_tense(UI, "w0", {"y": "b"}, T("[F] (([F] forall x. [F] P(x)) -> [F] P(y))"))
    assert not eval_tense(UI, "w0", {}, T("false"))
    with pytest.raises(AssignmentError):
        eval_tense(UI, "w0", {"y": "c"}, T("P(y)"))


def test_past_and_future_directions():
    m = tmodel(["w", "v"], [["w", "v"]], {"w": ["a"], "v": ["a"]}, ["a"], {"q": {"w": [[]]}})
    assert eval_tense(m, "v", {}, T("<P> q")) and not eval_tense(m, "w", {}, T("<F> ~q -> false"))
    assert not eval_tense(m, "w", {}, T("[F] q")) and eval_tense(m, "v", {}, T("[P] ~q -> false"))


def test_mbar_examples():
    one = iqc_model_from_json({"kind": "iqc", "worlds": ["w"], "domains": {"w": ["a"]}, "interp": {}})
    assert mbar(one).frame.outer == frozenset("a")
    two = iqc_model_from_json({"kind": "iqc", "worlds": ["w", "v"], "order": [["w", "v"]],
                               "domains": {"w": ["a"], "v": ["a", "b"]}, "interp": {}})
    assert mbar(two).frame.outer == frozenset("ab")
    rng = random.Random(3)
    for _ in range(200):
        mb = mbar(random_iqc_model(rng))
        assert validate_tense_model(mb) == []
        p = frame_properties(mb.frame)
        assert p["increasing"] and p["nonempty_inner"]


def _frame(n_worlds, inner, outer, chain=True):
    ws = tuple(f"w{i}" for i in range(n_worlds))
    order = frozenset((ws[i], ws[j]) for i in range(n_worlds) for j in range(n_worlds)
                      if i == j or (chain and i < j))
    return TenseFrame(ws, order, {w: frozenset(d) for w, d in zip(ws, inner)}, frozenset(outer))


def test_frame_validity_examples():
    assert frame_valid_tense(_frame(2, ["a", "ab"], "ab"), T("[F] p -> p"))
    # BF fails as soon as some successor has a new inner element
    assert not frame_valid_tense(_frame(2, ["a", "ab"], "ab"),
                                 T("(forall x. [F] P(x)) -> [F] forall x. P(x)"))
    assert not frame_valid_tense(_frame(1, ["a"], "ab"), T("(forall x. P(x)) -> P(y)"))


def test_json_roundtrip():
    m = tense_model_from_json(tense_model_to_json(UI))
    assert m.frame == UI.frame and m.interp == UI.interp


def test_semantic_equivalence_open_and_closed():
    rng = random.Random(5)
    for _ in range(1500):
        m = random_iqc_model(rng, 3, 2)
        mb = mbar(m)
        w = rng.choice(m.frame.worlds)
        a = random_iformula(rng, 3)
        s = random_assignment(rng, m.frame.domains[w], a)
        assert eval_int(m, w, s, a) == eval_tense(mb, w, s, goedel_t(a))
        # closure read at w-inner assignments only, which is what the outer
        # quantifiers of the closure range over
        assert true_at(m, w, a) == eval_tense(mb, w, {}, translate_closed(a))


def test_translated_persistence():
    rng = random.Random(6)
    for _ in range(1500):
        m = random_tense_model(rng)
        v = rng.choice(m.frame.worlds)
        at = goedel_t(random_iformula(rng, 3))
        s = random_assignment(rng, m.frame.outer, at)
        if eval_tense(m, v, s, at):
            assert all(eval_tense(m, w, s, at) for w in m.frame.succ(v))

