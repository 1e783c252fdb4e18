import pytest

from tempo.kripke_int import eval_int
from tempo.kripke_tense import QK, TenseFrame, eval_tense, frame_properties, search_frame_tense
from tempo.modelsearch import (
    CORRESPONDENCE, BoundError, PropModels, SearchBounds, correspondence_suite, count_frames,
    enum_posets, enum_preorders, find_countermodel_int, find_countermodel_tense, rooted_posets,
)
from tempo.syntax import parse_int, parse_tense
from tempo.translate import goedel_t, translate_closed

I, T = parse_int, parse_tense


@pytest.mark.parametrize("n, posets, preorders", [(1, 1, 1), (2, 3, 4), (3, 19, 29), (4, 219, 355)])
def test_order_counts(n, posets, preorders):
    ps, qs = list(enum_posets(n)), list(enum_preorders(n))
    assert len(ps) == posets and len(set(ps)) == posets
    assert len(qs) == preorders and len(set(qs)) == preorders


def test_enumeration_bounds():
    with pytest.raises(BoundError):
        list(enum_preorders(9))
    with pytest.raises(ValueError):
        SearchBounds(max_worlds=0)
    with pytest.raises(ValueError):
        SearchBounds(max_inner=3, max_outer=2)


def test_rooted_posets_up_to_iso():
    # rooted posets on 1..4 points up to isomorphism: 1, 1, 2, 5
    sizes = [n for n, _ in rooted_posets(4)]
    assert [sizes.count(k) for k in (1, 2, 3, 4)] == [1, 1, 2, 5]
    pm = PropModels(("p",), 3)
    assert pm.valid(I("p -> p")) and not pm.valid(I("p | ~p"))


def test_cd_countermodel():
    cd = I("(forall x. q | P(x)) -> q | forall x. P(x)")
    r = find_countermodel_int(cd, SearchBounds(2, 2, 2))
    m, w, s = r.found
    assert not eval_int(m, w, s, cd)
    doms = sorted((len(d), sorted(d)) for d in m.frame.domains.values())
    assert len(m.frame.worlds) == 2 and doms == [(1, ["a"]), (2, ["a", "b"])]


def test_int_examples():
    assert not find_countermodel_int(I("p -> p"), SearchBounds(2, 2, 2)).found
    r = find_countermodel_int(I("p | ~p"), SearchBounds(2, 1, 1))
    m, w, s = r.found
    assert len(m.frame.worlds) == 2 and not eval_int(m, w, s, I("p | ~p"))
    assert not find_countermodel_int(I("(forall x. q | P(x)) -> q | forall x. P(x)"),
                                     SearchBounds(1, 2, 2)).found


def test_tense_examples():
    ui = I("(forall x. P(x)) -> P(y)")
    b = SearchBounds(1, 2, 2)
    r = find_countermodel_tense(goedel_t(ui), b)
    m, w, s = r.found
    assert m.frame.inner[w] == frozenset("a") and m.frame.outer == frozenset("ab")
    assert not eval_tense(m, w, s, goedel_t(ui))
    closed = find_countermodel_tense(translate_closed(ui), b)
    assert not closed.found and closed.complete
    assert not find_countermodel_tense(T("[F] p -> p"), SearchBounds(2, 2, 2)).found


def test_qk_class_and_cap():
    # without reflexivity the T axiom fails
    assert find_countermodel_tense(T("[F] p -> p"), SearchBounds(1, 1, 1), QK).found
    r = find_countermodel_tense(T("(forall x. P(x) | ~P(x))"), SearchBounds(2, 2, 2, cap=3))
    assert r.inconclusive and not r.found


def test_frame_counts_iso():
    b = SearchBounds(2, 2, 2)
    assert count_frames("tense", SearchBounds(2, 2, 2, iso_reduce=True)) < count_frames("tense", b)
    assert count_frames("iqc", b) > 0 and count_frames("qk", b) > count_frames("tense", b)


def _frame(inner, fc=QK, chain=True):
    ws = tuple(f"w{i}" for i in range(len(inner)))
    order = {(w, w) for w in ws} | ({(ws[0], ws[1])} if chain and len(ws) > 1 else set())
    return TenseFrame(ws, frozenset(order), {w: frozenset(d) for w, d in zip(ws, inner)},
                      frozenset("ab"), fc)


def test_correspondence_examples():
    nid = [T(t) for t in CORRESPONDENCE["NID"][1]]
    empty = _frame(["", "a"])
    assert not frame_properties(empty)["nonempty_inner"]
    assert not all(search_frame_tense(empty, f).valid for f in nid)
    const = _frame(["ab", "ab"])
    for k in ("CBF", "BF"):
        assert all(search_frame_tense(const, T(f)).valid for f in CORRESPONDENCE[k][1])


def test_correspondence_suite():
    rep = correspondence_suite(SearchBounds(2, 2, 2))
    assert rep.ok and rep.frames_checked > 100
    for k in CORRESPONDENCE:
        assert rep.tally[k]["valid"] and rep.tally[k]["invalid"]


def test_search_deterministic():
    f = I("(forall x. q | P(x)) -> q | forall x. P(x)")
    a = find_countermodel_int(f, SearchBounds(2, 2, 2))
    b = find_countermodel_int(f, SearchBounds(2, 2, 2))
    assert a.found[1:] == b.found[1:] and a.candidates_examined == b.candidates_examined
    assert a.found[0].interp == b.found[0].interp
