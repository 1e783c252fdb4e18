import random

import pytest

from randgen import random_iformula
from tempo.syntax import BOT, Atom, BoxF, CaptureError, free_vars, parse_int, parse_tense, substitute
from tempo.translate import goedel_t, translate_closed, universal_closure

I, T = parse_int, parse_tense


@pytest.mark.parametrize("src, want", [
    ("false", "false"),
    ("exists x. P(x)", "<P> exists x. [F] P(x)"),
    ("forall x. P(x) -> Q(x)", "[F] forall x. [F] ([F] P(x) -> [F] Q(x))"),
    ("p & q | r", "[F] p & [F] q | [F] r"),
])
def test_goedel_t(src, want):
    assert goedel_t(I(src)) == T(want)


def test_universal_closure():
    assert universal_closure(BoxF(Atom("P", ("x",))), ["x"]) == T("forall x. [F] P(x)")
    assert universal_closure(BOT, []) == BOT
    assert universal_closure(T("[F] P(x, y)"), ["y", "x"]) == T("forall y. forall x. [F] P(x, y)")
    assert universal_closure(T("[F] P(x, y)")) == T("forall x. forall y. [F] P(x, y)")
    with pytest.raises(ValueError):
        universal_closure(T("[F] P(x)"), ["x", "x"])


@pytest.mark.parametrize("src, want", [
    ("forall x. P(x)", "[F] forall x. [F] P(x)"),
    ("P(x)", "forall x. [F] P(x)"),
    ("(forall x. P(x)) -> P(y)", "forall y. [F] (([F] forall x. [F] P(x)) -> [F] P(y))"),
])
def test_translate_closed(src, want):
    assert translate_closed(I(src)) == T(want)


def test_translation_properties():
    rng = random.Random(7)
    seen = {}
    for _ in range(2000):
        a = random_iformula(rng, 4)
        t = goedel_t(a)
        assert free_vars(t) == free_vars(a)
        assert seen.setdefault(t, a) == a          # injective
        x, y = rng.sample(["x", "y", "z"], 2)
        try:
            sa = substitute(a, x, y)
        except CaptureError:
            continue
        assert goedel_t(sa) == substitute(t, x, y)
