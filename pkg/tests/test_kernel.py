"""The compiled and pure-Python kernels must agree, and agree with direct evaluation."""
import itertools
import os
import random
import subprocess
import sys

import pytest

from randgen import random_iformula, random_tense_model, random_tformula
from tempo import kernel
from tempo.kripke_int import IqcFrame, search_frame_int
from tempo.kripke_tense import (
    TenseFrame, TenseModel, eval_tense, search_frame_tense, to_structure as tense_structure,
)
from tempo.syntax import free_vars, parse_tense, signature

BACKENDS = kernel.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")


def test_backend_selected():
    assert kernel.BACKEND in BACKENDS


def test_pure_python_switch():
    env = dict(os.environ, TEMPO_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from tempo import kernel; print(kernel.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_cap_env(monkeypatch):
    monkeypatch.setenv("TEMPO_MAX_CANDIDATES", "123")
    assert kernel.default_cap() == 123
    monkeypatch.delenv("TEMPO_MAX_CANDIDATES")
    assert kernel.default_cap() == kernel.DEFAULT_CAP


@needs_both
def test_eval_table_agrees():
    rng = random.Random(21)
    for _ in range(300):
        m = random_tense_model(rng, 3, 2)
        st, ws, es = tense_structure(m.frame)
        f = random_tformula(rng, 3, ("x", "y"))
        prog = kernel.compile_formula(f, kernel.TENSE, len(es))
        interp = [rng.randrange(1 << st.n_worlds) for _ in prog.cells(len(es))]
        a, b = (kernel.eval_table(prog, st, interp, BACKENDS[k]) for k in ("python", "cython"))
        assert a == b


@needs_both
def test_search_agrees():
    rng = random.Random(22)
    for _ in range(150):
        m = random_tense_model(rng, 2, 2)
        f = random_tformula(rng, 3, ("x", "y"))
        r = [search_frame_tense(m.frame, f, backend=BACKENDS[k]) for k in ("python", "cython")]
        assert (r[0].valid, r[0].examined, r[0].world, r[0].assignment) == \
               (r[1].valid, r[1].examined, r[1].world, r[1].assignment)
        g = random_iformula(rng, 3, ("x", "y"))
        fr = IqcFrame(m.frame.worlds, m.frame.order, m.frame.inner)
        if all((v, w) not in fr.order for w, v in fr.order if w != v):     # antisymmetric only
            s = [search_frame_int(fr, g, backend=BACKENDS[k]) for k in ("python", "cython")]
            assert (s[0].valid, s[0].examined) == (s[1].valid, s[1].examined)


def _all_interps(frame, f):
    """Every interpretation of the predicates of ``f`` over the outer domain."""
    us = sorted(frame.outer)
    cells = [(p, t) for p, n in signature(f).items() for t in itertools.product(us, repeat=n)]
    for bits in itertools.product(*[range(1 << len(frame.worlds))] * len(cells)):
        interp = {p: {w: set() for w in frame.worlds} for p in signature(f)}
        for (p, t), mask in zip(cells, bits):
            for i, w in enumerate(frame.worlds):
                if mask >> i & 1:
                    interp[p][w].add(t)
        yield TenseModel(frame, {p: {w: frozenset(s) for w, s in tab.items()}
                                 for p, tab in interp.items()}, signature(f))


def test_kernel_matches_direct_evaluation():
    rng = random.Random(23)
    checked = 0
    while checked < 60:
        m = random_tense_model(rng, 2, 2)
        f = random_tformula(rng, 3, ("x",))
        if len(signature(f)) > 2:
            continue
        checked += 1
        fv = free_vars(f)
        us = sorted(m.frame.outer)
        direct = all(eval_tense(mm, w, dict(zip(fv, vals)), f)
                     for mm in _all_interps(m.frame, f) for w in m.frame.worlds
                     for vals in itertools.product(us, repeat=len(fv)))
        r = search_frame_tense(m.frame, f)
        assert r.valid == direct
        if not r.valid:
            assert not eval_tense(r.model, r.world, r.assignment, f)


def test_cap_reached_is_inconclusive():
    fr = TenseFrame(("u", "v"), frozenset({("u", "u"), ("v", "v"), ("u", "v")}),
                    {"u": frozenset("a"), "v": frozenset("ab")}, frozenset("ab"))
    f = parse_tense("forall x. P(x) | ~P(x)")
    assert search_frame_tense(fr, f).valid is True
    assert search_frame_tense(fr, f, cap=1).valid is None
