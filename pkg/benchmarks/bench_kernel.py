"""Time the compiled and pure-Python search kernels on identical workloads.

    python benchmarks/bench_kernel.py [--repeat N]

Each workload is a full (valid, hence exhaustive) interpretation scan on a
fixed frame, so both backends examine exactly the same candidates.
"""
import argparse
import time

from tempo import kernel
from tempo.kripke_int import IqcFrame, to_structure as int_structure
from tempo.kripke_tense import TenseFrame, to_structure as tense_structure
from tempo.syntax import parse_int, parse_tense
from tempo.translate import translate_closed


def workloads():
    chain3 = IqcFrame(("a", "b", "c"), frozenset({("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"),
                                                   ("b", "c"), ("a", "c")}),
                      {"a": frozenset({"0"}), "b": frozenset({"0", "1"}), "c": frozenset({"0", "1"})})
    st, _, es = int_structure(chain3)
    f = parse_int("(forall x. P(x) -> Q(x)) -> (exists x. P(x)) -> exists x. Q(x)")
    yield "iqc 3-chain mono-exists", st, kernel.compile_formula(f, kernel.IQC, len(es)), kernel.IQC

    fr = TenseFrame(("u", "v"), frozenset({("u", "u"), ("v", "v"), ("u", "v")}),
                    {"u": frozenset({"0"}), "v": frozenset({"0", "1"})}, frozenset({"0", "1"}))
    st, _, es = tense_structure(fr)
    g = translate_closed(parse_int("(forall x. P(x)) -> P(y)"))
    yield "tense 2-chain closed UI", st, kernel.compile_formula(g, kernel.TENSE, len(es)), kernel.TENSE
    h = parse_tense("(forall x. [P] (P(x) | q)) -> [P] forall x. P(x) | q")
    yield "tense 2-chain BF_P", st, kernel.compile_formula(h, kernel.TENSE, len(es)), kernel.TENSE

    ws = ("u", "v", "w")
    order = frozenset((a, b) for i, a in enumerate(ws) for b in ws[i:])
    fr3 = TenseFrame(ws, order, {"u": frozenset({"0"}), "v": frozenset({"0", "1"}),
                                 "w": frozenset({"0", "1"})}, frozenset({"0", "1"}))
    st, _, es = tense_structure(fr3)
    k = translate_closed(parse_int("(forall x. P(x) -> Q(x)) -> (forall x. P(x)) -> forall x. Q(x)"))
    yield "tense 3-chain distrib", st, kernel.compile_formula(k, kernel.TENSE, len(es)), kernel.TENSE


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    bes = kernel.backends()
    print(f"backends available: {', '.join(bes)} (default: {kernel.BACKEND})")
    for name, st, prog, mode in workloads():
        if mode == kernel.IQC:
            choices = kernel.iqc_choices(prog, st)
        else:
            choices = kernel.tense_choices(prog, st)
        row = {}
        for bname, be in bes.items():
            best = None
            for _ in range(args.repeat):
                t = time.perf_counter()
                res = kernel.search(prog, st, choices, mode, backend=be)
                dt = time.perf_counter() - t
                best = dt if best is None else min(best, dt)
            row[bname] = (best, res.examined, res.found)
        cells = "  ".join(f"{b}: {t * 1e3:9.2f} ms" for b, (t, _, _) in row.items())
        n = next(iter(row.values()))[1]
        speed = ""
        if "cython" in row and row["cython"][0] > 0:
            speed = f"  speedup x{row['python'][0] / row['cython'][0]:.1f}"
        print(f"{name:28s} candidates={n:8d}  {cells}{speed}")
        assert len({(e, f) for _, e, f in row.values()}) == 1, "backends disagree"


if __name__ == "__main__":
    main()
