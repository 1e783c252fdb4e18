"""Command-line interface.

Exit status: 0 on success, 1 on a negative logical result (proof rejected,
countermodel found, corpus mismatch), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, List, Optional

from . import kernel
from .corpus_tools import CORPUS_DIR, build_corpus, run_corpus
from .faithful_compiler import GenerationError, compile_proof, s4t_library
from .hilbert.checker import check_proof
from .hilbert.proof import ProofFormatError, dumps, load
from .kripke_int import (
    AssignmentError, ModelError, UnknownPredicate, eval_int, iqc_model_to_json, load_iqc_model,
)
from .kripke_tense import QK, S4T, eval_tense, load_tense_model, mbar, tense_model_to_json
from .modelsearch import (
    BoundError, SearchBounds, _iso_key as iso_key, count_frames, enum_posets, enum_preorders,
    find_countermodel_int, find_countermodel_tense,
)
from .syntax import ParseError, depth, free_vars, parse_formula, print_formula
from .translate import goedel_t, translate_closed


class UsageError(Exception):
    pass


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, indent=1, sort_keys=False))
    else:
        print(text)


def _assign(text: Optional[str]) -> Dict[str, str]:
    out: Dict[str, str] = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"bad assignment {part!r}; expected var=elem")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_parse(args) -> int:
    f = parse_formula(args.formula, tense=not args.int)
    _emit(args, print_formula(f),
          {"formula": print_formula(f), "free_vars": free_vars(f), "depth": depth(f)})
    return 0


def cmd_translate(args) -> int:
    a = parse_formula(args.formula, tense=False)
    t = translate_closed(a) if args.closed else goedel_t(a)
    _emit(args, print_formula(t), {"source": print_formula(a), "translation": print_formula(t)})
    return 0


def cmd_eval_int(args) -> int:
    m = load_iqc_model(args.model)
    v = eval_int(m, args.world, _assign(args.assign), parse_formula(args.formula, tense=False))
    _emit(args, "true" if v else "false", {"value": v})
    return 0


def cmd_eval_tense(args) -> int:
    m = load_tense_model(args.model)
    v = eval_tense(m, args.world, _assign(args.assign), parse_formula(args.formula, tense=True))
    _emit(args, "true" if v else "false", {"value": v})
    return 0


def cmd_mbar(args) -> int:
    data = tense_model_to_json(mbar(load_iqc_model(args.model)))
    text = json.dumps(data, indent=1)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _library(extra: List[str]):
    lib = s4t_library()
    for path in extra:
        p = load(path)
        res = lib.add_checked(p.name or os.path.splitext(os.path.basename(path))[0], p)
        if not res:
            raise UsageError(f"lemma file {path} does not check: {res}")
    return lib


def cmd_check_proof(args) -> int:
    p = load(args.file)
    goal = parse_formula(args.goal, tense=p.logic != "IQC") if args.goal else None
    res = check_proof(p, goal=goal, logic=args.logic, library=_library(args.lemma))
    _emit(args, str(res), {"ok": res.ok, "line": res.line, "reason": res.reason,
                           "lines": res.n_lines})
    return 0 if res.ok else 1


def cmd_compile_proof(args) -> int:
    p = load(args.file)
    tr = compile_proof(p)
    out = dumps(tr.final)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    if args.trace:
        os.makedirs(args.trace, exist_ok=True)
        for s in tr.steps:
            with open(os.path.join(args.trace, f"line{s.line:03d}_{s.kind}.json"), "w",
                      encoding="utf-8") as fh:
                fh.write(dumps(s.proof))
        with open(os.path.join(args.trace, "final.json"), "w", encoding="utf-8") as fh:
            fh.write(out)
    res = check_proof(tr.final, library=s4t_library())
    msg = f"compiled {len(p)} source lines into {len(tr.final)} lines: {res}"
    if not args.output and not args.json:
        print(out, end="")
    _emit(args, msg, {"ok": res.ok, "source_lines": len(p), "lines": len(tr.final),
                      "goal": print_formula(tr.final.goal)})
    return 0 if res.ok else 1


def cmd_find_countermodel(args) -> int:
    tense = args.logic != "iqc"
    a = parse_formula(args.formula, tense=tense)
    b = SearchBounds(args.max_worlds, args.max_inner or args.max_outer, args.max_outer,
                     cap=args.cap)
    if args.logic == "iqc":
        r = find_countermodel_int(a, b)
    else:
        r = find_countermodel_tense(a, b, QK if args.logic == "qk" else S4T)
    if r.found:
        m, w, s = r.found
        mj = iqc_model_to_json(m) if args.logic == "iqc" else tense_model_to_json(m)
        data = {"found": True, "model": mj, "world": w, "assignment": s,
                "candidates_examined": r.candidates_examined}
        text = (f"countermodel found at world {w}, assignment {s or '{}'} "
                f"({r.candidates_examined} candidates)\n" + json.dumps(mj, indent=1))
        _emit(args, text, data)
        return 1
    if not r.complete:
        _emit(args, f"inconclusive: cap reached after {r.candidates_examined} candidates",
              {"found": False, "complete": False, "candidates_examined": r.candidates_examined})
        return 1
    _emit(args, f"no countermodel within bounds ({r.frames_examined} frames, "
                f"{r.candidates_examined} candidates)",
          {"found": False, "complete": True, "frames_examined": r.frames_examined,
           "candidates_examined": r.candidates_examined})
    return 0


def cmd_enum_frames(args) -> int:
    if args.kind in ("posets", "preorders"):
        gen = enum_posets if args.kind == "posets" else enum_preorders
        rels, seen = [], set()
        for r in gen(args.max_worlds):
            if args.iso:
                k = iso_key(args.max_worlds, r, (frozenset(),) * args.max_worlds)
                if k in seen:
                    continue
                seen.add(k)
            rels.append(sorted((i, j) for i, j in r if i != j))
        text = f"{len(rels)} {args.kind} on {args.max_worlds} points"
        if args.iso:
            text += " up to isomorphism"
        if args.list:
            text += "\n" + "\n".join(str(r) for r in rels)
        _emit(args, text, {"count": len(rels), "relations": rels if args.list else None})
        return 0
    b = SearchBounds(args.max_worlds, args.max_inner or args.max_outer, args.max_outer,
                     iso_reduce=args.iso)
    n = count_frames(args.kind, b)
    _emit(args, f"{n} {args.kind} frames within bounds", {"count": n})
    return 0


def cmd_corpus(args) -> int:
    if args.action == "build":
        man = build_corpus(args.dir)
        _emit(args, f"wrote {len(man['proofs'])} proofs to {args.dir}",
              {"proofs": len(man["proofs"])})
        return 0
    rep = run_corpus(args.dir, compile_golden=not args.no_compile)
    lines = [f"{'PASS' if ok else 'FAIL'}  {item}: {detail}" for item, ok, detail in rep.rows]
    n_bad = sum(1 for r in rep.rows if not r[1])
    lines.append(f"{len(rep.rows) - n_bad}/{len(rep.rows)} passed")
    _emit(args, "\n".join(lines),
          {"ok": rep.ok, "rows": [{"item": i, "ok": o, "detail": d} for i, o, d in rep.rows]})
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tempo", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(fn=fn)
        return p

    p = add("parse", cmd_parse, "parse and pretty-print a formula")
    p.add_argument("formula")
    p.add_argument("--int", action="store_true", help="intuitionistic language only")

    p = add("translate", cmd_translate, "temporal translation of an intuitionistic formula")
    p.add_argument("formula")
    p.add_argument("--closed", action="store_true", help="universally close the result")

    for name, fn in (("eval-int", cmd_eval_int), ("eval-tense", cmd_eval_tense)):
        p = add(name, fn, "evaluate a formula in a model")
        p.add_argument("--model", required=True)
        p.add_argument("--world", required=True)
        p.add_argument("--assign", default="")
        p.add_argument("--formula", required=True)

    p = add("mbar", cmd_mbar, "lift an intuitionistic model to a tense model")
    p.add_argument("--model", required=True)
    p.add_argument("-o", "--output")

    p = add("check-proof", cmd_check_proof, "check a Hilbert proof")
    p.add_argument("file")
    p.add_argument("--logic")
    p.add_argument("--goal")
    p.add_argument("--lemma", action="append", default=[], help="extra checked lemma file")

    p = add("compile-proof", cmd_compile_proof, "compile an IQC proof into QcircS4t")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--trace", metavar="DIR")

    p = add("find-countermodel", cmd_find_countermodel, "bounded countermodel search")
    p.add_argument("--logic", choices=["iqc", "tense", "qk"], required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--max-outer", type=int, default=2)
    p.add_argument("--max-inner", type=int)
    p.add_argument("--cap", type=int)

    p = add("enum-frames", cmd_enum_frames, "count enumerated orders or frames")
    p.add_argument("--kind", choices=["posets", "preorders", "iqc", "tense", "qk"], required=True)
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--max-outer", type=int, default=2)
    p.add_argument("--max-inner", type=int)
    p.add_argument("--iso", action="store_true", help="skip isomorphic copies")
    p.add_argument("--list", action="store_true")

    p = add("corpus", cmd_corpus, "run or rebuild the shipped corpus")
    p.add_argument("action", choices=["run", "build"])
    p.add_argument("--dir", default=CORPUS_DIR)
    p.add_argument("--no-compile", action="store_true", help="skip golden compile comparison")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except kernel.CapExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 1
    except UnknownPredicate as exc:
        print(f"error: unknown predicate {exc}", file=sys.stderr)
        return 2
    except (ParseError, ProofFormatError, ModelError, AssignmentError, UsageError, BoundError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

if __name__ == "__main__":
    sys.exit(main())
