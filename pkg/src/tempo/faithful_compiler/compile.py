"""Compile an IQC Hilbert proof into a QcircS4t proof of the closed translation.

Line ``k`` of the source, proving ``A_k``, becomes a proof of
``translate_closed(A_k)``.  Axiom lines go through the templates in
:mod:`.generators`; MP and Gen lines are handled by the two step compilers
below, which rearrange quantifier prefixes explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from ..hilbert.checker import check_proof
from ..hilbert.proof import MP, Gen, IpcInst, Proof, SchemeInst
from ..syntax import Formula, Forall, Imp, free_vars, print_formula
from ..translate import goedel_t, translate_closed
from .builder import GenerationError, ProofBuilder
from .generators import axiom_closure_in, finish, ipc_in, new_builder

T = goedel_t


def mp_step_in(b: ProofBuilder, a: Formula, bb: Formula) -> Formula:
    """From proved closures of ``A -> B`` and ``A``, derive the closure of ``B``."""
    fab, fa, fb = free_vars(Imp(a, bb)), free_vars(a), free_vars(bb)
    u = [v for v in fab if v in fa and v not in fb]
    w = [v for v in fab if v in fa and v in fb]
    v_ = [v for v in fab if v not in fa]
    at, bt = T(a), T(bb)
    uwv = u + w + v_

    cur = b.reorder_prefix(translate_closed(Imp(a, bb)), fab, uwv)   # forall u w v. [F](A^t -> B^t)
    cur = b.apply_under(uwv, b.scheme("T_F", A=Imp(at, bt)), cur)     # forall u w v. A^t -> B^t
    cur = b.apply_under(u + w, b.pull_out(v_, at, bt), cur)           # forall u w. A^t -> forall v. B^t
    dist = b.distribute_prefix(u + w, cur)                            # forall u w. A^t -> forall u w v. B^t
    ca = b.reorder_prefix(translate_closed(a), fa, u + w)
    cur = b.mp(ca, dist)
    cur = b.drop_vacuous(u, cur)                                      # forall w v. B^t
    return b.reorder_prefix(cur, w + v_, fb)


def gen_step_in(b: ProofBuilder, a: Formula, x: str) -> Formula:
    """From the proved closure of ``A``, derive the closure of ``forall x. A``."""
    fa = free_vars(a)
    z = free_vars(Forall(x, a))
    cur = translate_closed(a)
    if x in fa:
        cur = b.reorder_prefix(cur, fa, z + [x])
    else:
        cur = b.reorder_prefix(b.gen(cur, x), [x] + fa, z + [x])
    return b.box_inside(z, cur)


def _start(*proofs: Proof) -> ProofBuilder:
    b = new_builder()
    for p in proofs:
        res = b.check(p)
        if not res:
            raise GenerationError(f"input proof does not check: {res}")
        b.absorb(p)
    return b


def compile_mp_step(proof_ab: Proof, proof_a: Proof, a: Formula, bb: Formula) -> Proof:
    if proof_ab.conclusion != translate_closed(Imp(a, bb)):
        raise GenerationError("first proof does not end in the closure of (A -> B)^t")
    if proof_a.conclusion != translate_closed(a):
        raise GenerationError("second proof does not end in the closure of A^t")
    b = _start(proof_ab, proof_a)
    return finish(b, mp_step_in(b, a, bb), "mp_step")


def compile_gen_step(proof_a: Proof, x: str, a: Formula) -> Proof:
    if proof_a.conclusion != translate_closed(a):
        raise GenerationError("proof does not end in the closure of A^t")
    b = _start(proof_a)
    return finish(b, gen_step_in(b, a, x), "gen_step")


@dataclass
class CompileStep:
    line: int
    kind: str
    target: Formula
    proof: Proof


@dataclass
class CompileTrace:
    source: Proof
    steps: List[CompileStep] = field(default_factory=list)
    final: Optional[Proof] = None


def compile_proof(p: Proof, check_steps: bool = True) -> CompileTrace:
    """Compile a checked IQC proof; every emitted proof is kernel-checked."""
    if p.logic != "IQC":
        raise GenerationError(f"source proof is in {p.logic}, expected IQC")
    res = check_proof(p)
    if not res:
        raise GenerationError(f"source proof does not check: {res}")
    b = new_builder()
    trace = CompileTrace(p)
    src = [ln.formula for ln in p.lines]
    for k, line in enumerate(p.lines, 1):
        f, j = line.formula, line.just
        if isinstance(j, SchemeInst):
            kind, got = "axiom", axiom_closure_in(b, f, (j.id, dict(j.wit)))
        elif isinstance(j, IpcInst):
            kind, got = "ipc", b.close_to(ipc_in(b, f), [], free_vars(f))
        elif isinstance(j, MP):
            x, y = src[j.a - 1], src[j.b - 1]
            a = x if y == Imp(x, f) else y
            kind, got = "mp", mp_step_in(b, a, f)
        elif isinstance(j, Gen):
            kind, got = "gen", gen_step_in(b, src[j.src - 1], j.var)
        else:
            raise GenerationError(f"line {k}: cannot compile a {j.kind} line")
        target = translate_closed(f)
        if got != target:
            raise GenerationError(f"line {k}: produced {print_formula(got)}")
        sub = b.extract(target, name=f"line{k}")
        if check_steps:
            r = b.check(sub)
            if not r:
                raise GenerationError(f"line {k}: sub-proof does not check: {r}")
        trace.steps.append(CompileStep(k, kind, target, sub))
    goal = translate_closed(p.conclusion if p.goal is None else p.goal)
    trace.final = finish(b, goal, p.name)
    return trace

