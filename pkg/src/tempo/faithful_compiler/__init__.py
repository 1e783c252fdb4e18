"""Generators of QcircS4t proofs, and the IQC-to-QcircS4t proof compiler."""
from .builder import GenerationError, ProofBuilder
from .compile import CompileStep, CompileTrace, compile_gen_step, compile_mp_step, compile_proof
from .generators import (
    CORSI_KINDS, prove_axiom_closure, prove_bfp, prove_box_persistence, prove_corsi_fact,
    prove_dia_f_forall, recognize_scheme,
)
from .lemmas import lemma_proofs, s4t_library

__all__ = [
    "GenerationError", "ProofBuilder", "CompileStep", "CompileTrace", "compile_gen_step",
    "compile_mp_step", "compile_proof", "CORSI_KINDS", "prove_axiom_closure", "prove_bfp",
    "prove_box_persistence", "prove_corsi_fact", "prove_dia_f_forall", "recognize_scheme",
    "lemma_proofs", "s4t_library",
]
