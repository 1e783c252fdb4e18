"""Hilbert systems: schemes, logics, decision procedures for axiom lines, and the checker."""
from .checker import CheckResult, Library, check_proof, subst_letters
from .ipc import Deriv, ipc_derivation, is_ipc_theorem
from .logics import LOGICS, LogicId, get_logic
from .proof import (
    MP, ClassTaut, Gen, IpcInst, LemmaRef, Line, Nec, NecF, NecP, Proof, ProofFormatError,
    SchemeInst,
)
from .schemes import SCHEMES, instantiate, match_scheme
from .taut import is_classical_taut

__all__ = [
    "CheckResult", "Library", "check_proof", "subst_letters", "Deriv", "ipc_derivation",
    "is_ipc_theorem", "LOGICS", "LogicId", "get_logic", "MP", "ClassTaut", "Gen", "IpcInst",
    "LemmaRef", "Line", "Nec", "NecF", "NecP", "Proof", "ProofFormatError", "SchemeInst",
    "SCHEMES", "instantiate", "match_scheme", "is_classical_taut",
]
