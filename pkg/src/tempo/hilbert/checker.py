"""The proof-checking kernel.

Every line is verified against its justification.  The only decision
procedures involved are the truth-table test for tautology lines and G4ip
for IPC-instance lines; everything else is syntactic comparison against an
instance built from explicit witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Union

from ..syntax import (
    And, Atom, Bottom, BoxF, BoxP, DiaF, DiaP, Exists, Forall, Formula, Imp, Or, print_formula,
    subformulas,
)
from .ipc import is_ipc_theorem
from .logics import LogicId, get_logic
from .proof import (
    MP, ClassTaut, Gen, IpcInst, LemmaRef, Nec, NecF, NecP, Proof, SchemeInst, refs,
)
from .schemes import match_scheme
from .taut import SkeletonTooLarge, is_classical_taut


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    line: Optional[int] = None
    reason: str = ""
    n_lines: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"OK ({self.n_lines} lines)"
        where = f"line {self.line}: " if self.line else ""
        return f"FAIL {where}{self.reason}"


class LineError(Exception):
    pass


@dataclass
class LemmaEntry:
    name: str
    logic: LogicId
    formula: Formula


@dataclass
class Library:
    """Checked lemmas available to ``lemma`` lines, keyed by name."""
    entries: Dict[str, LemmaEntry] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def add_checked(self, name: str, proof: Proof) -> CheckResult:
        """Check ``proof`` and, if it passes, register its conclusion under ``name``."""
        res = check_proof(proof, library=self)
        if res.ok:
            self.entries[name] = LemmaEntry(name, get_logic(proof.logic), proof.conclusion)
        return res


def subst_letters(f: Formula, m: Mapping[str, Formula]) -> Formula:
    """Replace 0-ary atoms by formulas. Only used on binder-free formulas."""
    if isinstance(f, Atom):
        return m.get(f.pred, f) if not f.args else f
    if isinstance(f, Bottom):
        return f
    if isinstance(f, (And, Or, Imp)):
        return type(f)(subst_letters(f.left, m), subst_letters(f.right, m))
    if isinstance(f, (BoxF, BoxP, DiaF, DiaP)):
        return type(f)(subst_letters(f.body, m))
    raise ValueError("letter substitution into a formula with binders")


def _propositional(f: Formula) -> bool:
    return all(not isinstance(g, (Forall, Exists)) and not (isinstance(g, Atom) and g.args)
               for g in subformulas(f))


def _check_line(k: int, f: Formula, just, earlier: List[Formula], logic: LogicId,
                library: Optional[Library]) -> None:
    for r in refs(just):
        if r >= k:
            raise LineError(f"forward reference to line {r}")
        if r < 1:
            raise LineError(f"bad line reference {r}")

    if isinstance(just, SchemeInst):
        if just.id not in logic.schemes:
            raise LineError(f"scheme {just.id} not in logic {logic.name}")
        m = match_scheme(just.id, just.wit, f)
        if not m:
            raise LineError(f"scheme mismatch: {m.reason}")
    elif isinstance(just, ClassTaut):
        if not logic.taut:
            raise LineError(f"tautology lines not available in {logic.name}")
        try:
            ok = is_classical_taut(f)
        except SkeletonTooLarge as exc:
            raise LineError(str(exc)) from None
        if not ok:
            raise LineError("not a classical tautology of its skeleton")
    elif isinstance(just, IpcInst):
        if not logic.ipc:
            raise LineError(f"IPC-instance lines not available in {logic.name}")
        if just.theorem is not None:
            if not _propositional(just.theorem):
                raise LineError("IPC witness theorem must be propositional")
            if subst_letters(just.theorem, just.subst or {}) != f:
                raise LineError("line is not the stated substitution instance")
            if not is_ipc_theorem(just.theorem):
                raise LineError("witness theorem is not IPC-provable")
        elif not is_ipc_theorem(f):
            raise LineError("skeleton is not IPC-provable")
    elif isinstance(just, MP):
        if "mp" not in logic.rules:
            raise LineError(f"rule mp not in logic {logic.name}")
        a, b = earlier[just.a - 1], earlier[just.b - 1]
        if not (b == Imp(a, f) or a == Imp(b, f)):
            raise LineError("mp: neither cited line is an implication from the other to this line")
    elif isinstance(just, Gen):
        if "gen" not in logic.rules:
            raise LineError(f"rule gen not in logic {logic.name}")
        if f != Forall(just.var, earlier[just.src - 1]):
            raise LineError(f"gen: line is not forall {just.var} of line {just.src}")
    elif isinstance(just, (NecF, NecP, Nec)):
        rule = just.kind
        if rule not in logic.rules:
            raise LineError(f"rule {rule} not in logic {logic.name}")
        box = BoxP if isinstance(just, NecP) else BoxF
        if f != box(earlier[just.src - 1]):
            raise LineError(f"{rule}: line is not the box of line {just.src}")
    elif isinstance(just, LemmaRef):
        _check_lemma(f, just, logic, library)
    else:
        raise LineError(f"unknown justification {just!r}")


def _check_lemma(f: Formula, just: LemmaRef, logic: LogicId, library: Optional[Library]) -> None:
    if library is None or just.name not in library:
        raise LineError(f"lemma {just.name} is not a checked library entry")
    entry = library.entries[just.name]
    if just.inst:
        if entry.logic.name != "S4t":
            raise LineError("instantiation only allowed for lemmas proved in S4t")
        if not logic.contains(get_logic("S4t")):
            raise LineError(f"S4t lemmas are not available in {logic.name}")
        if subst_letters(entry.formula, just.inst) != f:
            raise LineError(f"line is not the instance of lemma {just.name}")
    else:
        if not logic.contains(entry.logic):
            raise LineError(f"lemma logic {entry.logic.name} not contained in {logic.name}")
        if entry.formula != f:
            raise LineError(f"line differs from lemma {just.name}")


def check_proof(p: Proof, goal: Optional[Formula] = None,
                logic: Union[None, str, LogicId] = None,
                library: Optional[Library] = None) -> CheckResult:
    """Check ``p`` line by line; the last line must equal ``goal`` (default: ``p.goal``)."""
    try:
        lg = logic if isinstance(logic, LogicId) else get_logic(logic or p.logic)
    except ValueError as exc:
        return CheckResult(False, None, str(exc))
    goal = p.goal if goal is None else goal
    if not p.lines:
        return CheckResult(False, None, "empty proof")
    earlier: List[Formula] = []
    for k, line in enumerate(p.lines, 1):
        bad = lg.language_error(line.formula)
        if bad:
            return CheckResult(False, k, bad, len(p.lines))
        try:
            _check_line(k, line.formula, line.just, earlier, lg, library)
        except LineError as exc:
            return CheckResult(False, k, str(exc), len(p.lines))
        earlier.append(line.formula)
    if goal is not None and earlier[-1] != goal:
        return CheckResult(False, len(p.lines),
                           f"goal mismatch: proved {print_formula(earlier[-1])}", len(p.lines))
    return CheckResult(True, None, "", len(p.lines))
