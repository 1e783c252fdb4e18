"""The Hilbert systems the kernel knows, as scheme and rule sets.

``language`` restricts which formulas may appear on a line:

* ``int``: no modalities (IQC);
* ``mono``: one modality, written ``[F]``/``<F>`` (the QK family);
* ``prop_tense``: both modalities, 0-ary atoms only, no quantifiers (S4t);
* ``tense``: the full tense language.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional

from ..syntax import Atom, BoxP, DiaP, Exists, Forall, Formula, MODAL, subformulas


@dataclass(frozen=True)
class LogicId:
    name: str
    schemes: FrozenSet[str]
    rules: FrozenSet[str]
    taut: bool          # classical tautology lines allowed
    ipc: bool           # IPC-instance lines allowed
    language: str

    def contains(self, other: "LogicId") -> bool:
        """Syntactic inclusion: every axiom source and rule of ``other`` is available here."""
        lang_order = {"prop_tense": {"prop_tense", "tense"}, "int": {"int"},
                      "mono": {"mono"}, "tense": {"tense"}}
        return (other.schemes <= self.schemes and other.rules <= self.rules
                and (not other.taut or self.taut) and (not other.ipc or self.ipc)
                and self.language in lang_order[other.language])

    def language_error(self, f: Formula) -> Optional[str]:
        for g in subformulas(f):
            if self.language == "int" and isinstance(g, MODAL):
                return "modal operator in an intuitionistic logic"
            if self.language == "mono" and isinstance(g, (BoxP, DiaP)):
                return "past modality in a mono-modal logic"
            if self.language == "prop_tense":
                if isinstance(g, (Forall, Exists)):
                    return "quantifier in a propositional logic"
                if isinstance(g, Atom) and g.args:
                    return "predicate with arguments in a propositional logic"
        return None


_K = {"K_F", "DualF1", "DualF2"}
_EX = {"ExDef1", "ExDef2"}
_QCIRC = {"UIcirc", "ForallDistrib", "QuantSwap", "VacuousForall"}
_S4T = {"K_F", "K_P", "T_F", "T_P", "Four_F", "Four_P", "PF", "FP",
        "DualF1", "DualF2", "DualP1", "DualP2"}


def _mk(name, schemes, rules, taut=True, ipc=False, language="tense"):
    return LogicId(name, frozenset(schemes), frozenset(rules), taut, ipc, language)


_MONO_RULES = {"mp", "gen", "nec"}
_TENSE_RULES = {"mp", "gen", "necf", "necp"}

LOGICS: Dict[str, LogicId] = {l.name: l for l in [
    _mk("IQC", {"UI", "ExIntro", "ForallImpIn", "ForallImpEx"}, {"mp", "gen"},
        taut=False, ipc=True, language="int"),
    _mk("QK", _K | _EX | {"UI", "ForallImpIn"}, _MONO_RULES, language="mono"),
    _mk("QcircK", _K | _EX | _QCIRC, _MONO_RULES, language="mono"),
    _mk("QcircK_CBF", _K | _EX | _QCIRC | {"CBF"}, _MONO_RULES, language="mono"),
    _mk("QcircK_CBF_BF", _K | _EX | _QCIRC | {"CBF", "BF"}, _MONO_RULES, language="mono"),
    _mk("QcircK_NID", _K | _EX | _QCIRC | {"NID"}, _MONO_RULES, language="mono"),
    _mk("QcircK_CBF_NID", _K | _EX | _QCIRC | {"CBF", "NID"}, _MONO_RULES, language="mono"),
    _mk("QcircK_CBF_BF_NID", _K | _EX | _QCIRC | {"CBF", "BF", "NID"}, _MONO_RULES,
        language="mono"),
    _mk("S4t", _S4T, {"mp", "necf", "necp"}, language="prop_tense"),
    _mk("QS4t", _S4T | _EX | {"UI", "ForallImpIn"}, _TENSE_RULES),
    _mk("QcircS4t", _S4T | _EX | _QCIRC | {"NID", "CBF_F"}, _TENSE_RULES),
]}


def get_logic(name: str) -> LogicId:
    try:
        return LOGICS[name]
    except KeyError:
        raise ValueError(f"unknown logic {name!r}; known: {', '.join(LOGICS)}") from None
