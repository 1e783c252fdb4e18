"""Proof objects and their JSON form.

A proof is a list of lines; each line carries a formula and a justification.
Line references are 1-based, as in the JSON files.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Union

from ..syntax import Formula, ParseError, parse_formula, print_formula


class ProofFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SchemeInst:
    id: str
    wit: Mapping[str, Union[Formula, str]]
    kind = "scheme"


@dataclass(frozen=True)
class ClassTaut:
    kind = "taut"


@dataclass(frozen=True)
class IpcInst:
    """IPC theorem instance; optionally ``theorem`` with a letter substitution."""
    theorem: Optional[Formula] = None
    subst: Optional[Mapping[str, Formula]] = None
    kind = "ipc"


@dataclass(frozen=True)
class MP:
    a: int
    b: int
    kind = "mp"


@dataclass(frozen=True)
class Gen:
    src: int
    var: str
    kind = "gen"


@dataclass(frozen=True)
class NecF:
    src: int
    kind = "necf"


@dataclass(frozen=True)
class NecP:
    src: int
    kind = "necp"


@dataclass(frozen=True)
class Nec:
    src: int
    kind = "nec"


@dataclass(frozen=True)
class LemmaRef:
    name: str
    inst: Mapping[str, Formula] = field(default_factory=dict)
    kind = "lemma"


Justification = Union[SchemeInst, ClassTaut, IpcInst, MP, Gen, NecF, NecP, Nec, LemmaRef]


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Justification


@dataclass
class Proof:
    logic: str
    goal: Optional[Formula]
    lines: List[Line]
    name: Optional[str] = None

    def __len__(self) -> int:
        return len(self.lines)

    @property
    def conclusion(self) -> Optional[Formula]:
        return self.lines[-1].formula if self.lines else None


def refs(j: Justification) -> List[int]:
    if isinstance(j, MP):
        return [j.a, j.b]
    if isinstance(j, (Gen, NecF, NecP, Nec)):
        return [j.src]
    return []


# -- JSON ------------------------------------------------------------------------

def _fmap_to_json(m: Mapping) -> Dict[str, str]:
    return {k: (print_formula(v) if isinstance(v, Formula) else v) for k, v in m.items()}


def just_to_json(j: Justification) -> Dict[str, Any]:
    if isinstance(j, SchemeInst):
        return {"kind": "scheme", "id": j.id, "wit": _fmap_to_json(j.wit)}
    if isinstance(j, ClassTaut):
        return {"kind": "taut"}
    if isinstance(j, IpcInst):
        out: Dict[str, Any] = {"kind": "ipc"}
        if j.theorem is not None:
            out["wit"] = {"theorem": print_formula(j.theorem), "subst": _fmap_to_json(j.subst or {})}
        return out
    if isinstance(j, MP):
        return {"kind": "mp", "from": [j.a, j.b]}
    if isinstance(j, Gen):
        return {"kind": "gen", "from": j.src, "var": j.var}
    if isinstance(j, LemmaRef):
        out = {"kind": "lemma", "name": j.name}
        if j.inst:
            out["inst"] = _fmap_to_json(j.inst)
        return out
    return {"kind": j.kind, "from": j.src}


def proof_to_json(p: Proof) -> Dict[str, Any]:
    out: Dict[str, Any] = {"logic": p.logic}
    if p.name:
        out["name"] = p.name
    if p.goal is not None:
        out["goal"] = print_formula(p.goal)
    out["lines"] = [{"formula": print_formula(l.formula), "just": just_to_json(l.just)}
                    for l in p.lines]
    return out


def dumps(p: Proof) -> str:
    return json.dumps(proof_to_json(p), indent=1, ensure_ascii=False) + "\n"


def _one_ref(v) -> int:
    if isinstance(v, list):
        if len(v) != 1:
            raise ProofFormatError(f"expected one line reference, got {v}")
        v = v[0]
    if not isinstance(v, int):
        raise ProofFormatError(f"line reference must be an integer, got {v!r}")
    return v


def proof_from_json(data: Mapping[str, Any]) -> Proof:
    """Parse a proof; formulas share one signature so arity clashes are load errors."""
    try:
        logic = data["logic"]
        tense = logic != "IQC"
        sig: Dict[str, int] = {}

        def fm(text: str) -> Formula:
            return parse_formula(text, tense=tense, sig=sig)

        letter_sig: Dict[str, int] = {}

        def fm_any(text: str) -> Formula:
            return parse_formula(text, tense=True, sig=letter_sig)

        goal = fm(data["goal"]) if data.get("goal") is not None else None
        lines = []
        for i, raw in enumerate(data["lines"], 1):
            try:
                f = fm(raw["formula"])
                lines.append(Line(f, _just_from_json(raw["just"], fm, fm_any)))
            except ParseError as exc:
                raise ProofFormatError(f"line {i}: {exc}") from None
            except ProofFormatError as exc:
                raise ProofFormatError(f"line {i}: {exc}") from None
    except ParseError as exc:
        raise ProofFormatError(f"goal: {exc}") from None
    except (KeyError, TypeError) as exc:
        raise ProofFormatError(f"malformed proof: missing or bad field {exc}") from None
    return Proof(logic, goal, lines, data.get("name"))


_TERM_META = {"x", "y"}


def _just_from_json(j: Mapping[str, Any], fm, fm_any) -> Justification:
    kind = j["kind"]
    if kind == "scheme":
        wit = {k: (v if k in _TERM_META else fm(v)) for k, v in j.get("wit", {}).items()}
        return SchemeInst(j["id"], wit)
    if kind == "taut":
        return ClassTaut()
    if kind == "ipc":
        w = j.get("wit")
        if not w:
            return IpcInst()
        return IpcInst(fm_any(w["theorem"]), {k: fm(v) for k, v in w.get("subst", {}).items()})
    if kind == "mp":
        fr = j["from"]
        if not isinstance(fr, list) or len(fr) != 2:
            raise ProofFormatError("mp needs exactly two line references")
        return MP(_one_ref(fr[0]), _one_ref(fr[1]))
    if kind == "gen":
        return Gen(_one_ref(j["from"]), j["var"])
    if kind in ("necf", "necp", "nec"):
        return {"necf": NecF, "necp": NecP, "nec": Nec}[kind](_one_ref(j["from"]))
    if kind == "lemma":
        return LemmaRef(j["name"], {k: fm(v) for k, v in j.get("inst", {}).items()})
    raise ProofFormatError(f"unknown justification kind {kind!r}")


def loads(text: str) -> Proof:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProofFormatError(f"invalid JSON: {exc}") from None
    return proof_from_json(data)


def load(path: str) -> Proof:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
