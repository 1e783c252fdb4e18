"""Formula syntax shared by the intuitionistic language and the tense language.

Both languages use one set of immutable AST classes. A formula belongs to the
intuitionistic language when it contains no modal node (see
:func:`is_intuitionistic`).  Negation is sugar: ``~A`` is ``Imp(A, Bottom())``.

Grammar (whitespace-insensitive)::

    formula := "false" | ident | ident "(" ident ("," ident)* ")" | "~" formula
             | formula "&" formula | formula "|" formula | formula "->" formula
             | ("forall" | "exists") ident "." formula
             | ("[F]" | "[P]" | "<F>" | "<P>") formula          (tense only)

Precedence is ``&`` > ``|`` > ``->``; ``&`` and ``|`` associate to the left,
``->`` to the right.  Prefix operators bind tighter than any binary
connective, except that a quantifier body extends as far right as possible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

__all__ = [
    "Formula", "Bottom", "Atom", "And", "Or", "Imp", "Forall", "Exists",
    "BoxF", "BoxP", "DiaF", "DiaP", "BOT", "Not", "ParseError", "SignatureError",
    "CaptureError", "parse_int", "parse_tense", "parse_formula", "print_formula",
    "free_vars", "is_free", "substitute", "is_intuitionistic", "signature",
    "subformulas", "all_vars", "depth", "size", "atoms_0ary",
]


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


def _cached_hash(self) -> int:
    return self._hash


def _fast_eq(self, other) -> bool:
    if self is other:
        return True
    if type(self) is not type(other) or self._hash != other._hash:
        return False
    return self._key() == other._key()


def _node(cls):
    """Freeze a node class and give it an O(1) cached hash."""
    cls = dataclass(frozen=True, eq=False, repr=True)(cls)
    orig_init = cls.__init__

    def __init__(self, *args, **kwargs):
        orig_init(self, *args, **kwargs)
        object.__setattr__(self, "_hash", hash((cls.__name__,) + self._key()))

    cls.__init__ = __init__
    cls.__hash__ = _cached_hash
    cls.__eq__ = _fast_eq
    return cls


@_node
class Bottom(Formula):
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return ()


@_node
class Atom(Formula):
    pred: str
    args: Tuple[str, ...] = ()
    _hash: int = field(init=False, repr=False, default=0)

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def _key(self):
        return (self.pred, self.args)


@_node
class And(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.left, self.right)


@_node
class Or(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.left, self.right)


@_node
class Imp(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.left, self.right)


@_node
class Forall(Formula):
    var: str
    body: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.var, self.body)


@_node
class Exists(Formula):
    var: str
    body: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.var, self.body)


@_node
class BoxF(Formula):
    body: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.body,)


@_node
class BoxP(Formula):
    body: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.body,)


@_node
class DiaF(Formula):
    body: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.body,)


@_node
class DiaP(Formula):
    body: Formula
    _hash: int = field(init=False, repr=False, default=0)

    def _key(self):
        return (self.body,)


BOT = Bottom()
BINARY = (And, Or, Imp)
QUANT = (Forall, Exists)
MODAL = (BoxF, BoxP, DiaF, DiaP)
UNARY_MODAL_SYMBOL = {BoxF: "[F]", BoxP: "[P]", DiaF: "<F>", DiaP: "<P>"}
_MODAL_BY_SYMBOL = {v: k for k, v in UNARY_MODAL_SYMBOL.items()}


def Not(f: Formula) -> Imp:
    return Imp(f, BOT)


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, QUANT + MODAL):
        return (f.body,)
    return ()


# ---------------------------------------------------------------------------
# Parsing

class ParseError(ValueError):
    """Malformed formula text.  ``offset`` is the 0-based character position."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset
        self.text = text


class SignatureError(ParseError):
    """A predicate was used with two different arities."""


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<modal>\[\s*[A-Za-z_]\w*\s*\]|<\s*[A-Za-z_]\w*\s*>)
  | (?P<arrow>->|→)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[()\.,&|~∧∨¬⊥∀∃])
""", re.VERBOSE)

_KEYWORDS = {"false": "false", "forall": "forall", "exists": "exists",
             "⊥": "false", "∀": "forall", "∃": "exists"}
_SYMBOL_ALIASES = {"∧": "&", "∨": "|", "¬": "~", "→": "->"}


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "modal":
            val = re.sub(r"\s+", "", val)
        elif kind == "ident" and val in _KEYWORDS:
            kind = "kw"
            val = _KEYWORDS[val]
        elif kind == "sym" and val in _KEYWORDS:
            kind, val = "kw", _KEYWORDS[val]
        elif kind in ("sym", "arrow"):
            kind = "sym"
            val = _SYMBOL_ALIASES.get(val, val)
        if kind != "ws":
            toks.append((kind, val, pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, tense: bool, sig: Optional[Dict[str, int]]):
        self.text = text
        self.tense = tense
        self.sig = {} if sig is None else sig
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def expect(self, val):
        tok = self.peek()
        if tok[1] != val or tok[0] == "eof":
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise self.error(f"expected {val!r}, found {found}")
        return self.advance()

    def parse(self) -> Formula:
        f = self.formula()
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return f

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek() == ("sym", "->", self.peek()[2]):
            self.advance()
            return Imp(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[:2] == ("sym", "|"):
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[:2] == ("sym", "&"):
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        kind, val, pos = tok
        if kind == "sym" and val == "~":
            self.advance()
            return Not(self.unary())
        if kind == "modal":
            if not self.tense:
                raise self.error("modal operator in intuitionistic formula")
            if val not in _MODAL_BY_SYMBOL:
                raise self.error(f"unknown modality {val!r}")
            self.advance()
            return _MODAL_BY_SYMBOL[val](self.unary())
        if kind == "kw" and val in ("forall", "exists"):
            self.advance()
            vtok = self.peek()
            if vtok[0] != "ident":
                raise self.error("expected a variable after quantifier")
            self.advance()
            self.expect(".")
            body = self.formula()
            return (Forall if val == "forall" else Exists)(vtok[1], body)
        if kind == "kw" and val == "false":
            self.advance()
            return BOT
        if kind == "ident":
            self.advance()
            args: List[str] = []
            if self.peek()[:2] == ("sym", "("):
                self.advance()
                while True:
                    a = self.peek()
                    if a[0] != "ident":
                        found = "end of input" if a[0] == "eof" else repr(a[1])
                        raise self.error(f"expected a variable, found {found}")
                    self.advance()
                    args.append(a[1])
                    if self.peek()[:2] == ("sym", ","):
                        self.advance()
                        continue
                    self.expect(")")
                    break
            known = self.sig.get(val)
            if known is not None and known != len(args):
                raise SignatureError(
                    f"predicate {val!r} used with arity {len(args)}, previously {known}",
                    pos, self.text)
            self.sig[val] = len(args)
            return Atom(val, tuple(args))
        if kind == "sym" and val == "(":
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        found = "end of input" if kind == "eof" else repr(val)
        raise self.error(f"unexpected {found}")


def parse_int(text: str, sig: Optional[Dict[str, int]] = None) -> Formula:
    """Parse a formula of the intuitionistic language.

    ``sig`` is an optional predicate-arity table shared across calls; it is
    updated in place so later uses of a predicate must agree with earlier ones.
    """
    return _Parser(text, tense=False, sig=sig).parse()


def parse_tense(text: str, sig: Optional[Dict[str, int]] = None) -> Formula:
    """Parse a formula of the tense language (modal prefixes allowed)."""
    return _Parser(text, tense=True, sig=sig).parse()


def parse_formula(text: str, tense: bool = True, sig=None) -> Formula:
    return (parse_tense if tense else parse_int)(text, sig)


# ---------------------------------------------------------------------------
# Printing

_LEVEL = {Imp: 1, Or: 2, And: 3}
_SYM = {Imp: "->", Or: "|", And: "&"}


def _pr(f: Formula) -> Tuple[str, int, bool]:
    # returns (text, binding level, ends with an unparenthesised quantifier)
    if isinstance(f, Bottom):
        return "false", 4, False
    if isinstance(f, Atom):
        if f.args:
            return f"{f.pred}({','.join(f.args)})", 4, False
        return f.pred, 4, False
    if isinstance(f, Imp) and isinstance(f.right, Bottom):
        s, open_end = _operand(f.left)
        return "~" + s, 4, open_end
    if isinstance(f, MODAL):
        s, open_end = _operand(f.body)
        return f"{UNARY_MODAL_SYMBOL[type(f)]} {s}", 4, open_end
    if isinstance(f, QUANT):
        q = "forall" if isinstance(f, Forall) else "exists"
        s, _, _ = _pr(f.body)
        return f"{q} {f.var}. {s}", 0, True
    level = _LEVEL[type(f)]
    ls, ll, lo = _pr(f.left)
    if ll < (level + 1 if isinstance(f, Imp) else level) or lo:
        ls = f"({ls})"
    rs, rl, ro = _pr(f.right)
    if rl != 0 and rl < (level if isinstance(f, Imp) else level + 1):
        rs, ro = f"({rs})", False
    return f"{ls} {_SYM[type(f)]} {rs}", level, ro


def _operand(f: Formula) -> Tuple[str, bool]:
    s, lvl, open_end = _pr(f)
    if lvl in (1, 2, 3):
        return f"({s})", False
    return s, open_end


def print_formula(f: Formula) -> str:
    """Render ``f`` with minimal parentheses; the result reparses to ``f``."""
    return _pr(f)[0]


# ---------------------------------------------------------------------------
# Variables and substitution

def free_vars(f: Formula) -> List[str]:
    """Free variables in order of first free occurrence, left to right."""
    out: List[str] = []
    seen = set()

    def walk(g: Formula, bound: frozenset):
        if isinstance(g, Atom):
            for a in g.args:
                if a not in bound and a not in seen:
                    seen.add(a)
                    out.append(a)
        elif isinstance(g, QUANT):
            walk(g.body, bound | {g.var})
        else:
            for c in children(g):
                walk(c, bound)

    walk(f, frozenset())
    return out


_FV_CACHE: Dict[Formula, frozenset] = {}


def _fv_set(f: Formula) -> frozenset:
    r = _FV_CACHE.get(f)
    if r is None:
        if isinstance(f, Atom):
            r = frozenset(f.args)
        elif isinstance(f, QUANT):
            r = _fv_set(f.body) - {f.var}
        else:
            r = frozenset()
            for c in children(f):
                r = r | _fv_set(c)
        if len(_FV_CACHE) > 500_000:
            _FV_CACHE.clear()
        _FV_CACHE[f] = r
    return r


def is_free(x: str, f: Formula) -> bool:
    return x in _fv_set(f)


def all_vars(f: Formula) -> List[str]:
    """Every variable occurring in ``f`` (free, bound or as a binder), first-seen order."""
    out: List[str] = []

    def add(v):
        if v not in out:
            out.append(v)

    def walk(g):
        if isinstance(g, Atom):
            for a in g.args:
                add(a)
        elif isinstance(g, QUANT):
            add(g.var)
            walk(g.body)
        else:
            for c in children(g):
                walk(c)

    walk(f)
    return out


class CaptureError(ValueError):
    """Substituting ``y`` for ``x`` would put ``y`` under a binder of ``y``."""

    def __init__(self, x: str, y: str, binder: Formula):
        kind = "forall" if isinstance(binder, Forall) else "exists"
        super().__init__(
            f"cannot substitute {y} for {x}: a free occurrence of {x} lies in the scope of "
            f"'{kind} {y}' in {print_formula(binder)}")
        self.x, self.y, self.binder = x, y, binder


def substitute(f: Formula, x: str, y: str) -> Formula:
    """Replace every free occurrence of ``x`` in ``f`` by ``y``.

    Raises :class:`CaptureError` when a free occurrence of ``x`` lies in the
    scope of a quantifier on ``y``.  If ``x`` is not free, ``f`` is returned.
    """
    if x == y or not is_free(x, f):
        return f

    def sub(g: Formula) -> Formula:
        if not is_free(x, g):
            return g
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(y if a == x else a for a in g.args))
        if isinstance(g, QUANT):
            if g.var == y:
                raise CaptureError(x, y, g)
            return type(g)(g.var, sub(g.body))
        if isinstance(g, BINARY):
            return type(g)(sub(g.left), sub(g.right))
        return type(g)(sub(g.body))

    return sub(f)


# ---------------------------------------------------------------------------
# Miscellaneous structural helpers

def is_intuitionistic(f: Formula) -> bool:
    return not any(isinstance(g, MODAL) for g in subformulas(f))


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def signature(*fs: Formula) -> Dict[str, int]:
    """Predicate arities used by the formulas; raises on inconsistent use."""
    sig: Dict[str, int] = {}
    for f in fs:
        for g in subformulas(f):
            if isinstance(g, Atom):
                if sig.setdefault(g.pred, len(g.args)) != len(g.args):
                    raise SignatureError(f"predicate {g.pred!r} used with two arities", 0)
    return sig


def atoms_0ary(f: Formula) -> List[str]:
    return [p for p, n in signature(f).items() if n == 0]


def depth(f: Formula) -> int:
    """Nesting depth; atoms and ``false`` have depth 0."""
    cs = children(f)
    return 0 if not cs else 1 + max(depth(c) for c in cs)


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


AnyFormula = Union[Bottom, Atom, And, Or, Imp, Forall, Exists, BoxF, BoxP, DiaF, DiaP]
