"""Surface syntax and in-memory representation of disjunctive programs.

Grammar (one statement per ``.``)::

    statement ::= head [":-" body] "."  |  [body] "->" head "."
    head      ::= literal ("|" literal)*  |  <empty>
    body      ::= blit ("," blit)*
    blit      ::= literal | "not" literal | "~" literal
    literal   ::= ["-"] atom               (``-`` only in extended programs)
    atom      ::= [a-z][A-Za-z0-9_]*

``%`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import ConstraintNotAllowed, ParseError

Atom = str
Clause = frozenset  # nonempty frozenset[Atom]

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class Naf(NamedTuple):
    """The negation-as-failure literal ``~atom``."""

    atom: str

    def __str__(self) -> str:
        return f"~{self.atom}"


class Literal(NamedTuple):
    """An atom or its strong negation; ``str`` gives ``p`` or ``-p``."""

    atom: str
    negated: bool = False

    def __str__(self) -> str:
        return f"-{self.atom}" if self.negated else self.atom

    @classmethod
    def parse(cls, text: str) -> "Literal":
        text = text.strip()
        negated = text.startswith("-")
        name = text[1:] if negated else text
        if not ATOM_RE.match(name):
            raise ValueError(f"not a literal: {text!r}")
        return cls(name, negated)


def clause(*atoms: str) -> frozenset:
    if not atoms:
        raise ValueError("a clause needs at least one atom")
    return frozenset(atoms)


def set_key(items: Iterable) -> tuple:
    """Cardinality first, then lexicographic on the sorted string forms."""
    names = sorted(str(x) for x in items)
    return (len(names), names)


def fmt_set(items: Iterable) -> str:
    return "{" + ",".join(sorted(str(x) for x in items)) + "}"


def sorted_family(family: Iterable[Iterable]) -> list:
    return sorted(family, key=set_key)


def _fset(items) -> frozenset:
    if isinstance(items, str):
        return frozenset((items,))
    return frozenset(items)


@dataclass(frozen=True)
class Rule:
    """``pos, not naf -> head``; an empty head is a constraint."""

    head: frozenset = frozenset()
    pos: frozenset = frozenset()
    naf: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "head", _fset(self.head))
        object.__setattr__(self, "pos", _fset(self.pos))
        object.__setattr__(self, "naf", _fset(self.naf))

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def atoms(self) -> frozenset:
        return self.head | self.pos | self.naf

    def __str__(self) -> str:
        return _render_rule(
            sorted(self.head), sorted(self.pos), sorted(self.naf)
        )


@dataclass(frozen=True)
class Program:
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    @cached_property
    def atoms(self) -> frozenset:
        out: set = set()
        for r in self.rules:
            out |= r.atoms
        return frozenset(out)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        return render_program(self)

    def union(self, other: "Program | Iterable[Rule]") -> "Program":
        return Program(self.rules + tuple(other))

    def rule_set(self) -> frozenset:
        return frozenset(self.rules)


@dataclass(frozen=True)
class ExtendedRule:
    """Rule over :class:`Literal` values (strong negation allowed)."""

    head: frozenset = frozenset()
    pos: frozenset = frozenset()
    naf: frozenset = frozenset()

    def __post_init__(self):
        for name in ("head", "pos", "naf"):
            raw = getattr(self, name)
            if isinstance(raw, (str, Literal)):
                raw = (raw,)
            lits = frozenset(
                x if isinstance(x, Literal) else Literal.parse(x) for x in raw
            )
            object.__setattr__(self, name, lits)

    @property
    def literals(self) -> frozenset:
        return self.head | self.pos | self.naf

    def __str__(self) -> str:
        return _render_rule(
            sorted(map(str, self.head)),
            sorted(map(str, self.pos)),
            sorted(map(str, self.naf)),
        )


@dataclass(frozen=True)
class ExtendedProgram:
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    @property
    def atoms(self) -> frozenset:
        return frozenset(l.atom for r in self.rules for l in r.literals)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)

    def union(self, other) -> "ExtendedProgram":
        return ExtendedProgram(self.rules + tuple(other))


def _render_rule(head: list, pos: list, naf: list) -> str:
    body = pos + [f"not {a}" for a in naf]
    h = " | ".join(head)
    if not body:
        return f"{h}." if h else "-> ."
    if not h:
        return f":- {', '.join(body)}."
    return f"{h} :- {', '.join(body)}."


def render_program(p: Program | ExtendedProgram) -> str:
    """One rule per line, rules in input order, atoms sorted inside a rule."""
    return "".join(f"{r}\n" for r in p.rules)


def is_normal(p: Program) -> bool:
    return all(len(r.head) <= 1 for r in p.rules)


def is_positive(p: Program) -> bool:
    return all(not r.naf for r in p.rules)


# -- tokenizer -------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[|,.~\-])
    """,
    re.VERBOSE,
)


class _Tok(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            if kind == "op":
                kind = chunk
            toks.append(_Tok(kind, chunk, line, pos - line_start + 1))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, extended: bool, allow_constraints: bool):
        self.toks = _tokenize(text)
        self.i = 0
        self.extended = extended
        self.allow_constraints = allow_constraints

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, tok: _Tok | None, message: str) -> ParseError:
        if tok is None:
            last = self.toks[-1] if self.toks else _Tok("", "", 1, 0)
            return ParseError(last.line, last.col + len(last.text), message)
        return ParseError(tok.line, tok.col, message)

    def statements(self):
        while self.i < len(self.toks):
            start = self.i
            depth = start
            while depth < len(self.toks) and self.toks[depth].kind != ".":
                depth += 1
            if depth == len(self.toks):
                raise self.error(None, "missing '.' at end of statement")
            yield self.statement(self.toks[start:depth], self.toks[depth])
            self.i = depth + 1

    def statement(self, toks: list[_Tok], dot: _Tok):
        arrows = [k for k, t in enumerate(toks) if t.kind == "arrow"]
        ifs = [k for k, t in enumerate(toks) if t.kind == "if"]
        if len(arrows) + len(ifs) > 1:
            t = toks[(arrows + ifs)[1]]
            raise self.error(t, "more than one rule connective")
        if arrows:
            k = arrows[0]
            body = self.body(toks[:k], toks[k]) if k else ([], [])
            head = self.head(toks[k + 1:], dot)
            anchor = toks[k]
        elif ifs:
            k = ifs[0]
            head = self.head(toks[:k], toks[k])
            if k + 1 == len(toks):
                raise self.error(dot, "empty body after ':-'")
            body = self.body(toks[k + 1:], dot)
            anchor = toks[k]
        else:
            if not toks:
                raise self.error(dot, "empty statement")
            head = self.head(toks, dot)
            body = ([], [])
            anchor = toks[0]
        if not head and not self.allow_constraints:
            raise ConstraintNotAllowed(
                anchor.line, anchor.col, "empty head requires allow_constraints"
            )
        pos, naf = body
        if self.extended:
            return ExtendedRule(head=head, pos=pos, naf=naf)
        return Rule(head=head, pos=pos, naf=naf)

    def literal(self, toks: list[_Tok], k: int, end: _Tok):
        t = toks[k] if k < len(toks) else end
        negated = False
        if t.kind == "-":
            if not self.extended:
                raise self.error(t, "strong negation '-' is only allowed in extended programs")
            negated = True
            k += 1
            t = toks[k] if k < len(toks) else end
        if t.kind != "ident":
            raise self.error(t, f"expected an atom, found {t.text!r}")
        if t.text == "not":
            raise self.error(t, "'not' is reserved")
        if not t.text[0].islower():
            raise self.error(t, f"atom {t.text!r} must start with a lowercase letter")
        lit = Literal(t.text, negated) if self.extended else t.text
        return lit, k + 1

    def head(self, toks: list[_Tok], end: _Tok) -> list:
        out = []
        k = 0
        if not toks:
            return out
        while True:
            lit, k = self.literal(toks, k, end)
            out.append(lit)
            if k == len(toks):
                return out
            if toks[k].kind != "|":
                raise self.error(toks[k], f"expected '|' in head, found {toks[k].text!r}")
            k += 1
            if k == len(toks):
                raise self.error(end, f"dangling '|' before {end.text!r}")

    def body(self, toks: list[_Tok], end: _Tok):
        pos, naf = [], []
        k = 0
        while True:
            t = toks[k] if k < len(toks) else end
            is_naf = t.kind == "~" or (t.kind == "ident" and t.text == "not")
            if is_naf:
                k += 1
            lit, k = self.literal(toks, k, end)
            (naf if is_naf else pos).append(lit)
            if k == len(toks):
                return pos, naf
            if toks[k].kind != ",":
                raise self.error(toks[k], f"expected ',' in body, found {toks[k].text!r}")
            k += 1
            if k == len(toks):
                raise self.error(end, f"dangling ',' before {end.text!r}")


def parse_program(text: str, allow_constraints: bool = False) -> Program:
    """Parse a disjunctive program.

    Raises:
        ParseError: on malformed input (carries ``line`` and ``col``).
        ConstraintNotAllowed: for an empty head without ``allow_constraints``.
    """
    parser = _Parser(text, extended=False, allow_constraints=allow_constraints)
    return Program(tuple(parser.statements()))


def parse_extended_program(text: str, allow_constraints: bool = False) -> ExtendedProgram:
    """Parse a program whose literals may carry strong negation ``-p``."""
    parser = _Parser(text, extended=True, allow_constraints=allow_constraints)
    return ExtendedProgram(tuple(parser.statements()))


def atom_index(atoms: Iterable[str]) -> tuple[tuple[str, ...], dict[str, int]]:
    """Sorted atom tuple and its bit positions."""
    order = tuple(sorted(atoms))
    return order, {a: i for i, a in enumerate(order)}


def to_mask(items: Iterable[str], index: dict[str, int]) -> int:
    m = 0
    for a in items:
        m |= 1 << index[a]
    return m


def from_mask(mask: int, order: tuple[str, ...]) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(order[i])
        mask >>= 1
        i += 1
    return frozenset(out)
