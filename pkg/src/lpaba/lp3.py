"""Three-valued interpretations and the 3-valued stable model family.

A 3-valued interpretation ``(x, y)`` assigns ``t`` to atoms in ``x``, ``u`` to
atoms in ``y - x`` and ``f`` to the rest. Conjunction is the truth-order glb
and disjunction the lub (Kleene's strong tables).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, NamedTuple

from .errors import DEFAULT_ATOM_CAP_3V, ConstraintNotSupported, check_cap
from .syntax import Program, atom_index, fmt_set, from_mask, to_mask


class TV(IntEnum):
    """Truth values; the integer order is the truth order f < u < t."""

    F = 0
    U = 1
    T = 2

    def __neg__(self) -> "TV":
        return TV(2 - self)

    def __str__(self) -> str:
        return "fut"[self]


def leq_info(a: TV, b: TV) -> bool:
    """Information order on values: u below both t and f."""
    return a == b or a == TV.U


class ThreeValued(NamedTuple):
    """The pair ``(x, y)``; ``x`` true atoms, ``y`` true-or-unknown atoms."""

    x: frozenset
    y: frozenset

    @classmethod
    def of(cls, x: Iterable[str], y: Iterable[str]) -> "ThreeValued":
        x, y = frozenset(x), frozenset(y)
        if not x <= y:
            raise ValueError(f"ill-formed 3-valued interpretation: {sorted(x - y)} true but not in y")
        return cls(x, y)

    @classmethod
    def total(cls, m: Iterable[str]) -> "ThreeValued":
        m = frozenset(m)
        return cls(m, m)

    def value(self, atom: str) -> TV:
        if atom in self.x:
            return TV.T
        return TV.U if atom in self.y else TV.F

    def __str__(self) -> str:
        return f"({fmt_set(self.x)},{fmt_set(self.y)})"


# -- formulas --------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: TV

    def __str__(self) -> str:
        return self.value.name


@dataclass(frozen=True)
class Not:
    sub: object

    def __str__(self) -> str:
        return f"~{self.sub}"


@dataclass(frozen=True)
class And:
    parts: tuple

    def __str__(self) -> str:
        return ", ".join(map(str, self.parts)) if self.parts else "T"


@dataclass(frozen=True)
class Or:
    parts: tuple

    def __str__(self) -> str:
        return " | ".join(map(str, self.parts)) if self.parts else "F"


TRUE, UNKNOWN, FALSE = Const(TV.T), Const(TV.U), Const(TV.F)


def eval3(i: ThreeValued, f) -> TV:
    """Kleene valuation; atoms are plain strings."""
    if isinstance(f, str):
        return i.value(f)
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return -eval3(i, f.sub)
    if isinstance(f, And):
        return min((eval3(i, g) for g in f.parts), default=TV.T)
    if isinstance(f, Or):
        return max((eval3(i, g) for g in f.parts), default=TV.F)
    raise TypeError(f"not a formula: {f!r}")


def leq_t(i1: ThreeValued, i2: ThreeValued) -> bool:
    return i1.x <= i2.x and i1.y <= i2.y


def leq_i(i1: ThreeValued, i2: ThreeValued) -> bool:
    return i1.x <= i2.x and i2.y <= i1.y


# -- programs with constants in bodies ---------------------------------------

@dataclass(frozen=True)
class Rule3:
    """Naf-free rule whose body may contain truth constants."""

    head: frozenset
    pos: frozenset = frozenset()
    constants: tuple = ()

    def body(self) -> And:
        return And(tuple(sorted(self.pos)) + tuple(Const(c) for c in self.constants))

    def __str__(self) -> str:
        body = sorted(self.pos) + [c.name for c in self.constants]
        return f"{', '.join(body) or 'T'} -> {' | '.join(sorted(self.head))}"


def _require_heads(p: Program) -> None:
    if any(r.is_constraint for r in p.rules):
        raise ConstraintNotSupported("three-valued semantics is undefined for empty heads")


def gl3_transform(p: Program, i: ThreeValued) -> tuple[Rule3, ...]:
    """Replace each ``~r`` by the constant for the value of ``~r`` under ``i``."""
    _require_heads(p)
    out = []
    for r in p.rules:
        consts = tuple(-i.value(a) for a in sorted(r.naf))
        out.append(Rule3(head=r.head, pos=r.pos, constants=consts))
    return tuple(out)


def is_model3(i: ThreeValued, rules: Iterable[Rule3]) -> bool:
    for r in rules:
        if isinstance(r, Rule3):
            body, head = r.body(), Or(tuple(sorted(r.head)))
        else:
            # plain positive Rule
            if r.naf:
                raise ValueError("is_model3 expects naf-free rules")
            body, head = And(tuple(sorted(r.pos))), Or(tuple(sorted(r.head)))
        if eval3(i, body) > eval3(i, head):
            return False
    return True


# -- enumeration -----------------------------------------------------------

def _compile(p: Program, index):
    return [
        (to_mask(r.pos, index), to_mask(r.naf, index), to_mask(r.head, index))
        for r in p.rules
    ]


def _value(x: int, y: int, bit: int) -> int:
    return 2 if x & bit else (1 if y & bit else 0)


def _conj_mask(x: int, y: int, mask: int) -> int:
    if mask & ~y:
        return 0
    return 2 if mask & ~x == 0 else 1


def _disj_mask(x: int, y: int, mask: int) -> int:
    if mask & x:
        return 2
    return 1 if mask & y else 0


def _reduct_consts(rules, x: int, y: int) -> list[tuple[int, int, int]]:
    """Per rule: (pos, min of substituted constants, head)."""
    out = []
    for pos, naf, head in rules:
        # ~r is t when r is f, i.e. constant = 2 - value(r)
        c = 2 - _disj_mask(x, y, naf) if naf else 2
        out.append((pos, c, head))
    return out


def _model_mask(x: int, y: int, reduct) -> bool:
    for pos, c, head in reduct:
        body = min(c, _conj_mask(x, y, pos))
        if body > _disj_mask(x, y, head):
            return False
    return True


def _submask_pairs(x: int, y: int):
    """All ``(x', y')`` with ``x' <= x``, ``y' <= y`` and ``x' <= y'``."""
    ys = y
    while True:
        free = ys & x
        xs = free
        while True:
            yield xs, ys
            if xs == 0:
                break
            xs = (xs - 1) & free
        if ys == 0:
            return
        ys = (ys - 1) & y


def _pairs(n: int):
    full = (1 << n) - 1
    for y in range(full + 1):
        x = y
        while True:
            yield x, y
            if x == 0:
                break
            x = (x - 1) & y


def _stable3_masks(p: Program, cap: int | None):
    _require_heads(p)
    order, index = atom_index(p.atoms)
    check_cap(len(order), cap, DEFAULT_ATOM_CAP_3V)
    rules = _compile(p, index)
    found = []
    for x, y in _pairs(len(order)):
        reduct = _reduct_consts(rules, x, y)
        if not _model_mask(x, y, reduct):
            continue
        minimal = True
        for xs, ys in _submask_pairs(x, y):
            if (xs, ys) != (x, y) and _model_mask(xs, ys, reduct):
                minimal = False
                break
        if minimal:
            found.append((x, y))
    return order, found


def stable3_models(p: Program, cap: int | None = None) -> set[ThreeValued]:
    """Truth-minimal models of ``gl3_transform(p, i)`` over all ``i``."""
    order, found = _stable3_masks(p, cap)
    return {ThreeValued(from_mask(x, order), from_mask(y, order)) for x, y in found}


def _info_extremal(models: set[ThreeValued], minimal: bool) -> set[ThreeValued]:
    out = set()
    for m in models:
        if minimal:
            beaten = any(o != m and leq_i(o, m) for o in models)
        else:
            beaten = any(o != m and leq_i(m, o) for o in models)
        if not beaten:
            out.add(m)
    return out


def well_founded_models(p: Program, cap: int | None = None) -> set[ThreeValued]:
    return _info_extremal(stable3_models(p, cap), minimal=True)


def regular_models(p: Program, cap: int | None = None) -> set[ThreeValued]:
    return _info_extremal(stable3_models(p, cap), minimal=False)


def sorted_3v(models: Iterable[ThreeValued]) -> list[ThreeValued]:
    return sorted(models, key=lambda m: (len(m.x), sorted(m.x), len(m.y), sorted(m.y)))
