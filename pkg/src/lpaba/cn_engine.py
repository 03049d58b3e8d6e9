"""Derivability of atom disjunctions from program rules and naf assumptions.

The syntactic engine saturates a clause set under three inference rules:

* MP: a rule fires when each positive body atom is a derived unit clause and
  each naf body literal ``~a`` is an assumption. Facts fire unconditionally.
* Res: from a clause ``C`` drop any nonempty subset of the atoms whose
  negation is assumed, as long as something remains.
* RBC: if ``a1 | ... | an`` is derived and ``psi`` is derived in every branch
  that adds ``ai`` as a fact, ``psi`` is derived.

Clauses are bitmasks over a sorted atom universe; membership is exact (no
subsumption). The semantic oracle enumerates every interpretation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .errors import ConstraintNotSupported, check_cap
from .lp2 import compile_rules, models_mask
from .syntax import Naf, Program, atom_index, from_mask, to_mask


class Logic(str, Enum):
    FULL = "mp+res+rbc"
    MP = "mp"
    MP_RES = "mp+res"

    @property
    def res(self) -> bool:
        return self is not Logic.MP

    @property
    def rbc(self) -> bool:
        return self is Logic.FULL


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


class Saturator:
    """Closure computation for one rule set and one assumption mask.

    ``closure(facts)`` is memoized on the hypothetical-fact mask; RBC
    branches recurse with strictly larger fact masks, so depth is bounded by
    the number of atoms.
    """

    def __init__(self, rules: Iterable[tuple[int, int, int]], assumed: int, logic: Logic = Logic.FULL):
        self.assumed = assumed
        self.logic = Logic(logic)
        # a rule can only ever fire if all of its naf atoms are assumed
        self.rules = [(pos, head) for pos, naf, head in rules if head and naf & ~assumed == 0]
        self.memo: dict[int, frozenset] = {}

    def closure(self, facts: int = 0) -> frozenset:
        hit = self.memo.get(facts)
        if hit is not None:
            return hit
        assumed = self.assumed
        do_res, do_rbc = self.logic.res, self.logic.rbc
        derived: set[int] = set()
        units = 0
        for b in _bits(facts):
            derived.add(b)
            units |= b
        rbc_done: set[int] = set()
        changed = True
        while changed:
            changed = False
            for pos, head in self.rules:
                if pos & ~units == 0 and head not in derived:
                    derived.add(head)
                    if head & (head - 1) == 0:
                        units |= head
                    changed = True
            if do_res:
                for c in list(derived):
                    gone = c & assumed
                    # drop any nonempty subset of the assumed-false atoms
                    s = gone
                    while s:
                        d = c & ~s
                        if d and d not in derived:
                            derived.add(d)
                            if d & (d - 1) == 0:
                                units |= d
                            changed = True
                        s = (s - 1) & gone
            if do_rbc:
                for c in list(derived):
                    if c & (c - 1) == 0 or c in rbc_done or c & units:
                        # a branch on a derived unit reproduces this closure
                        continue
                    rbc_done.add(c)
                    common = None
                    for a in _bits(c):
                        branch = self.closure(facts | a)
                        common = set(branch) if common is None else common & branch
                        if not common:
                            break
                    for d in common or ():
                        if d not in derived:
                            derived.add(d)
                            if d & (d - 1) == 0:
                                units |= d
                            changed = True
        result = frozenset(derived)
        self.memo[facts] = result
        return result


def _atom_of(x) -> str:
    return x.atom if isinstance(x, Naf) else x


@dataclass(frozen=True)
class TheoryContext:
    """Strict rules, naf assumptions (``~a`` stored as ``a``) and hypothetical facts."""

    strict: Program
    assumptions: frozenset = frozenset()
    hypothetical_facts: frozenset = frozenset()
    extra_atoms: frozenset = field(default=frozenset(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "assumptions", frozenset(_atom_of(a) for a in self.assumptions))
        object.__setattr__(self, "hypothetical_facts", frozenset(self.hypothetical_facts))
        object.__setattr__(self, "extra_atoms", frozenset(self.extra_atoms))

    @property
    def atoms(self) -> frozenset:
        return self.strict.atoms | self.assumptions | self.hypothetical_facts | self.extra_atoms

    def with_fact(self, atom: str) -> "TheoryContext":
        return TheoryContext(
            self.strict, self.assumptions, self.hypothetical_facts | {atom}, self.extra_atoms
        )

    def with_assumptions(self, more: Iterable) -> "TheoryContext":
        more = frozenset(_atom_of(a) for a in more)
        return TheoryContext(
            self.strict, self.assumptions | more, self.hypothetical_facts, self.extra_atoms
        )


def _prepare(ctx: TheoryContext, goal_atoms: Iterable[str], cap: int | None):
    if any(r.is_constraint for r in ctx.strict.rules):
        raise ConstraintNotSupported("the consequence engine has no rule for empty heads")
    order, index = atom_index(ctx.atoms | frozenset(goal_atoms))
    check_cap(len(order), cap)
    return order, index


def cn_closure_syntactic(ctx: TheoryContext, logic: Logic = Logic.FULL, cap: int | None = None) -> frozenset:
    """All derived clauses, each a frozenset of atoms."""
    order, index = _prepare(ctx, (), cap)
    sat = Saturator(compile_rules(ctx.strict, index), to_mask(ctx.assumptions, index), logic)
    derived = sat.closure(to_mask(ctx.hypothetical_facts, index))
    return frozenset(from_mask(c, order) for c in derived)


def _goal_atoms(goal) -> frozenset:
    if isinstance(goal, str):
        return frozenset((goal,))
    goal = frozenset(goal)
    if not goal:
        raise ValueError("empty clause is not a formula of the language")
    return goal


def derives(ctx: TheoryContext, goal, logic: Logic = Logic.FULL, cap: int | None = None) -> bool:
    """``ctx |- goal`` for a clause (iterable of atoms, or a single atom) or a ``Naf``."""
    if isinstance(goal, Naf):
        # naf literals are never concluded, only assumed
        return goal.atom in ctx.assumptions
    atoms = _goal_atoms(goal)
    order, index = _prepare(ctx, atoms, cap)
    sat = Saturator(compile_rules(ctx.strict, index), to_mask(ctx.assumptions, index), logic)
    return to_mask(atoms, index) in sat.closure(to_mask(ctx.hypothetical_facts, index))


def _ctx_models(ctx: TheoryContext, index: dict[str, int], n: int):
    rules = compile_rules(ctx.strict, index)
    assumed = to_mask(ctx.assumptions, index)
    facts = to_mask(ctx.hypothetical_facts, index)
    for m in range(1 << n):
        if m & assumed or facts & ~m:
            continue
        if models_mask(m, rules):
            yield m


def entails_semantic(ctx: TheoryContext, goal, cap: int | None = None) -> bool:
    """Every interpretation satisfying the context satisfies the clause."""
    atoms = _goal_atoms(goal)
    order, index = atom_index(ctx.atoms | atoms)
    check_cap(len(order), cap)
    g = to_mask(atoms, index)
    return all(m & g for m in _ctx_models(ctx, index, len(order)))


def is_satisfiable(ctx: TheoryContext, cap: int | None = None) -> bool:
    order, index = atom_index(ctx.atoms)
    check_cap(len(order), cap)
    return next(_ctx_models(ctx, index, len(order)), None) is not None
