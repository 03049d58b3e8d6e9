"""Extended disjunctive programs: strong negation via signed-atom renaming.

Each literal ``p`` / ``-p`` is renamed to a signed atom (``p+`` / ``p-``)
whose atom name is the literal's surface form, so the renamed program is an
ordinary disjunctive program and every two-valued and argumentative tool
applies unchanged. An atom's status in a model is read four-valuedly.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from .aba import ABF, induce_abf
from .cn_engine import Logic
from .errors import EmptyHeadNotSupported
from .lp2 import stable_models
from .syntax import ExtendedProgram, Literal, Program, Rule

# p+ is Literal(p), p- is Literal(p, negated=True)
SignedAtom = Literal


class Status(str, Enum):
    TRUE = "true"
    FALSE = "false"
    CONTRADICTORY = "contradictory"
    UNDECIDED = "undecided"


def signed_name(lit: Literal) -> str:
    return str(lit)


def from_signed(name: str) -> Literal:
    return Literal.parse(name)


def pm_transform(p: ExtendedProgram) -> Program:
    """Rename every literal to its signed atom."""
    rules = []
    for r in p.rules:
        if not r.head:
            raise EmptyHeadNotSupported(f"rule {r} has an empty head")
        rules.append(
            Rule(
                head=frozenset(map(signed_name, r.head)),
                pos=frozenset(map(signed_name, r.pos)),
                naf=frozenset(map(signed_name, r.naf)),
            )
        )
    return Program(tuple(rules))


def extended_stable_models(p: ExtendedProgram, cap: int | None = None) -> set[frozenset]:
    """Stable models of the renamed program, read back as literal sets."""
    return {
        frozenset(from_signed(a) for a in m) for m in stable_models(pm_transform(p), cap)
    }


def status(m: Iterable, atom: str) -> Status:
    names = {str(x) for x in m}
    plus, minus = atom in names, f"-{atom}" in names
    if plus and minus:
        return Status.CONTRADICTORY
    if plus:
        return Status.TRUE
    if minus:
        return Status.FALSE
    return Status.UNDECIDED


def signed_universe(p: ExtendedProgram) -> frozenset:
    """Both signs of every atom mentioned in ``p``."""
    return frozenset(n for a in p.atoms for n in (a, f"-{a}"))


def extended_abf(p: ExtendedProgram, logic: Logic = Logic.FULL, cap: int | None = None) -> ABF:
    """Induced framework of the renamed program.

    Assumptions are ``~p+`` and ``~p-`` for every atom ``p`` of the program,
    whether or not that sign occurs in a rule.
    """
    return induce_abf(pm_transform(p), logic, cap, atoms=signed_universe(p))
