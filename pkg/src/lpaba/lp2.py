"""Two-valued semantics: satisfaction, Gelfond-Lifschitz reduct, stable models.

Interpretations are frozensets of atom names. Enumeration is exhaustive and
capped (see :func:`lpaba.errors.atom_cap`).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .errors import check_cap
from .syntax import Naf, Program, Rule, atom_index, from_mask, is_positive, to_mask

Interpretation = frozenset


def compile_rules(p: Program, index: dict[str, int]) -> list[tuple[int, int, int]]:
    """Rules as ``(pos_mask, naf_mask, head_mask)`` triples."""
    return [
        (to_mask(r.pos, index), to_mask(r.naf, index), to_mask(r.head, index))
        for r in p.rules
    ]


def models_mask(mask: int, rules: Iterable[tuple[int, int, int]]) -> bool:
    # empty head: violated whenever the body holds
    for pos, naf, head in rules:
        if pos & ~mask == 0 and naf & mask == 0 and head & mask == 0:
            return False
    return True


def satisfies(m: Iterable[str], target) -> bool:
    """``M |= target`` for an atom, ``Naf``, clause, rule or program.

    Atoms absent from ``m`` read as false. A constraint (empty head) is
    satisfied iff its body is not.
    """
    m = frozenset(m)
    if isinstance(target, str):
        return target in m
    if isinstance(target, Naf):
        return target.atom not in m
    if isinstance(target, Rule):
        body = target.pos <= m and not (target.naf & m)
        return not body or bool(target.head & m)
    if isinstance(target, Program):
        return all(satisfies(m, r) for r in target.rules)
    if isinstance(target, (frozenset, set)):
        if not target:
            raise ValueError("empty clause")
        return bool(frozenset(target) & m)
    raise TypeError(f"cannot evaluate {type(target).__name__}")


def gl_reduct(p: Program, m: Iterable[str]) -> Program:
    """Drop rules with a naf atom in ``m``; strip naf from the rest."""
    m = frozenset(m)
    return Program(
        tuple(Rule(head=r.head, pos=r.pos) for r in p.rules if not (r.naf & m))
    )


def _candidates(n: int):
    """Masks by cardinality, then lexicographically by sorted atom names."""
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            yield mask


def minimal_models(p: Program, cap: int | None = None) -> set[frozenset]:
    """All subset-minimal models of a positive program."""
    if not is_positive(p):
        raise ValueError("minimal_models expects a positive program")
    order, index = atom_index(p.atoms)
    check_cap(len(order), cap)
    rules = compile_rules(p, index)
    found: list[int] = []
    for mask in _candidates(len(order)):
        if any(f & mask == f for f in found):
            continue
        if models_mask(mask, rules):
            found.append(mask)
    return {from_mask(f, order) for f in found}


def _submasks(mask: int):
    """Proper submasks of ``mask`` (including 0), largest first."""
    sub = (mask - 1) & mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def stable_mask(mask: int, rules: list[tuple[int, int, int]]) -> bool:
    reduct = [(pos, 0, head) for pos, naf, head in rules if naf & mask == 0]
    if not models_mask(mask, reduct):
        return False
    if mask == 0:
        return True
    return not any(models_mask(sub, reduct) for sub in _submasks(mask))


def is_stable_model(p: Program, m: Iterable[str], cap: int | None = None) -> bool:
    m = frozenset(m)
    if not m <= p.atoms:
        raise ValueError(f"interpretation mentions atoms outside the program: {sorted(m - p.atoms)}")
    order, index = atom_index(p.atoms)
    check_cap(len(order), cap)
    return stable_mask(to_mask(m, index), compile_rules(p, index))


def stable_models(p: Program, cap: int | None = None) -> set[frozenset]:
    order, index = atom_index(p.atoms)
    check_cap(len(order), cap)
    rules = compile_rules(p, index)
    return {
        from_mask(mask, order)
        for mask in range(1 << len(order))
        if stable_mask(mask, rules)
    }
