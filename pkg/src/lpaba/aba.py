"""Assumption-based frameworks induced by disjunctive programs.

An :class:`ABF` holds strict rules, naf assumptions and a contrary map. Sets
of assumptions are ``frozenset[Naf]`` at the API boundary and bitmasks over
the sorted assumption list internally. All semantics are computed by
exhaustive enumeration over subsets of the assumptions.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping

from .cn_engine import Logic, Saturator
from .errors import ConstraintNotSupported, check_cap
from .lp2 import compile_rules
from .syntax import Naf, Program, atom_index, fmt_set, set_key, to_mask


def _naf_atoms(items: Iterable) -> frozenset:
    return frozenset(x.atom if isinstance(x, Naf) else x for x in items)


class ABF:
    """``<logic, strict, assumptions, contrary>`` with naf assumptions.

    Args:
        strict: the strict rules.
        assumptions: atoms ``a`` whose negation ``~a`` is a candidate assumption.
        contrary: maps each assumption atom to the clauses contrary to it.
        logic: which inference rules the derivability relation uses.
    """

    def __init__(
        self,
        strict: Program,
        assumptions: Iterable,
        contrary: Mapping,
        logic: Logic = Logic.FULL,
        cap: int | None = None,
    ):
        if any(r.is_constraint for r in strict.rules):
            raise ConstraintNotSupported("assumption-based frameworks need nonempty heads")
        self.strict = strict
        self.logic = Logic(logic)
        self.lam = tuple(sorted(_naf_atoms(assumptions)))
        self.contrary = {
            a: frozenset(frozenset(c) for c in contrary.get(a, contrary.get(Naf(a), ())))
            for a in self.lam
        }
        universe = set(strict.atoms) | set(self.lam)
        for cs in self.contrary.values():
            for c in cs:
                universe |= c
        self.order, self.index = atom_index(universe)
        check_cap(len(self.order), cap)
        check_cap(len(self.lam), cap)
        self._rules = compile_rules(strict, self.index)
        self._lam_bits = [1 << self.index[a] for a in self.lam]
        self._contrary_masks = [
            [to_mask(c, self.index) for c in self.contrary[a]] for a in self.lam
        ]
        self._closures: dict[int, frozenset] = {}
        self._attacked: dict[int, int] = {}

    @property
    def assumptions(self) -> frozenset:
        return frozenset(Naf(a) for a in self.lam)

    @property
    def full(self) -> int:
        return (1 << len(self.lam)) - 1

    def __repr__(self) -> str:
        return f"ABF(assumptions={fmt_set(self.assumptions)}, logic={self.logic.value!r})"

    # -- conversions ----------------------------------------------------

    def mask(self, s: Iterable) -> int:
        atoms = _naf_atoms(s)
        m = 0
        for i, a in enumerate(self.lam):
            if a in atoms:
                m |= 1 << i
        if len(atoms) != bin(m).count("1"):
            raise ValueError(f"not assumptions of this framework: {sorted(atoms - set(self.lam))}")
        return m

    def unmask(self, m: int) -> frozenset:
        return frozenset(Naf(a) for i, a in enumerate(self.lam) if m >> i & 1)

    def _universe_mask(self, m: int) -> int:
        out = 0
        for i, bit in enumerate(self._lam_bits):
            if m >> i & 1:
                out |= bit
        return out

    # -- derivability and attacks --------------------------------------

    def closure(self, m: int) -> frozenset:
        """Derived clause masks (over the atom universe) from ``strict`` plus ``m``."""
        hit = self._closures.get(m)
        if hit is None:
            hit = Saturator(self._rules, self._universe_mask(m), self.logic).closure()
            self._closures[m] = hit
        return hit

    def attacked_mask(self, m: int) -> int:
        hit = self._attacked.get(m)
        if hit is None:
            derived = self.closure(m)
            hit = 0
            for i, cs in enumerate(self._contrary_masks):
                if any(c in derived for c in cs):
                    hit |= 1 << i
            self._attacked[m] = hit
        return hit

    def derives(self, s: Iterable, goal) -> bool:
        """``strict, s |- goal`` for a clause or a ``Naf``."""
        m = self.mask(s)
        if isinstance(goal, Naf):
            return goal.atom in _naf_atoms(self.unmask(m))
        goal = frozenset((goal,)) if isinstance(goal, str) else frozenset(goal)
        if not goal <= set(self.index):
            return False
        return to_mask(goal, self.index) in self.closure(m)

    def attacks(self, attacker: Iterable, target) -> bool:
        """Set attack on a single ``Naf`` or on a set of them (some member)."""
        t = self.mask((target,)) if isinstance(target, Naf) else self.mask(target)
        return bool(self.attacked_mask(self.mask(attacker)) & t)

    def attacked_by(self, s: Iterable) -> frozenset:
        """``s+``: the assumptions attacked by ``s``."""
        return self.unmask(self.attacked_mask(self.mask(s)))

    @cached_property
    def attack_table(self) -> list[int]:
        return [self.attacked_mask(m) for m in range(self.full + 1)]

    # -- semantics -------------------------------------------------------

    def _conflict_free(self, m: int) -> bool:
        return self.attacked_mask(m) & m == 0

    def is_conflict_free(self, s: Iterable) -> bool:
        return self._conflict_free(self.mask(s))

    def conflict_free_by_subsets(self, s: Iterable) -> bool:
        """The literal subset form: no subset of ``s`` attacks a member of ``s``."""
        m = self.mask(s)
        sub = m
        while True:
            if self.attacked_mask(sub) & m:
                return False
            if sub == 0:
                return True
            sub = (sub - 1) & m

    def _stable_masks(self) -> list[int]:
        full = self.full
        table = self.attack_table
        return [m for m in range(full + 1) if table[m] & m == 0 and (table[m] | m) == full]

    def stable_extensions(self) -> set[frozenset]:
        return {self.unmask(m) for m in self._stable_masks()}

    @cached_property
    def minimal_attackers(self) -> list[list[int]]:
        """Per assumption index, the subset-minimal attacking sets."""
        table = self.attack_table
        order = sorted(range(self.full + 1), key=lambda m: bin(m).count("1"))
        out: list[list[int]] = [[] for _ in self.lam]
        for m in order:
            hit = table[m]
            for i in range(len(self.lam)):
                if hit >> i & 1 and not any(a & m == a for a in out[i]):
                    out[i].append(m)
        return out

    def _defended_mask(self, m: int) -> int:
        plus = self.attacked_mask(m)
        out = 0
        for i, attackers in enumerate(self.minimal_attackers):
            if all(a & plus for a in attackers):
                out |= 1 << i
        return out

    def defended_set(self, s: Iterable) -> frozenset:
        """Assumptions all of whose attackers are attacked by ``s``."""
        return self.unmask(self._defended_mask(self.mask(s)))

    @cached_property
    def _complete_masks(self) -> list[int]:
        return [
            m
            for m in range(self.full + 1)
            if self._conflict_free(m) and self._defended_mask(m) == m
        ]

    def complete_extensions(self) -> set[frozenset]:
        return {self.unmask(m) for m in self._complete_masks}

    def preferred_extensions(self) -> set[frozenset]:
        cs = self._complete_masks
        return {
            self.unmask(m) for m in cs if not any(o != m and o & m == m for o in cs)
        }

    def grounded_extensions(self) -> set[frozenset]:
        cs = self._complete_masks
        return {
            self.unmask(m) for m in cs if not any(o != m and o & m == o for o in cs)
        }

    def extensions(self, semantics: str) -> set[frozenset]:
        try:
            fn = {
                "stable": self.stable_extensions,
                "complete": self.complete_extensions,
                "preferred": self.preferred_extensions,
                "grounded": self.grounded_extensions,
            }[semantics]
        except KeyError:
            raise ValueError(f"unknown semantics {semantics!r}") from None
        return fn()

    def is_flat(self) -> bool:
        """No assumption outside a set is derivable from it."""
        for m in range(self.full + 1):
            inside = self.unmask(m)
            for psi in self.assumptions - inside:
                if self.derives(inside, psi):
                    return False
        return True

    # -- rendering -------------------------------------------------------

    def attack_graph_dot(self, nodes: Iterable[Iterable] | None = None) -> str:
        """DOT digraph; one edge per attacking pair of the given node sets."""
        if nodes is None:
            family = {frozenset()} | {frozenset((x,)) for x in self.assumptions}
            family |= self.stable_extensions()
        else:
            family = {frozenset(self.unmask(self.mask(n))) for n in nodes}
        ordered = sorted(family, key=set_key)
        lines = ["digraph abf {", "  node [shape=box];"]
        lines += [f'  "{fmt_set(n)}";' for n in ordered]
        for a in ordered:
            for b in ordered:
                if self.attacks(a, b):
                    lines.append(f'  "{fmt_set(a)}" -> "{fmt_set(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def induce_abf(
    p: Program,
    logic: Logic = Logic.FULL,
    cap: int | None = None,
    atoms: Iterable[str] | None = None,
) -> ABF:
    """``ABF(p)``: strict part ``p``, assumptions ``~Atoms(p)``, contrary of ``~a`` is ``a``.

    ``atoms`` widens the assumption universe beyond the atoms occurring in
    ``p`` (it must contain them).
    """
    if any(r.is_constraint for r in p.rules):
        raise ConstraintNotSupported("cannot induce a framework from a program with empty heads")
    if atoms is None:
        atoms = p.atoms
    else:
        atoms = frozenset(atoms)
        if not p.atoms <= atoms:
            raise ValueError(f"atom universe misses {sorted(p.atoms - atoms)}")
    return ABF(p, atoms, {a: {frozenset((a,))} for a in atoms}, logic=logic, cap=cap)


def induce_abf_mp_only(p: Program, cap: int | None = None) -> ABF:
    """The framework of the normal-program baseline: Modus Ponens only."""
    return induce_abf(p, Logic.MP, cap)


def attacks(f: ABF, attacker: Iterable, target) -> bool:
    return f.attacks(attacker, target)


def is_conflict_free(f: ABF, d: Iterable) -> bool:
    return f.is_conflict_free(d)


def stable_extensions(f: ABF) -> set[frozenset]:
    return f.stable_extensions()


def defended_set(f: ABF, d: Iterable) -> frozenset:
    return f.defended_set(d)


def complete_extensions(f: ABF) -> set[frozenset]:
    return f.complete_extensions()


def preferred_extensions(f: ABF) -> set[frozenset]:
    return f.preferred_extensions()


def grounded_extensions(f: ABF) -> set[frozenset]:
    return f.grounded_extensions()


def is_flat(f: ABF) -> bool:
    return f.is_flat()


def attack_graph_dot(f: ABF, nodes: Iterable[Iterable] | None = None) -> str:
    return f.attack_graph_dot(nodes)


def nafs(*atoms: str) -> frozenset:
    """Shorthand: ``nafs('p', 'q') == {Naf('p'), Naf('q')}``."""
    return frozenset(Naf(a) for a in atoms)
