"""Maps between stable models and stable extensions, and their verifiers.

``floor`` strips ``~`` from assumptions, ``underline`` takes the complement
of the floor within the program atoms and ``overline`` negates the
complement of an atom set. Reports never raise on a mismatch; they record
both sides so negative results can be inspected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .aba import ABF, induce_abf, induce_abf_mp_only
from .cn_engine import Logic, TheoryContext, derives
from .errors import NotNormalProgram
from .lp2 import gl_reduct, satisfies, stable_models
from .lp3 import ThreeValued, regular_models, sorted_3v, stable3_models, well_founded_models
from .syntax import Naf, Program, fmt_set, is_normal, render_program, sorted_family


def floor_map(s: Iterable[Naf]) -> frozenset:
    return frozenset(x.atom for x in s)


def underline_map(d: Iterable[Naf], atoms: Iterable[str]) -> frozenset:
    return frozenset(atoms) - floor_map(d)


def overline_map(m: Iterable[str], atoms: Iterable[str]) -> frozenset:
    return frozenset(Naf(a) for a in frozenset(atoms) - frozenset(m))


def _names(s: Iterable) -> list[str]:
    return sorted(str(x) for x in s)


def _family(fam: Iterable[Iterable]) -> list[list[str]]:
    return [_names(s) for s in sorted_family(fam)]


def _3v(m: ThreeValued) -> dict:
    return {"x": _names(m.x), "y": _names(m.y)}


@dataclass
class CorrespondenceReport:
    program: str
    stable_models: list
    stable_extensions: list
    pairs: list = field(default_factory=list)
    direction1_ok: bool = True
    direction2_ok: bool = True
    bijection_ok: bool = True
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.direction1_ok and self.direction2_ok and self.bijection_ok

    def to_dict(self) -> dict:
        return {
            "program": self.program,
            "stable_models": _family(self.stable_models),
            "stable_extensions": _family(self.stable_extensions),
            "pairs": [
                {"model": _names(m), "extension": _names(e)} for m, e in self.pairs
            ],
            "direction1_ok": self.direction1_ok,
            "direction2_ok": self.direction2_ok,
            "bijection_ok": self.bijection_ok,
            "ok": self.ok,
            "mismatches": list(self.mismatches),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def verify_stable_correspondence(
    p: Program,
    logic: Logic = Logic.FULL,
    cap: int | None = None,
    atoms: Iterable[str] | None = None,
) -> CorrespondenceReport:
    """Check that overline/underline biject stable models and stable extensions.

    ``atoms`` optionally widens the universe the maps complement against.
    """
    atoms = p.atoms if atoms is None else frozenset(atoms)
    models = stable_models(p, cap)
    exts = induce_abf(p, logic, cap, atoms=atoms).stable_extensions()
    report = CorrespondenceReport(
        program=render_program(p),
        stable_models=sorted_family(models),
        stable_extensions=sorted_family(exts),
    )
    for m in report.stable_models:
        e = overline_map(m, atoms)
        if e in exts:
            report.pairs.append((m, e))
        else:
            report.direction1_ok = False
            report.mismatches.append(
                f"stable model {fmt_set(m)}: {fmt_set(e)} is not a stable extension"
            )
    for e in report.stable_extensions:
        m = underline_map(e, atoms)
        if m not in models:
            report.direction2_ok = False
            report.mismatches.append(
                f"stable extension {fmt_set(e)}: {fmt_set(m)} is not a stable model"
            )
    inverse = all(underline_map(overline_map(m, atoms), atoms) == m for m in models) and all(
        overline_map(underline_map(e, atoms), atoms) == e for e in exts
    )
    report.bijection_ok = (
        inverse and report.direction1_ok and report.direction2_ok and len(models) == len(exts)
    )
    return report


def extension_labeling(f: ABF, e: Iterable[Naf]) -> ThreeValued:
    """``(E, Lambda - E+)``: accepted versus not-rejected assumptions."""
    e = frozenset(e)
    if not f.is_conflict_free(e):
        raise ValueError(f"{fmt_set(e)} is not conflict-free")
    return ThreeValued.of(e, f.assumptions - f.attacked_by(e))


def extension_to_3v(f: ABF, e: Iterable[Naf], atoms: Iterable[str]) -> ThreeValued:
    """``(floor(E+), underline(E))`` read on the program side."""
    return ThreeValued(floor_map(f.attacked_by(e)), underline_map(e, atoms))


@dataclass
class ThreeValuedReport:
    program: str
    stable3: list
    well_founded: list
    regular: list
    complete: list
    grounded: list
    preferred: list
    checks: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def diverges(self) -> bool:
        return not self.ok

    def to_dict(self) -> dict:
        return {
            "program": self.program,
            "stable3": [_3v(m) for m in self.stable3],
            "well_founded": [_3v(m) for m in self.well_founded],
            "regular": [_3v(m) for m in self.regular],
            "complete": _family(self.complete),
            "grounded": _family(self.grounded),
            "preferred": _family(self.preferred),
            "checks": dict(self.checks),
            "ok": self.ok,
            "mismatches": list(self.mismatches),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# (LP family, ABA family) pairs; well-founded goes with grounded and regular
# with preferred, as in the worked normal-program example
_PAIRINGS = (
    ("stable3", "complete"),
    ("well_founded", "grounded"),
    ("regular", "preferred"),
)


def _compare_three_valued(p: Program, f: ABF, cap: int | None) -> ThreeValuedReport:
    atoms = p.atoms
    st3 = stable3_models(p, cap)
    families_lp = {
        "stable3": st3,
        "well_founded": well_founded_models(p, cap),
        "regular": regular_models(p, cap),
    }
    families_aba = {
        "complete": f.complete_extensions(),
        "grounded": f.grounded_extensions(),
        "preferred": f.preferred_extensions(),
    }
    report = ThreeValuedReport(
        program=render_program(p),
        stable3=sorted_3v(st3),
        well_founded=sorted_3v(families_lp["well_founded"]),
        regular=sorted_3v(families_lp["regular"]),
        complete=sorted_family(families_aba["complete"]),
        grounded=sorted_family(families_aba["grounded"]),
        preferred=sorted_family(families_aba["preferred"]),
    )
    for lp_name, aba_name in _PAIRINGS:
        lp_side, aba_side = families_lp[lp_name], families_aba[aba_name]
        forward = True
        for m in sorted_3v(lp_side):
            e = overline_map(m.y, atoms)
            if e not in aba_side:
                forward = False
                report.mismatches.append(
                    f"{lp_name} model {m}: {fmt_set(e)} is not a {aba_name} extension"
                )
            elif extension_to_3v(f, e, atoms) != m:
                forward = False
                report.mismatches.append(
                    f"{lp_name} model {m}: {fmt_set(e)} maps back to {extension_to_3v(f, e, atoms)}"
                )
        backward = True
        for e in sorted_family(aba_side):
            m = extension_to_3v(f, e, atoms)
            if m not in lp_side:
                backward = False
                report.mismatches.append(
                    f"{aba_name} extension {fmt_set(e)}: {m} is not a {lp_name} model"
                )
        report.checks[f"{lp_name}->{aba_name}"] = forward
        report.checks[f"{aba_name}->{lp_name}"] = backward
    return report


def verify_three_valued_correspondence(p: Program, cap: int | None = None) -> ThreeValuedReport:
    """Normal programs against the Modus-Ponens-only framework."""
    if not is_normal(p):
        raise NotNormalProgram("three-valued correspondence is only claimed for normal programs")
    return _compare_three_valued(p, induce_abf_mp_only(p, cap), cap)


def demonstrate_divergence(p: Program, cap: int | None = None) -> ThreeValuedReport:
    """Same comparison against the full framework; mismatches are expected for disjunctive programs."""
    return _compare_three_valued(p, induce_abf(p, Logic.FULL, cap), cap)


# -- corollary checks -------------------------------------------------------

def check_corollary_pink(p: Program, cap: int | None = None) -> list[str]:
    """For each stable model M and atom a: a in M iff a follows from overline(M) and p."""
    failures = []
    atoms = p.atoms
    for m in sorted_family(stable_models(p, cap)):
        ctx = TheoryContext(p, floor_map(overline_map(m, atoms)))
        for a in sorted(atoms):
            if (a in m) != derives(ctx, a, cap=cap):
                failures.append(f"model {fmt_set(m)}, atom {a}")
    return failures


def check_corollary_black(p: Program, cap: int | None = None) -> list[str]:
    """If ``p, D |- r`` then every model of the reduct by underline(D) inside underline(D) contains r."""
    failures = []
    atoms = sorted(p.atoms)
    f = induce_abf(p, cap=cap)
    for k in range(len(atoms) + 1):
        for chosen in combinations(atoms, k):
            d = frozenset(Naf(a) for a in chosen)
            under = underline_map(d, atoms)
            reduct = gl_reduct(p, under)
            derived = [r for r in atoms if f.derives(d, r)]
            if not derived:
                continue
            sub = sorted(under)
            for j in range(len(sub) + 1):
                for m in combinations(sub, j):
                    m = frozenset(m)
                    if not satisfies(m, reduct):
                        continue
                    for r in derived:
                        if r not in m:
                            failures.append(f"D={fmt_set(d)}, model {fmt_set(m)} misses {r}")
    return failures
