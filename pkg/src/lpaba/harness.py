"""Seeded program generation and differential verification campaigns.

Randomness comes from SplitMix64, a counter-based generator: output ``i`` of
seed ``s`` is ``mix64(s + (i + 1) * GAMMA)``, so any implementation can
reproduce a program from its seed. Properties are registered by string id
and run on every generated instance; failing instances are shrunk by greedy
rule deletion.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .aba import induce_abf
from .bridge import (
    check_corollary_black,
    check_corollary_pink,
    demonstrate_divergence,
    verify_stable_correspondence,
    verify_three_valued_correspondence,
)
from .cn_engine import TheoryContext, derives, entails_semantic, is_satisfiable
from .edlp import pm_transform, signed_universe
from .errors import DEFAULT_ATOM_CAP, InvalidConfig
from .lp2 import stable_models
from .lp3 import stable3_models
from .syntax import (
    ExtendedProgram,
    ExtendedRule,
    Literal,
    Program,
    Rule,
    fmt_set,
    is_normal,
    render_program,
)

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
ATOM_CAP_THREE_VALUED = 10


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Counter-based 64-bit generator; ``split`` derives an independent stream."""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.counter = 0

    @staticmethod
    def at(seed: int, i: int) -> int:
        """Output ``i`` (0-based) of the stream for ``seed``."""
        return mix64((seed + (i + 1) * GAMMA) & MASK64)

    def next_u64(self) -> int:
        out = self.at(self.seed, self.counter)
        self.counter += 1
        return out

    def below(self, n: int) -> int:
        """Uniform-ish integer in ``[0, n)`` by multiply-shift."""
        if n <= 0:
            raise ValueError("bound must be positive")
        return (self.next_u64() * n) >> 64

    def sample(self, items: list, k: int) -> list:
        """``k`` distinct items by partial Fisher-Yates."""
        pool = list(items)
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


def trial_seed(seed: int, trial: int) -> int:
    return SplitMix64.at(seed, trial)


def property_seed(seed: int) -> int:
    """Seed for the random choices a property makes on one trial."""
    return mix64(seed ^ GAMMA)


# -- generation ------------------------------------------------------------

ATOM_NAMES = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class GeneratorConfig:
    atom_count: int = 4
    rule_count: int = 4
    max_head: int = 2
    max_body_pos: int = 2
    max_body_naf: int = 2
    extended: bool = False
    seed: int = 0

    def validate(self, three_valued: bool = False) -> None:
        checks = [
            (self.atom_count >= 1, "atom_count must be at least 1"),
            (self.rule_count >= 0, "rule_count must be non-negative"),
            (self.max_head >= 1, "max_head must be at least 1"),
            (self.max_body_pos >= 0, "max_body_pos must be non-negative"),
            (self.max_body_naf >= 0, "max_body_naf must be non-negative"),
            (0 <= self.seed <= MASK64, "seed must be a 64-bit unsigned integer"),
        ]
        for ok, message in checks:
            if not ok:
                raise InvalidConfig(message)
        cap = ATOM_CAP_THREE_VALUED if three_valued else DEFAULT_ATOM_CAP
        # each extended atom becomes two signed atoms
        width = self.atom_count * (2 if self.extended else 1)
        if width > cap:
            raise InvalidConfig(f"{width} atoms exceed the campaign cap of {cap}")


def random_program(cfg: GeneratorConfig) -> Program | ExtendedProgram:
    """Deterministic in ``cfg``; duplicate rules are allowed."""
    cfg.validate()
    rng = SplitMix64(cfg.seed)
    atoms = list(ATOM_NAMES[: cfg.atom_count])
    n = cfg.atom_count
    rules = []
    for _ in range(cfg.rule_count):
        h = 1 + rng.below(min(cfg.max_head, n))
        npos = rng.below(min(cfg.max_body_pos, n) + 1)
        nnaf = rng.below(min(cfg.max_body_naf, n) + 1)
        parts = [rng.sample(atoms, k) for k in (h, npos, nnaf)]
        if cfg.extended:
            head, pos, naf = (
                [Literal(a, bool(rng.below(2))) for a in part] for part in parts
            )
            rules.append(ExtendedRule(head=head, pos=pos, naf=naf))
        else:
            rules.append(Rule(head=parts[0], pos=parts[1], naf=parts[2]))
    return ExtendedProgram(tuple(rules)) if cfg.extended else Program(tuple(rules))


def enumerate_programs(
    atom_count: int = 3, max_rules: int = 3, max_head: int = 2, max_body: int = 2
) -> Iterator[Program]:
    """Every program with at most ``max_rules`` distinct rules.

    Heads are nonempty with at most ``max_head`` atoms; bodies hold at most
    ``max_body`` literals in total (positive plus naf).
    """
    atoms = ATOM_NAMES[:atom_count]
    subsets = [frozenset(c) for k in range(atom_count + 1) for c in combinations(atoms, k)]
    rules = [
        Rule(head=h, pos=p, naf=n)
        for h in subsets
        if 1 <= len(h) <= max_head
        for p in subsets
        for n in subsets
        if len(p) + len(n) <= max_body
    ]
    for k in range(max_rules + 1):
        for chosen in combinations(rules, k):
            yield Program(chosen)


# -- properties ------------------------------------------------------------

def _base(src: Program | ExtendedProgram) -> tuple[Program, frozenset]:
    if isinstance(src, ExtendedProgram):
        return pm_transform(src), signed_universe(src)
    return src, src.atoms


def _random_assumptions(atoms: Iterable[str], seed: int) -> frozenset:
    rng = SplitMix64(seed)
    return frozenset(a for a in sorted(atoms) if rng.below(2))


def _goals(atoms: Iterable[str]) -> Iterator[frozenset]:
    atoms = sorted(atoms)
    for k in range(1, len(atoms) + 1):
        for c in combinations(atoms, k):
            yield frozenset(c)


def check_engine(ctx: TheoryContext, equivalence: bool) -> list[str]:
    """Compare syntactic derivation with semantic entailment on every clause goal.

    Soundness (derives implies entails) is always checked. With
    ``equivalence`` the converse is checked too, on satisfiable contexts only.
    """
    failures = []
    complete = equivalence and is_satisfiable(ctx)
    for g in _goals(ctx.atoms):
        d, e = derives(ctx, g), entails_semantic(ctx, g)
        if d and not e:
            failures.append(f"derives {fmt_set(g)} but does not entail it")
        elif complete and e and not d:
            failures.append(f"entails {fmt_set(g)} but does not derive it")
    return failures


def _prop_stable(src, seed):
    p, universe = _base(src)
    report = verify_stable_correspondence(p, atoms=universe)
    return report.mismatches or ([] if report.ok else ["models and extensions differ in number"])


def _context(src, seed) -> TheoryContext:
    p, universe = _base(src)
    return TheoryContext(p, _random_assumptions(universe, seed), extra_atoms=universe)


def _prop_soundness(src, seed):
    return check_engine(_context(src, seed), equivalence=False)


def _prop_equivalence(src, seed):
    ctx = _context(src, seed)
    if not is_satisfiable(ctx):
        return None
    return check_engine(ctx, equivalence=True)


def _prop_pink(src, seed):
    return check_corollary_pink(_base(src)[0])


def _prop_black(src, seed):
    return check_corollary_black(_base(src)[0])


def _prop_flat(src, seed):
    p, universe = _base(src)
    return [] if induce_abf(p, atoms=universe).is_flat() else ["induced framework is not flat"]


def _prop_collapse(src, seed):
    p, _ = _base(src)
    total = {m.x for m in stable3_models(p) if m.x == m.y}
    two = stable_models(p)
    return [] if total == two else [
        f"total 3-valued stable models {sorted(map(fmt_set, total))} vs {sorted(map(fmt_set, two))}"
    ]


def _prop_three(src, seed):
    p, _ = _base(src)
    if not is_normal(p):
        return None
    return verify_three_valued_correspondence(p).mismatches


def _prop_extended(src, seed):
    if not isinstance(src, ExtendedProgram):
        return None
    return _prop_stable(src, seed)


def _prop_divergence(src, seed):
    return demonstrate_divergence(_base(src)[0]).mismatches


@dataclass(frozen=True)
class Property:
    """A checkable claim; ``proven`` properties count towards the exit status.

    ``check(program, seed)`` returns failure messages, or ``None`` when the
    instance is outside the property's scope.
    """

    id: str
    check: Callable
    proven: bool = True
    three_valued: bool = False


PROPERTIES: dict[str, Property] = {
    p.id: p
    for p in (
        Property("stable-correspondence", _prop_stable),
        Property("engine-soundness", _prop_soundness),
        Property("engine-equivalence", _prop_equivalence),
        Property("corollary-pink", _prop_pink),
        Property("corollary-black", _prop_black),
        Property("flatness", _prop_flat),
        Property("three-valued-collapse", _prop_collapse, three_valued=True),
        Property("three-valued", _prop_three, three_valued=True),
        Property("extended-correspondence", _prop_extended),
        Property("divergence", _prop_divergence, proven=False, three_valued=True),
    )
}

DEFAULT_PROPERTIES = ("stable-correspondence", "engine-soundness", "flatness")


def _resolve(properties: Iterable[str]) -> list[Property]:
    ids = list(dict.fromkeys(properties))
    unknown = [i for i in ids if i not in PROPERTIES]
    if unknown:
        raise InvalidConfig(f"unknown properties {unknown}; known: {sorted(PROPERTIES)}")
    return [PROPERTIES[i] for i in ids]


# -- campaigns -------------------------------------------------------------

@dataclass(frozen=True)
class Failure:
    trial: int
    seed: int
    property: str
    program: str
    reduced_program: str
    details: tuple

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "property": self.property,
            "program": self.program,
            "reduced_program": self.reduced_program,
            "details": list(self.details),
        }


@dataclass
class CampaignResult:
    config: GeneratorConfig
    trials: int
    properties: tuple
    failures: list = field(default_factory=list)
    observations: list = field(default_factory=list)
    skipped: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "config": {
                "atom_count": self.config.atom_count,
                "rule_count": self.config.rule_count,
                "max_head": self.config.max_head,
                "max_body_pos": self.config.max_body_pos,
                "max_body_naf": self.config.max_body_naf,
                "extended": self.config.extended,
                "seed": self.config.seed,
            },
            "trials": self.trials,
            "properties": list(self.properties),
            "failures": [f.to_dict() for f in self.failures],
            "observations": [f.to_dict() for f in self.observations],
            "skipped": dict(self.skipped),
            "ok": self.ok,
        }
        if timing:
            out["timing"] = {"seconds": round(self.seconds, 3)}
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def write_failures(self, directory: str | Path) -> list[Path]:
        """One standalone ``.lp`` file per failure, holding the reduced program."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for f in self.failures:
            path = directory / f"{f.property}-trial{f.trial}.lp"
            header = f"% property {f.property}, trial {f.trial}, seed {f.seed}\n"
            path.write_text(header + f.reduced_program)
            paths.append(path)
        return paths


def _render(src) -> str:
    return render_program(src) if isinstance(src, Program) else str(src)


def shrink(src, still_fails: Callable[[object], bool]):
    """Greedily delete rules while ``still_fails`` holds."""
    rules = list(src.rules)
    kind = type(src)
    i = 0
    while i < len(rules):
        candidate = kind(tuple(rules[:i] + rules[i + 1 :]))
        if still_fails(candidate):
            rules = list(candidate.rules)
        else:
            i += 1
    return kind(tuple(rules))


def run_campaign(
    cfg: GeneratorConfig, trials: int, properties: Iterable[str] = DEFAULT_PROPERTIES
) -> CampaignResult:
    """Run each property on ``trials`` programs drawn from per-trial seeds."""
    props = _resolve(properties)
    cfg.validate(three_valued=any(p.three_valued for p in props))
    if trials < 0:
        raise InvalidConfig("trials must be non-negative")
    result = CampaignResult(cfg, trials, tuple(p.id for p in props))
    result.skipped = {p.id: 0 for p in props}
    start = time.perf_counter()
    for t in range(trials):
        seed = trial_seed(cfg.seed, t)
        src = random_program(replace(cfg, seed=seed))
        check_seed = property_seed(seed)
        for prop in props:
            details = prop.check(src, check_seed)
            if details is None:
                result.skipped[prop.id] += 1
                continue
            if not details:
                continue

            def fails(candidate, prop=prop):
                return bool(prop.check(candidate, check_seed))

            reduced = shrink(src, fails) if prop.proven else src
            failure = Failure(
                trial=t,
                seed=seed,
                property=prop.id,
                program=_render(src),
                reduced_program=_render(reduced),
                details=tuple(details),
            )
            (result.failures if prop.proven else result.observations).append(failure)
    result.seconds = time.perf_counter() - start
    return result


def replay(cfg: GeneratorConfig, trial: int) -> Program | ExtendedProgram:
    """The program a campaign generated for ``trial``."""
    return random_program(replace(cfg, seed=trial_seed(cfg.seed, trial)))
