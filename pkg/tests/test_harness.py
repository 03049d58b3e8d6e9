from __future__ import annotations

import json
from dataclasses import replace

import pytest

from lpaba.bridge import verify_stable_correspondence
from lpaba.errors import InvalidConfig
from lpaba.harness import (
    PROPERTIES,
    GeneratorConfig,
    SplitMix64,
    enumerate_programs,
    mix64,
    property_seed,
    random_program,
    replay,
    run_campaign,
    shrink,
    trial_seed,
)
from lpaba.syntax import ExtendedProgram, Program, parse_program

# reference outputs of SplitMix64 for seed 1234567
VECTORS = [
    6457827717110365317,
    3203168211198807973,
    9817491932198370423,
    4593380528125082431,
    16408922859458223821,
]


def test_splitmix_vectors():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in VECTORS] == VECTORS
    assert [SplitMix64.at(1234567, i) for i in range(5)] == VECTORS


def test_mix64_reference():
    # the finalizer of the first output for seed 0
    assert mix64(0x9E3779B97F4A7C15) == 0xE220A8397B1DCDAF


def test_below_and_sample_stay_in_range():
    rng = SplitMix64(5)
    assert all(0 <= rng.below(7) < 7 for _ in range(200))
    picked = rng.sample(list("abcdef"), 4)
    assert len(set(picked)) == 4 and set(picked) <= set("abcdef")
    with pytest.raises(ValueError):
        rng.below(0)


def test_split_is_deterministic():
    a, b = SplitMix64(9).split(), SplitMix64(9).split()
    assert [a.next_u64() for _ in range(3)] == [b.next_u64() for _ in range(3)]


def test_random_program_is_deterministic():
    cfg = GeneratorConfig(seed=1)
    assert random_program(cfg) == random_program(cfg)
    assert random_program(cfg) != random_program(replace(cfg, seed=2))


def test_empty_program():
    assert random_program(GeneratorConfig(rule_count=0)) == Program()


def test_fixed_instance_satisfies_correspondence():
    p = random_program(GeneratorConfig(atom_count=3, rule_count=4, seed=7))
    assert len(p) == 4 and p.atoms <= set("abc")
    assert verify_stable_correspondence(p).ok


def test_shape_bounds():
    cfg = GeneratorConfig(atom_count=5, rule_count=30, max_head=3, max_body_pos=1, max_body_naf=2, seed=3)
    for r in random_program(cfg).rules:
        assert 1 <= len(r.head) <= 3 and len(r.pos) <= 1 and len(r.naf) <= 2


def test_extended_generation():
    p = random_program(GeneratorConfig(atom_count=3, rule_count=5, extended=True, seed=11))
    assert isinstance(p, ExtendedProgram) and len(p) == 5


@pytest.mark.parametrize(
    "kwargs",
    [
        {"atom_count": 0},
        {"rule_count": -1},
        {"max_head": 0},
        {"max_body_pos": -1},
        {"max_body_naf": -1},
        {"atom_count": 17},
        {"atom_count": 9, "extended": True},
        {"seed": -1},
    ],
)
def test_invalid_config(kwargs):
    with pytest.raises(InvalidConfig):
        random_program(GeneratorConfig(**kwargs))


def test_three_valued_cap_and_unknown_property():
    with pytest.raises(InvalidConfig):
        run_campaign(GeneratorConfig(atom_count=11), 1, ["three-valued"])
    with pytest.raises(InvalidConfig):
        run_campaign(GeneratorConfig(), 1, ["no-such-property"])


def test_enumeration_size():
    assert sum(1 for _ in enumerate_programs(atom_count=2, max_rules=1)) == 1 + 3 * 11


def test_stable_correspondence_campaign():
    result = run_campaign(GeneratorConfig(atom_count=4, seed=1), 100, ["stable-correspondence"])
    assert result.ok and result.trials == 100 and result.exit_code == 0


def test_engine_equivalence_campaign():
    result = run_campaign(GeneratorConfig(atom_count=4, seed=1), 100, ["engine-equivalence"])
    assert result.failures == []


def test_divergence_demo_is_not_a_failure():
    pi5 = parse_program("q :- not q. r | s :- q.")
    assert PROPERTIES["divergence"].check(pi5, 0)
    result = run_campaign(GeneratorConfig(atom_count=3, seed=4), 30, ["divergence"])
    assert result.ok and result.observations


def test_replay_is_exact():
    cfg = GeneratorConfig(atom_count=4, seed=99)
    props = ["stable-correspondence", "engine-soundness", "engine-equivalence", "flatness"]
    a = run_campaign(cfg, 40, props).to_json(timing=False)
    b = run_campaign(cfg, 40, props).to_json(timing=False)
    assert a == b
    for f in json.loads(a)["failures"]:
        assert str(replay(cfg, f["trial"])) == f["program"]
        assert trial_seed(cfg.seed, f["trial"]) == f["seed"]


def test_shrinking_keeps_failure(tmp_path):
    cfg = GeneratorConfig(atom_count=4, rule_count=5, seed=1)
    result = run_campaign(cfg, 30, ["engine-equivalence"])
    assert result.failures
    for f in result.failures:
        reduced = parse_program(f.reduced_program)
        assert len(reduced) <= len(parse_program(f.program))
        assert PROPERTIES["engine-equivalence"].check(reduced, property_seed(f.seed))
    paths = result.write_failures(tmp_path)
    assert len(paths) == len(result.failures)
    assert paths[0].read_text().startswith("% property engine-equivalence")


def test_shrink_is_greedy():
    p = parse_program("a. b. c. d.")
    small = shrink(p, lambda q: any(r.head == {"c"} for r in q.rules))
    assert small == parse_program("c.")


def test_extended_campaign():
    cfg = GeneratorConfig(atom_count=3, extended=True, seed=5)
    result = run_campaign(cfg, 50, ["extended-correspondence", "flatness", "engine-soundness"])
    assert result.ok
