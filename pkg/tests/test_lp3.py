from __future__ import annotations

import pytest
from hypothesis import given, settings

from lpaba.errors import AtomCapExceeded, ConstraintNotSupported
from lpaba.lp2 import satisfies, stable_models
from lpaba.lp3 import (
    FALSE,
    TRUE,
    TV,
    UNKNOWN,
    And,
    Not,
    Or,
    Rule3,
    ThreeValued,
    eval3,
    gl3_transform,
    is_model3,
    leq_i,
    leq_t,
    regular_models,
    stable3_models,
    well_founded_models,
)
from lpaba.syntax import Program, Rule, parse_program

import oracles
from strategies import programs

PI4 = parse_program("q :- not q. s :- not r.")
PI5 = parse_program("q :- not q. r | s :- q.")
I4 = ThreeValued.of({"s"}, {"s", "q"})


def tv(x, y):
    return ThreeValued.of(x, y)


def test_truth_values():
    assert -TV.T == TV.F and -TV.U == TV.U and -TV.F == TV.T
    assert str(TV.U) == "u"


def test_eval3_examples():
    assert eval3(tv(set(), {"q"}), "q") == TV.U
    assert eval3(I4, Not(UNKNOWN)) == TV.U
    assert eval3(I4, Or(("r", "s"))) == TV.T
    assert eval3(I4, And(("q", "s"))) == TV.U
    assert eval3(I4, And(())) == TV.T and eval3(I4, Or(())) == TV.F


def test_orders():
    assert leq_t(tv(set(), {"q"}), tv({"q"}, {"q"}))
    assert leq_i(tv(set(), {"q", "r"}), tv(set(), {"q"}))
    with pytest.raises(ValueError):
        tv({"q"}, set())


def test_gl3_transform_examples():
    assert gl3_transform(PI4, I4) == (
        Rule3(head=frozenset("q"), constants=(TV.U,)),
        Rule3(head=frozenset("s"), constants=(TV.T,)),
    )
    r1, r2 = gl3_transform(PI5, tv(set(), {"q", "r"}))
    assert r1.constants == (TV.U,) and r2 == Rule3(head=frozenset("rs"), pos=frozenset("q"))
    pos = parse_program("p. q :- p.")
    assert all(not r.constants for r in gl3_transform(pos, tv(set(), set())))


def test_is_model3_examples():
    rules = gl3_transform(PI4, I4)
    assert is_model3(I4, rules)
    assert not is_model3(tv(set(), set()), [Rule3(head=frozenset("q"), constants=(TV.U,))])
    assert is_model3(I4, [])


def test_stable3_goldens():
    assert stable3_models(PI4) == {I4}
    assert stable3_models(PI5) == {tv(set(), {"q", "r"}), tv(set(), {"q", "s"})}
    assert stable3_models(parse_program("p.")) == {tv({"p"}, {"p"})}


def test_well_founded_and_regular():
    assert well_founded_models(PI4) == {I4}
    assert regular_models(PI5) == stable3_models(PI5)


def test_errors():
    with pytest.raises(ConstraintNotSupported):
        stable3_models(Program((Rule(pos={"p"}),)))
    wide = Program(tuple(Rule(head={f"a{i}"}) for i in range(13)))
    with pytest.raises(AtomCapExceeded):
        stable3_models(wide)


def test_constants():
    assert [eval3(I4, c) for c in (TRUE, UNKNOWN, FALSE)] == [TV.T, TV.U, TV.F]


@settings(max_examples=150, deadline=None)
@given(programs("abc", max_rules=4))
def test_stable3_matches_direct_enumeration(p):
    assert {(m.x, m.y) for m in stable3_models(p)} == oracles.stable3_models(p)


@settings(max_examples=150, deadline=None)
@given(programs("abcd", max_rules=5))
def test_total_models_collapse_to_two_valued(p):
    total = {m.x for m in stable3_models(p) if m.x == m.y}
    assert total == stable_models(p)
    for m in oracles.powerset(p.atoms):
        i = ThreeValued.total(m)
        for r in p.rules:
            body = And(tuple(sorted(r.pos)) + tuple(Not(a) for a in sorted(r.naf)))
            holds = eval3(i, body) <= eval3(i, Or(tuple(sorted(r.head))))
            assert holds == satisfies(m, r)


@settings(max_examples=100, deadline=None)
@given(programs("abc", max_rules=4, normal=True))
def test_normal_programs_have_unique_well_founded_model(p):
    assert len(well_founded_models(p)) == 1


@given(programs("abc", max_rules=4))
def test_extremal_models_are_stable3(p):
    st3 = stable3_models(p)
    assert well_founded_models(p) <= st3 and regular_models(p) <= st3


@given(programs("abc", max_rules=3))
def test_eval3_monotone_in_information_order(p):
    formulas = [Or(tuple(sorted(r.head))) for r in p.rules] + [And(tuple(sorted(r.pos))) for r in p.rules]
    atoms = sorted(p.atoms)
    interps = [tv(x, y) for y in oracles.powerset(atoms) for x in oracles.powerset(y)]
    for i1 in interps:
        for i2 in interps:
            if not leq_i(i1, i2):
                continue
            for f in formulas:
                v2 = eval3(i2, f)
                if v2 != TV.U:
                    assert eval3(i1, f) in (TV.U, v2)
