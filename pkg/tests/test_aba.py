from __future__ import annotations

import pytest
from hypothesis import given, settings

from lpaba.aba import ABF, induce_abf, induce_abf_mp_only, nafs
from lpaba.cn_engine import Logic
from lpaba.errors import ConstraintNotSupported
from lpaba.syntax import Program, Rule, parse_program

import oracles
from strategies import programs

PI1 = parse_program("q | r :- not p.")
PI2 = parse_program("p | q. q :- p. p :- q.")
PI3 = parse_program("p | q.")
PI4 = parse_program("q :- not q. s :- not r.")
PI5 = parse_program("q :- not q. r | s :- q.")
EX21 = parse_program("p :- not q.")


def test_induced_framework():
    f = induce_abf(PI1)
    assert f.assumptions == nafs("p", "q", "r")
    assert f.contrary["q"] == {frozenset("q")}
    assert induce_abf(PI2).assumptions == nafs("p", "q")
    with pytest.raises(ConstraintNotSupported):
        induce_abf(Program((Rule(pos={"q"}),)))


def test_attacks():
    f2 = induce_abf(PI2)
    assert f2.attacks(nafs("p"), nafs("p"))
    assert f2.attacks(set(), nafs("p")) and f2.attacks(set(), nafs("q"))
    assert induce_abf(PI1).attacks(nafs("q", "p"), nafs("r"))


def test_conflict_freeness():
    assert not induce_abf(PI2).is_conflict_free(nafs("p"))
    assert induce_abf(PI2).is_conflict_free(set())
    assert induce_abf(PI1).is_conflict_free(nafs("q", "p"))


def test_stable_goldens():
    assert induce_abf(PI1).stable_extensions() == {nafs("q", "p"), nafs("r", "p")}
    assert induce_abf(PI2).stable_extensions() == {frozenset()}
    assert induce_abf(EX21).stable_extensions() == {nafs("q")}
    assert induce_abf_mp_only(EX21).stable_extensions() == {nafs("q")}


def test_logic_variants():
    assert induce_abf_mp_only(PI3).stable_extensions() == {nafs("p", "q")}
    assert induce_abf(PI3).stable_extensions() == {nafs("p"), nafs("q")}
    assert induce_abf(PI2, Logic.MP_RES).stable_extensions() == set()


def test_defended_set():
    assert induce_abf(PI5).defended_set(set()) == set()
    free = ABF(Program(), ["a", "b"], {})
    assert free.defended_set(set()) == nafs("a", "b")
    assert nafs("r") <= induce_abf_mp_only(PI4).defended_set(nafs("r"))


def test_complete_family():
    f5 = induce_abf(PI5)
    assert f5.complete_extensions() == {frozenset()} == f5.preferred_extensions()
    assert induce_abf_mp_only(PI4).preferred_extensions() == {nafs("r")}
    free = ABF(Program(), ["a", "b"], {})
    assert free.grounded_extensions() == {nafs("a", "b")}
    with pytest.raises(ValueError):
        free.extensions("ideal")


def test_dot_figure_1a():
    dot = induce_abf(PI2).attack_graph_dot()
    edges = [l for l in dot.splitlines() if "->" in l]
    assert len(edges) == 6
    assert '  "{~p}" -> "{~p}";' in edges and '  "{}" -> "{~q}";' in edges
    assert dot.startswith("digraph abf {\n  node [shape=box];\n")


def test_dot_figure_2_edges():
    nodes = [nafs("q", "r", "p"), nafs("q", "p"), nafs("r", "p"), nafs("r"), nafs("q")]
    dot = induce_abf(PI1).attack_graph_dot(nodes)
    edges = {l.strip() for l in dot.splitlines() if "->" in l}
    drawn = {
        ("{~p,~q,~r}", "{~p,~q,~r}"),
        ("{~p,~q,~r}", "{~q}"),
        ("{~p,~q,~r}", "{~r}"),
        ("{~p,~q,~r}", "{~p,~q}"),
        ("{~p,~q}", "{~p,~q,~r}"),
        ("{~p,~q,~r}", "{~p,~r}"),
        ("{~p,~r}", "{~p,~q,~r}"),
        ("{~p,~q}", "{~p,~r}"),
        ("{~p,~q}", "{~r}"),
        ("{~p,~r}", "{~p,~q}"),
        ("{~p,~r}", "{~q}"),
    }
    assert edges == {f'"{a}" -> "{b}";' for a, b in drawn}
    assert sum(a == b for a, b in drawn) == 1


def test_dot_edgeless():
    dot = ABF(Program(), ["a"], {}).attack_graph_dot()
    assert "->" not in dot


def test_flatness_examples():
    assert induce_abf(PI1).is_flat() and induce_abf(PI2).is_flat()


@settings(max_examples=150, deadline=None)
@given(programs("abc", max_rules=4))
def test_stable_extensions_match_oracle(p):
    found = {frozenset(x.atom for x in e) for e in induce_abf(p).stable_extensions()}
    assert found == oracles.stable_extensions(p)


@settings(max_examples=100, deadline=None)
@given(programs("abc", max_rules=4))
def test_semantics_inclusions(p):
    f = induce_abf(p)
    complete = f.complete_extensions()
    assert f.stable_extensions() <= complete
    assert f.preferred_extensions() <= complete and f.grounded_extensions() <= complete
    for e in f.stable_extensions():
        plus = f.attacked_by(e)
        assert not e & plus and e | plus == f.assumptions


@settings(max_examples=100, deadline=None)
@given(programs("abc", max_rules=4))
def test_conflict_free_forms_agree(p):
    f = induce_abf(p)
    for m in range(f.full + 1):
        s = f.unmask(m)
        assert f.is_conflict_free(s) == f.conflict_free_by_subsets(s)


@settings(max_examples=100, deadline=None)
@given(programs("abc", max_rules=4))
def test_attack_monotonicity_and_flatness(p):
    f = induce_abf(p)
    for small in range(f.full + 1):
        for big in range(f.full + 1):
            if small & big == small:
                assert f.attacked_mask(small) & ~f.attacked_mask(big) == 0
    assert f.is_flat()


@settings(max_examples=100, deadline=None)
@given(programs("abc", max_rules=4, normal=True))
def test_mp_only_grounded_is_unique_for_normal_programs(p):
    assert len(induce_abf_mp_only(p).grounded_extensions()) == 1
