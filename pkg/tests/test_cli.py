from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from lpaba.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stable(capsys, data_dir):
    assert run(capsys, "stable", str(data_dir / "pi1.lp")) == (0, "{q}\n{r}\n", "")


def test_extensions_empty_set(capsys, data_dir):
    code, out, _ = run(capsys, "extensions", str(data_dir / "pi2.lp"), "--semantics", "stable")
    assert (code, out) == (0, "{}\n")


def test_extensions_mp_only(capsys, data_dir):
    _, out, _ = run(capsys, "extensions", str(data_dir / "pi3.lp"), "--mp-only")
    assert out == "{~p,~q}\n"
    _, out, _ = run(capsys, "extensions", str(data_dir / "pi2.lp"), "--logic", "mp+res")
    assert out == ""


def test_check_extended(capsys, data_dir):
    code, out, _ = run(capsys, "check", str(data_dir / "pi7.lp"), "--extended")
    assert code == 0
    assert out.count("<->") == 2 and out.endswith("ok\n")


def test_check_json(capsys, data_dir):
    code, out, _ = run(capsys, "check", str(data_dir / "pi1.lp"), "--json")
    d = json.loads(out)
    assert code == 0 and d["ok"] and len(d["pairs"]) == 2


def test_parse_echo(capsys, data_dir):
    _, out, _ = run(capsys, "parse", str(data_dir / "pi2.lp"))
    assert out == "p | q.\nq :- p.\np :- q.\n"


def test_reduct(capsys, data_dir):
    assert run(capsys, "reduct", str(data_dir / "pi1.lp"), "--model", "q")[1] == "q | r.\n"
    assert run(capsys, "reduct", str(data_dir / "pi1.lp"), "--model", "p")[1] == ""


def test_three(capsys, data_dir):
    assert run(capsys, "three", str(data_dir / "pi4.lp"))[1] == "({s},{q,s})\n"
    _, out, _ = run(capsys, "three", str(data_dir / "pi5.lp"), "--semantics", "regular", "--json")
    assert json.loads(out)["models"] == [{"x": [], "y": ["q", "r"]}, {"x": [], "y": ["q", "s"]}]


def test_cn(capsys, data_dir):
    code, out, _ = run(capsys, "cn", str(data_dir / "pi2.lp"), "--assume", "~p", "--query", "p", "--engine", "both")
    assert code == 0 and out.startswith("syntactic: yes\nsemantic: yes\n")
    code, out, _ = run(capsys, "cn", str(data_dir / "pi1.lp"), "--query", "~p", "--assume", "~p")
    assert out == "syntactic: yes\n"


def test_cn_disagreement_exits_one(capsys, data_dir):
    code, out, _ = run(capsys, "cn", str(data_dir / "pi3.lp"), "--query", "p|q|r", "--engine", "both")
    # weakening is entailed but not derived
    assert code == 1 and "syntactic: no" in out


def test_abf_and_dot(capsys, data_dir, tmp_path):
    target = tmp_path / "g.dot"
    code, out, _ = run(capsys, "abf", str(data_dir / "pi2.lp"), "--dot", str(target))
    assert code == 0 and "assumptions: {~p,~q}" in out
    assert target.read_text().count("->") == 6


def test_check3_and_diverge(capsys, data_dir):
    code, out, _ = run(capsys, "check3", str(data_dir / "pi4.lp"))
    assert code == 0 and out.endswith("ok\n")
    code, out, _ = run(capsys, "diverge", str(data_dir / "pi5.lp"))
    assert code == 0 and out.endswith("diverges\n")


def test_extended_modes(capsys, data_dir):
    assert run(capsys, "extended", str(data_dir / "pi6.lp"), "--transform")[1] == "-p :- not p.\n"
    assert run(capsys, "extended", str(data_dir / "pi6.lp"), "--stable")[1] == "{-p}\n"
    assert run(capsys, "extended", str(data_dir / "pi6.lp"), "--extensions")[1] == "{~p}\n"


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("p | q."))
    assert run(capsys, "stable", "-")[1] == "{p}\n{q}\n"


def test_exit_codes(capsys, tmp_path, data_dir):
    bad = tmp_path / "bad.lp"
    bad.write_text("p :- .")
    code, out, err = run(capsys, "stable", str(bad))
    assert code == 2 and out == "" and err.startswith("error:")
    assert run(capsys, "stable", str(tmp_path / "missing.lp"))[0] == 2
    assert run(capsys, "check3", str(data_dir / "pi5.lp"))[0] == 2
    assert run(capsys, "stable", str(data_dir / "pi1.lp"), "--cap", "2")[0] == 3
    with pytest.raises(SystemExit) as e:
        main(["extended", str(data_dir / "pi6.lp")])
    assert e.value.code == 2


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--atoms", "3", "--trials", "20", "--seed", "1", "--props", "stable-correspondence,flatness")
    assert code == 0 and out.endswith("ok\n")
    code, out, _ = run(capsys, "fuzz", "--trials", "5", "--props", "divergence", "--json")
    assert code == 0 and "timing" not in json.loads(out)


def test_byte_identical_output(data_dir):
    cmd = [sys.executable, "-m", "lpaba.cli", "fuzz", "--trials", "10", "--seed", "3", "--props", "engine-equivalence", "--json"]
    first = subprocess.run(cmd, capture_output=True).stdout
    second = subprocess.run(cmd, capture_output=True).stdout
    assert first == second and first
