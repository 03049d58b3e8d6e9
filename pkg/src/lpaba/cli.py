"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 atom cap exceeded. Sets print as ``{a,b}`` with sorted members.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .aba import induce_abf
from .bridge import (
    demonstrate_divergence,
    verify_stable_correspondence,
    verify_three_valued_correspondence,
)
from .cn_engine import Logic, TheoryContext, derives, entails_semantic, is_satisfiable
from .edlp import extended_abf, extended_stable_models, pm_transform, signed_universe
from .errors import AtomCapExceeded, LpAbaError
from .harness import PROPERTIES, GeneratorConfig, run_campaign
from .lp2 import gl_reduct, stable_models
from .lp3 import regular_models, sorted_3v, stable3_models, well_founded_models
from .syntax import (
    Naf,
    fmt_set,
    parse_extended_program,
    parse_program,
    render_program,
    sorted_family,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(LpAbaError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _names(s) -> list[str]:
    return sorted(str(x) for x in s)


def _family(fam) -> list[list[str]]:
    return [_names(s) for s in sorted_family(fam)]


def _split_list(raw: str | None) -> list[str]:
    if not raw:
        return []
    return [x.strip() for x in raw.split(",") if x.strip()]


def _logic(args) -> Logic:
    if getattr(args, "mp_only", False):
        return Logic.MP
    return Logic(args.logic)


class Output:
    """Collects human lines or one JSON document."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def render(self) -> str:
        if self.as_json:
            return json.dumps(self.data, indent=2) + "\n"
        return "".join(f"{x}\n" for x in self.lines)


# -- subcommands -----------------------------------------------------------

def cmd_parse(args, out: Output) -> int:
    text = _read(args.file)
    if args.extended:
        p = parse_extended_program(text, allow_constraints=True)
        rendered = str(p)
    else:
        p = parse_program(text, allow_constraints=True)
        rendered = render_program(p)
    out.data = {"program": rendered, "rules": len(p), "atoms": sorted(p.atoms)}
    out.lines.extend(rendered.splitlines())
    return EXIT_OK


def cmd_stable(args, out: Output) -> int:
    p = parse_program(_read(args.file))
    models = sorted_family(stable_models(p, args.cap))
    out.data = {"stable_models": _family(models)}
    out.lines.extend(fmt_set(m) for m in models)
    return EXIT_OK


def cmd_reduct(args, out: Output) -> int:
    p = parse_program(_read(args.file))
    m = frozenset(_split_list(args.model))
    unknown = m - p.atoms
    if unknown:
        raise UsageError(f"model mentions atoms not in the program: {fmt_set(unknown)}")
    r = gl_reduct(p, m)
    out.data = {"model": _names(m), "reduct": render_program(r)}
    out.lines.extend(render_program(r).splitlines())
    return EXIT_OK


def cmd_three(args, out: Output) -> int:
    p = parse_program(_read(args.file))
    fn = {"stable": stable3_models, "wf": well_founded_models, "regular": regular_models}
    models = sorted_3v(fn[args.semantics](p, args.cap))
    out.data = {
        "semantics": args.semantics,
        "models": [{"x": _names(m.x), "y": _names(m.y)} for m in models],
    }
    out.lines.extend(str(m) for m in models)
    return EXIT_OK


def _parse_assumptions(raw: str | None) -> frozenset:
    out = set()
    for item in _split_list(raw):
        if item.startswith("~"):
            out.add(item[1:].strip())
        elif item.startswith("not "):
            out.add(item[4:].strip())
        else:
            raise UsageError(f"assumption {item!r} must be written ~a")
    return frozenset(out)


def _parse_query(raw: str):
    raw = raw.strip()
    if raw.startswith("~"):
        return Naf(raw[1:].strip())
    atoms = frozenset(x.strip() for x in raw.split("|"))
    if not raw or "" in atoms:
        raise UsageError(f"malformed query {raw!r}")
    return atoms


def cmd_cn(args, out: Output) -> int:
    p = parse_program(_read(args.file))
    ctx = TheoryContext(p, _parse_assumptions(args.assume), frozenset(_split_list(args.facts)))
    goal = _parse_query(args.query)
    goal_text = str(goal) if isinstance(goal, Naf) else " | ".join(sorted(goal))
    out.data = {"assumptions": _names(Naf(a) for a in ctx.assumptions), "query": goal_text}
    results = {}
    if args.engine in ("syntactic", "both"):
        results["syntactic"] = derives(ctx, goal, _logic(args), args.cap)
    if args.engine in ("semantic", "both"):
        if isinstance(goal, Naf):
            raise UsageError("the semantic engine answers clause queries only")
        results["semantic"] = entails_semantic(ctx, goal, args.cap)
        out.data["satisfiable"] = is_satisfiable(ctx, args.cap)
    out.data.update(results)
    for k, v in results.items():
        out.line(f"{k}: {'yes' if v else 'no'}")
    if "satisfiable" in out.data:
        out.line(f"satisfiable: {'yes' if out.data['satisfiable'] else 'no'}")
    agree = len(set(results.values())) == 1
    out.data["agree"] = agree
    return EXIT_OK if agree else EXIT_FAIL


def cmd_abf(args, out: Output) -> int:
    p = parse_program(_read(args.file))
    f = induce_abf(p, _logic(args), args.cap)
    attackers = {
        str(Naf(a)): sorted((_names(f.unmask(m)) for m in mins), key=lambda s: (len(s), s))
        for a, mins in zip(f.lam, f.minimal_attackers)
    }
    out.data = {
        "logic": f.logic.value,
        "assumptions": _names(f.assumptions),
        "contrary": {str(Naf(a)): a for a in f.lam},
        "minimal_attackers": attackers,
        "flat": f.is_flat(),
    }
    out.line(f"logic: {f.logic.value}")
    out.line(f"assumptions: {fmt_set(f.assumptions)}")
    for k, v in attackers.items():
        shown = ", ".join("{" + ",".join(s) + "}" for s in v) or "none"
        out.line(f"{k} attacked by: {shown}")
    out.line(f"flat: {'yes' if out.data['flat'] else 'no'}")
    if args.dot:
        dot = f.attack_graph_dot()
        if args.dot == "-":
            out.lines.extend(dot.splitlines())
            out.data["dot"] = dot
        else:
            Path(args.dot).write_text(dot)
    return EXIT_OK


def cmd_extensions(args, out: Output) -> int:
    p = parse_program(_read(args.file))
    f = induce_abf(p, _logic(args), args.cap)
    exts = sorted_family(f.extensions(args.semantics))
    out.data = {"semantics": args.semantics, "logic": f.logic.value, "extensions": _family(exts)}
    out.lines.extend(fmt_set(e) for e in exts)
    return EXIT_OK


def _report_pairs(report, out: Output) -> None:
    for m, e in report.pairs:
        out.line(f"{fmt_set(m)} <-> {fmt_set(e)}")
    for msg in report.mismatches:
        out.line(f"mismatch: {msg}")
    out.line("ok" if report.ok else "FAILED")


def cmd_check(args, out: Output) -> int:
    text = _read(args.file)
    if args.extended:
        ep = parse_extended_program(text)
        report = verify_stable_correspondence(
            pm_transform(ep), _logic(args), args.cap, atoms=signed_universe(ep)
        )
    else:
        report = verify_stable_correspondence(parse_program(text), _logic(args), args.cap)
    out.data = report.to_dict()
    _report_pairs(report, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _report_3v(report, out: Output) -> None:
    out.line(f"stable3: {' '.join(map(str, report.stable3)) or 'none'}")
    out.line(f"well-founded: {' '.join(map(str, report.well_founded)) or 'none'}")
    out.line(f"regular: {' '.join(map(str, report.regular)) or 'none'}")
    out.line(f"complete: {' '.join(map(fmt_set, report.complete)) or 'none'}")
    out.line(f"grounded: {' '.join(map(fmt_set, report.grounded)) or 'none'}")
    out.line(f"preferred: {' '.join(map(fmt_set, report.preferred)) or 'none'}")
    for name, ok in report.checks.items():
        out.line(f"{name}: {'ok' if ok else 'mismatch'}")
    for msg in report.mismatches:
        out.line(f"mismatch: {msg}")


def cmd_check3(args, out: Output) -> int:
    report = verify_three_valued_correspondence(parse_program(_read(args.file)), args.cap)
    out.data = report.to_dict()
    _report_3v(report, out)
    out.line("ok" if report.ok else "FAILED")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_diverge(args, out: Output) -> int:
    report = demonstrate_divergence(parse_program(_read(args.file)), args.cap)
    out.data = report.to_dict()
    out.data["diverges"] = report.diverges
    _report_3v(report, out)
    out.line("diverges" if report.diverges else "agrees")
    # a divergence is an expected outcome, not a failure
    return EXIT_OK


def cmd_extended(args, out: Output) -> int:
    ep = parse_extended_program(_read(args.file))
    if args.transform:
        rendered = render_program(pm_transform(ep))
        out.data = {"transform": rendered}
        out.lines.extend(rendered.splitlines())
    elif args.stable:
        models = sorted_family(extended_stable_models(ep, args.cap))
        out.data = {"stable_models": _family(models)}
        out.lines.extend(fmt_set(m) for m in models)
    else:
        exts = sorted_family(extended_abf(ep, _logic(args), args.cap).stable_extensions())
        out.data = {"stable_extensions": _family(exts)}
        out.lines.extend(fmt_set(e) for e in exts)
    return EXIT_OK


def cmd_fuzz(args, out: Output) -> int:
    cfg = GeneratorConfig(
        atom_count=args.atoms,
        rule_count=args.rules,
        max_head=args.max_head,
        max_body_pos=args.max_body_pos,
        max_body_naf=args.max_body_naf,
        extended=args.extended,
        seed=args.seed,
    )
    result = run_campaign(cfg, args.trials, _split_list(args.props))
    if args.out:
        result.write_failures(args.out)
    out.data = result.to_dict(timing=args.timing)
    out.line(f"trials: {result.trials}")
    for pid in result.properties:
        failed = sum(1 for f in result.failures if f.property == pid)
        seen = sum(1 for f in result.observations if f.property == pid)
        tag = "observed" if not PROPERTIES[pid].proven else "failed"
        count = seen if not PROPERTIES[pid].proven else failed
        out.line(f"{pid}: {tag} {count}, skipped {result.skipped[pid]}")
    for f in result.failures:
        out.line(f"failure: {f.property} trial {f.trial} seed {f.seed}")
        out.lines.extend(f"  {x}" for x in f.reduced_program.splitlines())
    if args.timing:
        out.line(f"seconds: {result.seconds:.3f}")
    out.line("ok" if result.ok else "FAILED")
    return result.exit_code


# -- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=None, help="atom cap for enumeration")

    logic = argparse.ArgumentParser(add_help=False)
    logic.add_argument(
        "--logic",
        choices=[l.value for l in Logic],
        default=Logic.FULL.value,
        help="inference rules of the derivability relation",
    )

    parser = argparse.ArgumentParser(
        prog="lpaba", description="Disjunctive logic programs as assumption-based argumentation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, parents=(common,), file=True):
        sp = sub.add_parser(name, parents=list(parents), help=help_text)
        if file:
            sp.add_argument("file", help="program file, or - for stdin")
        sp.set_defaults(func=fn)
        return sp

    sp = add("parse", cmd_parse, "echo the canonical form of a program")
    sp.add_argument("--extended", action="store_true", help="allow strong negation")

    add("stable", cmd_stable, "list stable models")

    sp = add("reduct", cmd_reduct, "print the reduct by a candidate model")
    sp.add_argument("--model", required=True, help="comma-separated atoms, e.g. a,b")

    sp = add("three", cmd_three, "list 3-valued models")
    sp.add_argument("--semantics", choices=["stable", "wf", "regular"], default="stable")

    sp = add("cn", cmd_cn, "query derivability from assumptions", parents=(common, logic))
    sp.add_argument("--assume", default="", help='comma-separated, e.g. "~p,~q"')
    sp.add_argument("--facts", default="", help="comma-separated hypothetical facts")
    sp.add_argument("--query", required=True, help='clause "q|r" or naf literal "~p"')
    sp.add_argument("--engine", choices=["syntactic", "semantic", "both"], default="syntactic")

    sp = add("abf", cmd_abf, "describe the induced framework", parents=(common, logic))
    sp.add_argument("--mp-only", action="store_true", help="Modus Ponens only")
    sp.add_argument("--dot", metavar="OUT", help="write the attack graph in DOT (- for stdout)")

    sp = add("extensions", cmd_extensions, "list extensions", parents=(common, logic))
    sp.add_argument(
        "--semantics", choices=["stable", "complete", "preferred", "grounded"], default="stable"
    )
    sp.add_argument("--mp-only", action="store_true", help="Modus Ponens only")

    sp = add("check", cmd_check, "verify the stable model / stable extension bijection", parents=(common, logic))
    sp.add_argument("--extended", action="store_true", help="program uses strong negation")

    add("check3", cmd_check3, "verify the 3-valued correspondence for a normal program")
    add("diverge", cmd_diverge, "compare 3-valued models with the full framework")

    sp = add("extended", cmd_extended, "extended programs with strong negation", parents=(common, logic))
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--transform", action="store_true", help="print the signed-atom program")
    mode.add_argument("--stable", action="store_true", help="list stable models")
    mode.add_argument("--extensions", action="store_true", help="list stable extensions")

    sp = add("fuzz", cmd_fuzz, "run a seeded verification campaign", file=False)
    sp.add_argument("--atoms", type=int, default=4)
    sp.add_argument("--rules", type=int, default=4)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--props", default="stable-correspondence", help=f"comma-separated; known: {','.join(PROPERTIES)}")
    sp.add_argument("--max-head", type=int, default=2)
    sp.add_argument("--max-body-pos", type=int, default=2)
    sp.add_argument("--max-body-naf", type=int, default=2)
    sp.add_argument("--extended", action="store_true")
    sp.add_argument("--out", metavar="DIR", help="write failing programs as .lp files")
    sp.add_argument("--timing", action="store_true", help="include wall-clock timing")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        code = args.func(args, out)
    except AtomCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (LpAbaError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
