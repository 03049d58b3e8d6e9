"""Disjunctive logic programs and their assumption-based argumentation frameworks."""

from __future__ import annotations

from .aba import ABF, induce_abf, induce_abf_mp_only, nafs
from .bridge import (
    CorrespondenceReport,
    ThreeValuedReport,
    check_corollary_black,
    check_corollary_pink,
    demonstrate_divergence,
    extension_labeling,
    extension_to_3v,
    floor_map,
    overline_map,
    underline_map,
    verify_stable_correspondence,
    verify_three_valued_correspondence,
)
from .cn_engine import (
    Logic,
    TheoryContext,
    cn_closure_syntactic,
    derives,
    entails_semantic,
    is_satisfiable,
)
from .edlp import Status, extended_abf, extended_stable_models, pm_transform, status
from .errors import (
    AtomCapExceeded,
    ConstraintNotAllowed,
    ConstraintNotSupported,
    EmptyHeadNotSupported,
    InvalidConfig,
    LpAbaError,
    NotNormalProgram,
    ParseError,
)
from .harness import GeneratorConfig, SplitMix64, random_program, run_campaign
from .lp2 import gl_reduct, is_stable_model, minimal_models, satisfies, stable_models
from .lp3 import (
    TV,
    ThreeValued,
    eval3,
    gl3_transform,
    regular_models,
    stable3_models,
    well_founded_models,
)
from .syntax import (
    ExtendedProgram,
    ExtendedRule,
    Literal,
    Naf,
    Program,
    Rule,
    clause,
    fmt_set,
    parse_extended_program,
    parse_program,
    render_program,
)

__all__ = [
    "ABF",
    "AtomCapExceeded",
    "ConstraintNotAllowed",
    "ConstraintNotSupported",
    "CorrespondenceReport",
    "EmptyHeadNotSupported",
    "ExtendedProgram",
    "ExtendedRule",
    "GeneratorConfig",
    "InvalidConfig",
    "Literal",
    "Logic",
    "LpAbaError",
    "Naf",
    "NotNormalProgram",
    "ParseError",
    "Program",
    "Rule",
    "SplitMix64",
    "Status",
    "TV",
    "TheoryContext",
    "ThreeValued",
    "ThreeValuedReport",
    "check_corollary_black",
    "check_corollary_pink",
    "clause",
    "cn_closure_syntactic",
    "demonstrate_divergence",
    "derives",
    "entails_semantic",
    "eval3",
    "extended_abf",
    "extended_stable_models",
    "extension_labeling",
    "extension_to_3v",
    "floor_map",
    "fmt_set",
    "gl3_transform",
    "gl_reduct",
    "induce_abf",
    "induce_abf_mp_only",
    "is_satisfiable",
    "is_stable_model",
    "minimal_models",
    "nafs",
    "overline_map",
    "parse_extended_program",
    "parse_program",
    "pm_transform",
    "random_program",
    "regular_models",
    "render_program",
    "run_campaign",
    "satisfies",
    "stable3_models",
    "stable_models",
    "status",
    "underline_map",
    "verify_stable_correspondence",
    "verify_three_valued_correspondence",
    "well_founded_models",
]
