"""Exception hierarchy shared by all modules."""

from __future__ import annotations

import os

DEFAULT_ATOM_CAP = 16
DEFAULT_ATOM_CAP_3V = 12
CAP_ENV_VAR = "LPABA_ATOM_CAP"


class LpAbaError(Exception):
    """Base class for errors raised by this package."""


class ParseError(LpAbaError, ValueError):
    """Malformed program text. Carries 1-based line and column."""

    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"{line}:{col}: {message}")


class ConstraintNotAllowed(ParseError):
    """An empty-head rule was parsed without ``allow_constraints``."""


class ConstraintNotSupported(LpAbaError):
    """An empty-head rule reached a construction that is undefined for it."""


EmptyHeadNotSupported = ConstraintNotSupported


class NotNormalProgram(LpAbaError):
    """A normal program was required but some head has several atoms."""


class AtomCapExceeded(LpAbaError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"{count} atoms exceed the enumeration cap of {cap}")


class InvalidConfig(LpAbaError, ValueError):
    pass


def atom_cap(default: int = DEFAULT_ATOM_CAP) -> int:
    """Effective cap: ``LPABA_ATOM_CAP`` if set, otherwise ``default``."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidConfig(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 0:
        raise InvalidConfig(f"{CAP_ENV_VAR} must be non-negative")
    return value


def check_cap(count: int, cap: int | None, default: int = DEFAULT_ATOM_CAP) -> None:
    limit = atom_cap(default) if cap is None else cap
    if count > limit:
        raise AtomCapExceeded(count, limit)
