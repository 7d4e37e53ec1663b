"""Exception hierarchy shared by every ucap module."""

from __future__ import annotations


class UcapError(Exception):
    """Base class for all errors raised by ucap."""


class DomainError(UcapError, ValueError):
    """An argument lies outside its mathematical domain."""


class IntegrityError(UcapError):
    """A solution references a section or faculty member the instance lacks."""


class InfeasibleInstanceError(UcapError):
    """The instance cannot admit any hard-feasible solution."""


class InfeasibleStartError(UcapError):
    """A solver was handed a start solution that violates a hard constraint."""


class GenerationError(UcapError):
    """Instance generation or initial seeding ran out of retries."""


class FormatError(UcapError):
    """A file could not be parsed. Carries the offending line and field."""

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None, path=None):
        self.line = line
        self.field = field
        self.path = path
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
