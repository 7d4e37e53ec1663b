"""Plain-text file formats.

Instance file::

    # comments and blank lines are ignored
    [penalties]
    over_days = 3/10            # any rational: 0.3, 3/10, 1
    [courses]
    # id|code|kind|slots|credits|required_seats
    S001|CSE101T|T|3,15|3|1
    [faculty]
    # id|name|max_credits|senior|preferred_codes
    F01|Faculty 01|12|0|CSE101T,CSE104L

Solution file: one ``section_id|kind_tag|faculty_id`` row per element.

Trace file: CSV with columns ``elapsed_seconds,best_score,phase,iteration``.
"""

from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import DomainError, FormatError
from .model import (
    N_SLOTS,
    Assignment,
    CourseSection,
    Faculty,
    Instance,
    Kind,
    PenaltyConfig,
    Solution,
    as_fraction,
)

INSTANCE_MAGIC = "# ucap-instance v1"
SOLUTION_MAGIC = "# ucap-solution v1"
COURSE_FIELDS = ("id", "code", "kind", "slots", "credits", "required_seats")
FACULTY_FIELDS = ("id", "name", "max_credits", "senior", "preferred_codes")
TRACE_FIELDS = ("elapsed_seconds", "best_score", "phase", "iteration")
_TRUE = {"1", "true", "yes", "y"}
_FALSE = {"0", "false", "no", "n", ""}


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _frac(text: str, line: int, fieldname: str, path) -> Fraction:
    try:
        return as_fraction(text)
    except DomainError as exc:
        raise FormatError(str(exc), line=line, field=fieldname, path=path) from None


def _int(text: str, line: int, fieldname: str, path) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise FormatError(f"not an integer: {text!r}", line=line, field=fieldname, path=path) from None


def parse_instance(text: str, path=None) -> Instance:
    penalties: dict[str, Fraction] = {}
    sections: list[CourseSection] = []
    faculty: list[Faculty] = []
    block = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            block = line[1:-1].strip().lower()
            if block not in ("penalties", "courses", "faculty"):
                raise FormatError(f"unknown section [{block}]", line=lineno, path=path)
            continue
        if block is None:
            raise FormatError("data before the first [section] header", line=lineno, path=path)
        if block == "penalties":
            if "=" not in line:
                raise FormatError("expected 'name = value'", line=lineno, path=path)
            key, value = (p.strip() for p in line.split("=", 1))
            if key not in PenaltyConfig.field_names():
                raise FormatError(f"unknown penalty {key!r}", line=lineno, field=key, path=path)
            penalties[key] = _frac(value, lineno, key, path)
            continue
        parts = [p.strip() for p in line.split("|")]
        if block == "courses":
            if len(parts) not in (len(COURSE_FIELDS) - 1, len(COURSE_FIELDS)):
                raise FormatError(
                    f"expected {len(COURSE_FIELDS)} '|'-separated fields {COURSE_FIELDS}, got {len(parts)}",
                    line=lineno,
                    path=path,
                )
            sid, code, kind_s, slots_s, credits_s = parts[:5]
            try:
                kind = Kind.parse(kind_s)
            except DomainError as exc:
                raise FormatError(str(exc), line=lineno, field="kind", path=path) from None
            slots = []
            for tok in slots_s.split(","):
                s = _int(tok, lineno, "slots", path)
                if not (0 <= s < N_SLOTS):
                    raise FormatError(f"slot {s} outside [0, {N_SLOTS - 1}]", line=lineno, field="slots", path=path)
                slots.append(s)
            credits = _frac(credits_s, lineno, "credits", path)
            seats = _int(parts[5], lineno, "required_seats", path) if len(parts) == 6 and parts[5] else None
            try:
                sections.append(CourseSection(sid, code, kind, tuple(slots), credits, seats))
            except DomainError as exc:
                raise FormatError(str(exc), line=lineno, path=path) from None
        else:
            if len(parts) != len(FACULTY_FIELDS):
                raise FormatError(
                    f"expected {len(FACULTY_FIELDS)} '|'-separated fields {FACULTY_FIELDS}, got {len(parts)}",
                    line=lineno,
                    path=path,
                )
            fid, name, max_s, senior_s, prefs_s = parts
            senior_l = senior_s.lower()
            if senior_l not in _TRUE | _FALSE:
                raise FormatError(f"not a boolean: {senior_s!r}", line=lineno, field="senior", path=path)
            prefs = frozenset(p.strip() for p in prefs_s.split(",") if p.strip())
            try:
                faculty.append(
                    Faculty(fid, name, prefs, _frac(max_s, lineno, "max_credits", path), senior_l in _TRUE)
                )
            except DomainError as exc:
                raise FormatError(str(exc), line=lineno, path=path) from None
    try:
        return Instance(tuple(sections), tuple(faculty), PenaltyConfig(**penalties))
    except DomainError as exc:
        raise FormatError(str(exc), path=path) from None


def load_instance(path) -> Instance:
    path = Path(path)
    return parse_instance(path.read_text(encoding="utf-8"), path)


def _check_text(value: str, what: str) -> str:
    if any(c in value for c in "|#\n,"):
        raise DomainError(f"{what} {value!r} contains a reserved character")
    return value


def format_instance(instance: Instance) -> str:
    out = [INSTANCE_MAGIC, "[penalties]"]
    for name in PenaltyConfig.field_names():
        out.append(f"{name} = {getattr(instance.penalties, name)}")
    out.append("[courses]")
    out.append("# " + "|".join(COURSE_FIELDS))
    for s in instance.sections:
        out.append(
            "|".join(
                (
                    _check_text(s.id, "section id"),
                    _check_text(s.code, "course code"),
                    s.kind.value,
                    ",".join(str(x) for x in s.slots),
                    str(s.credits),
                    str(s.required_seats),
                )
            )
        )
    out.append("[faculty]")
    out.append("# " + "|".join(FACULTY_FIELDS))
    for f in instance.faculty:
        out.append(
            "|".join(
                (
                    _check_text(f.id, "faculty id"),
                    _check_text(f.name, "faculty name"),
                    str(f.max_credits),
                    "1" if f.is_senior else "0",
                    ",".join(sorted(f.preferred_courses)),
                )
            )
        )
    return "\n".join(out) + "\n"


def save_instance(instance: Instance, path) -> None:
    Path(path).write_text(format_instance(instance), encoding="utf-8")


def format_solution(solution: Solution) -> str:
    rows = [SOLUTION_MAGIC]
    rows.extend(f"{a.section_id}|{a.kind_tag.value}|{a.faculty_id}" for a in solution.elements)
    return "\n".join(rows) + "\n"


def parse_solution(text: str, path=None) -> Solution:
    elements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise FormatError("expected 'section_id|kind_tag|faculty_id'", line=lineno, path=path)
        try:
            kind = Kind.parse(parts[1])
        except DomainError as exc:
            raise FormatError(str(exc), line=lineno, field="kind_tag", path=path) from None
        elements.append(Assignment(parts[0], kind, parts[2]))
    return Solution(tuple(elements))


def load_solution(path) -> Solution:
    path = Path(path)
    return parse_solution(path.read_text(encoding="utf-8"), path)


def save_solution(solution: Solution, path) -> None:
    Path(path).write_text(format_solution(solution), encoding="utf-8")


def format_trace(trace: Iterable) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_FIELDS)
    for p in trace:
        writer.writerow((f"{p.elapsed:.6f}", repr(float(p.best_score)), p.phase, p.iteration))
    return buf.getvalue()


def save_trace(trace: Iterable, path) -> None:
    Path(path).write_text(format_trace(trace), encoding="utf-8")


def read_trace(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return [
        {
            "elapsed_seconds": float(r["elapsed_seconds"]),
            "best_score": float(r["best_score"]),
            "phase": r["phase"],
            "iteration": int(r["iteration"]),
        }
        for r in rows
    ]


def save_json(data: dict, path) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=False) + "\n", encoding="utf-8")
