"""Domain types: sections, faculty, instances, solutions, and the slot grid.

The week is a 6 x 6 grid of day/period slots. A slot is stored as a plain
integer ``6 * day + period`` in ``[0, 35]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import DomainError, InfeasibleInstanceError, IntegrityError

DAYS_PER_WEEK = 6
SLOTS_PER_DAY = 6
N_SLOTS = DAYS_PER_WEEK * SLOTS_PER_DAY

Rational = Union[int, float, str, Fraction]


def as_fraction(value: Rational) -> Fraction:
    """Convert to an exact Fraction; floats go through their shortest repr."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def slot_index(day: int, period: int) -> int:
    if not (0 <= day < DAYS_PER_WEEK):
        raise DomainError(f"day must be in [0, {DAYS_PER_WEEK - 1}], got {day}")
    if not (0 <= period < SLOTS_PER_DAY):
        raise DomainError(f"period must be in [0, {SLOTS_PER_DAY - 1}], got {period}")
    return SLOTS_PER_DAY * day + period


def slot_day_period(slot: int) -> tuple[int, int]:
    """Inverse of :func:`slot_index`."""
    if not (0 <= slot < N_SLOTS):
        raise DomainError(f"slot must be in [0, {N_SLOTS - 1}], got {slot}")
    return divmod(slot, SLOTS_PER_DAY)


class Kind(str, Enum):
    THEORY = "T"
    LAB = "L"

    @classmethod
    def parse(cls, tag: str) -> "Kind":
        try:
            return cls(tag.strip().upper())
        except ValueError:
            raise DomainError(f"kind must be 'T' or 'L', got {tag!r}") from None


@dataclass(frozen=True)
class PenaltyConfig:
    """Per-occurrence soft-constraint penalties, subtracted from a unit score.

    ``over_days``
        each working day beyond five.
    ``over_slots_per_day``
        each day with more than four taught slots.
    ``consecutive_four``
        each day containing four or more consecutive taught slots.
    ``idle_gap``
        each free slot between a day's first and last class.
    ``senior_lab`` / ``senior_early``
        each lab seat / each period-0 slot taught by a senior member.
    """

    over_days: Fraction = Fraction(3, 10)
    over_slots_per_day: Fraction = Fraction(1, 5)
    consecutive_four: Fraction = Fraction(1, 5)
    idle_gap: Fraction = Fraction(1, 20)
    senior_lab: Fraction = Fraction(1, 4)
    senior_early: Fraction = Fraction(3, 20)

    def __post_init__(self):
        for name in self.field_names():
            value = as_fraction(getattr(self, name))
            if value < 0:
                raise DomainError(f"penalty {name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)

    @staticmethod
    def field_names() -> tuple[str, ...]:
        return (
            "over_days",
            "over_slots_per_day",
            "consecutive_four",
            "idle_gap",
            "senior_lab",
            "senior_early",
        )

    @property
    def scale(self) -> int:
        """Smallest integer that turns every penalty into a whole number."""
        return math.lcm(*(getattr(self, n).denominator for n in self.field_names()))

    def units(self, name: str) -> int:
        value = getattr(self, name) * self.scale
        assert value.denominator == 1
        return int(value)


@dataclass(frozen=True)
class CourseSection:
    id: str
    code: str
    kind: Kind
    slots: tuple[int, ...]
    credits: Fraction
    required_seats: int | None = None

    def __post_init__(self):
        kind = self.kind if isinstance(self.kind, Kind) else Kind.parse(str(self.kind))
        object.__setattr__(self, "kind", kind)
        slots = tuple(int(s) for s in self.slots)
        if not slots:
            raise DomainError(f"section {self.id}: needs at least one slot")
        for s in slots:
            if not (0 <= s < N_SLOTS):
                raise DomainError(f"section {self.id}: slot {s} outside [0, {N_SLOTS - 1}]")
        if len(set(slots)) != len(slots):
            raise DomainError(f"section {self.id}: duplicate slots {slots}")
        object.__setattr__(self, "slots", slots)
        credits = as_fraction(self.credits)
        if credits <= 0:
            raise DomainError(f"section {self.id}: credits must be > 0, got {credits}")
        object.__setattr__(self, "credits", credits)
        seats = self.required_seats
        if seats is None:
            seats = 1 if kind is Kind.THEORY else 2
        seats = int(seats)
        if kind is Kind.THEORY and seats != 1:
            raise DomainError(f"section {self.id}: theory sections take exactly 1 seat")
        if kind is Kind.LAB and seats < 2:
            raise DomainError(f"section {self.id}: lab sections take at least 2 seats")
        object.__setattr__(self, "required_seats", seats)

    @property
    def slot_mask(self) -> int:
        mask = 0
        for s in self.slots:
            mask |= 1 << s
        return mask


@dataclass(frozen=True)
class Faculty:
    id: str
    name: str
    preferred_courses: frozenset[str]
    max_credits: Fraction
    is_senior: bool = False

    def __post_init__(self):
        object.__setattr__(self, "preferred_courses", frozenset(self.preferred_courses))
        max_credits = as_fraction(self.max_credits)
        if max_credits <= 0:
            raise DomainError(f"faculty {self.id}: max_credits must be > 0, got {max_credits}")
        object.__setattr__(self, "max_credits", max_credits)
        object.__setattr__(self, "is_senior", bool(self.is_senior))

    def prefers(self, code: str) -> bool:
        return code in self.preferred_courses


@dataclass(frozen=True)
class Instance:
    """An immutable problem definition.

    Construction validates ids and screens feasibility: every section must
    be preferred by at least ``required_seats`` faculty members.
    """

    sections: tuple[CourseSection, ...]
    faculty: tuple[Faculty, ...]
    penalties: PenaltyConfig = field(default_factory=PenaltyConfig)

    slots_per_day = SLOTS_PER_DAY
    days_per_week = DAYS_PER_WEEK

    def __post_init__(self):
        object.__setattr__(self, "sections", tuple(self.sections))
        object.__setattr__(self, "faculty", tuple(self.faculty))
        if not self.faculty:
            raise InfeasibleInstanceError("instance needs at least one faculty member")
        _check_unique((s.id for s in self.sections), "section")
        _check_unique((f.id for f in self.faculty), "faculty")
        for i, sec in enumerate(self.sections):
            have = len(self.eligible[i])
            if have < sec.required_seats:
                raise InfeasibleInstanceError(
                    f"insufficient eligible faculty for section {sec.id} ({sec.code}): "
                    f"{have} prefer it, {sec.required_seats} required"
                )

    @property
    def n_faculty(self) -> int:
        return len(self.faculty)

    @cached_property
    def section_pos(self) -> dict[str, int]:
        return {s.id: i for i, s in enumerate(self.sections)}

    @cached_property
    def faculty_pos(self) -> dict[str, int]:
        return {f.id: i for i, f in enumerate(self.faculty)}

    @cached_property
    def eligible(self) -> tuple[tuple[int, ...], ...]:
        """Eligible faculty positions per section position, in instance order."""
        return tuple(
            tuple(j for j, f in enumerate(self.faculty) if sec.code in f.preferred_courses)
            for sec in self.sections
        )

    @cached_property
    def layout(self) -> tuple[int, ...]:
        """Section position of each element in the canonical solution order."""
        return tuple(i for i, sec in enumerate(self.sections) for _ in range(sec.required_seats))

    def section(self, section_id: str) -> CourseSection:
        try:
            return self.sections[self.section_pos[section_id]]
        except KeyError:
            raise IntegrityError(f"unknown section id {section_id!r}") from None

    def faculty_member(self, faculty_id: str) -> Faculty:
        try:
            return self.faculty[self.faculty_pos[faculty_id]]
        except KeyError:
            raise IntegrityError(f"unknown faculty id {faculty_id!r}") from None


def _check_unique(ids: Iterable[str], what: str) -> None:
    seen = set()
    for i in ids:
        if i in seen:
            raise DomainError(f"duplicate {what} id {i!r}")
        seen.add(i)


def eligible_faculty(instance: Instance, section: CourseSection) -> list[Faculty]:
    return [f for f in instance.faculty if section.code in f.preferred_courses]


@dataclass(frozen=True)
class Assignment:
    """One solution element: ``section_id | kind_tag | faculty_id``."""

    section_id: str
    kind_tag: Kind
    faculty_id: str

    def __post_init__(self):
        if not isinstance(self.kind_tag, Kind):
            object.__setattr__(self, "kind_tag", Kind.parse(str(self.kind_tag)))


@dataclass(frozen=True)
class Solution:
    elements: tuple[Assignment, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @classmethod
    def from_positions(cls, instance: Instance, faculty_positions: Sequence[int]) -> "Solution":
        """Build a solution from faculty positions aligned with ``instance.layout``."""
        if len(faculty_positions) != len(instance.layout):
            raise DomainError("faculty position list does not match the instance layout")
        out = []
        for s, f in zip(instance.layout, faculty_positions):
            sec = instance.sections[s]
            out.append(Assignment(sec.id, sec.kind, instance.faculty[f].id))
        return cls(tuple(out))

    def to_positions(self, instance: Instance) -> list[int]:
        """Inverse of :meth:`from_positions`; the solution must be well-formed."""
        check_well_formed(instance, self)
        slots: dict[int, list[int]] = {}
        for a in self.elements:
            slots.setdefault(instance.section_pos[a.section_id], []).append(
                instance.faculty_pos[a.faculty_id]
            )
        out = []
        for i, sec in enumerate(instance.sections):
            out.extend(slots[i])
        return out


def check_well_formed(instance: Instance, solution: Solution) -> None:
    """Raise unless every section has exactly its seat count, with distinct faculty."""
    counts: dict[str, list[str]] = {}
    for a in solution.elements:
        sec = instance.section(a.section_id)
        instance.faculty_member(a.faculty_id)
        if a.kind_tag is not sec.kind:
            raise IntegrityError(f"element for {a.section_id} tagged {a.kind_tag.value}, section is {sec.kind.value}")
        counts.setdefault(a.section_id, []).append(a.faculty_id)
    for sec in instance.sections:
        got = counts.get(sec.id, [])
        if len(got) != sec.required_seats:
            raise DomainError(f"section {sec.id}: {len(got)} seats filled, {sec.required_seats} required")
        if len(set(got)) != len(got):
            raise DomainError(f"section {sec.id}: faculty repeated across seats")
