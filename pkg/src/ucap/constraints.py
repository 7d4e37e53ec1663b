"""Hard-constraint counting and per-faculty soft penalties.

Hard constraints (any violation zeroes the score):

* a theory section has exactly one faculty member;
* a lab section has at least ``required_seats`` (2) distinct faculty members;
* nobody teaches two classes in the same slot;
* nobody exceeds their credit limit;
* nobody teaches a course outside their preference list.

Soft constraints (per-occurrence penalties, see :class:`~ucap.model.PenaltyConfig`):

* SC1  working more than five of the six days;
* SC2  more than four taught slots in one day;
* SC3  four or more consecutive taught slots in one day;
* SC4  idle slots between the first and last class of a day;
* SC5  senior faculty holding lab seats or early (period 0) slots.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import IntegrityError
from .model import DAYS_PER_WEEK, SLOTS_PER_DAY, Instance, Kind, PenaltyConfig, Solution

MAX_WORKING_DAYS = 5
MAX_SLOTS_PER_DAY = 4
RUN_LIMIT = 4
EARLY_PERIOD = 0

SC1, SC2, SC3, SC4 = "SC1", "SC2", "SC3", "SC4"
SC5_LAB, SC5_EARLY = "SC5-lab", "SC5-early"


class DayProfile(NamedTuple):
    taught: int
    longest_run: int
    idle: int
    early: bool


def _profile(day_mask: int) -> DayProfile:
    periods = [p for p in range(SLOTS_PER_DAY) if day_mask >> p & 1]
    if not periods:
        return DayProfile(0, 0, 0, False)
    longest = run = 0
    for p in range(SLOTS_PER_DAY):
        run = run + 1 if day_mask >> p & 1 else 0
        longest = max(longest, run)
    idle = (periods[-1] - periods[0] + 1) - len(periods)
    return DayProfile(len(periods), longest, idle, bool(day_mask & 1 << EARLY_PERIOD))


DAY_PROFILES: tuple[DayProfile, ...] = tuple(_profile(m) for m in range(1 << SLOTS_PER_DAY))
DAY_BITS = (1 << SLOTS_PER_DAY) - 1


@dataclass(frozen=True)
class FacultySchedule:
    """Aggregate of everything one faculty member teaches in a solution."""

    faculty_id: str
    occupied: frozenset[int]
    lab_seats: int
    total_credits: Fraction
    slot_load: tuple[int, ...] = ()  # slot -> number of classes, for clash counting
    sections: tuple[str, ...] = ()
    off_preference: int = 0

    @property
    def mask(self) -> int:
        m = 0
        for s in self.occupied:
            m |= 1 << s
        return m

    @property
    def clashes(self) -> int:
        return sum(max(0, c - 1) for c in self.slot_load)


@dataclass(frozen=True)
class HardViolations:
    hc_theory_unstaffed: int = 0
    hc_lab_understaffed: int = 0
    hc_slot_clash: int = 0
    hc_credit_exceeded: int = 0
    hc_off_preference: int = 0

    @property
    def total(self) -> int:
        return (
            self.hc_theory_unstaffed
            + self.hc_lab_understaffed
            + self.hc_slot_clash
            + self.hc_credit_exceeded
            + self.hc_off_preference
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "hc_theory_unstaffed": self.hc_theory_unstaffed,
            "hc_lab_understaffed": self.hc_lab_understaffed,
            "hc_slot_clash": self.hc_slot_clash,
            "hc_credit_exceeded": self.hc_credit_exceeded,
            "hc_off_preference": self.hc_off_preference,
            "total": self.total,
        }


def group_by_faculty(instance: Instance, solution: Solution) -> dict[str, list[int]]:
    """Map faculty id -> element indices. Raises on dangling references."""
    out: dict[str, list[int]] = defaultdict(list)
    for k, a in enumerate(solution.elements):
        sec = instance.section(a.section_id)
        instance.faculty_member(a.faculty_id)
        if a.kind_tag is not sec.kind:
            raise IntegrityError(
                f"element {k}: kind tag {a.kind_tag.value} does not match section "
                f"{sec.id} ({sec.kind.value})"
            )
        out[a.faculty_id].append(k)
    return out


def schedule_for(instance: Instance, solution: Solution, faculty_id: str, elements: list[int]) -> FacultySchedule:
    member = instance.faculty_member(faculty_id)
    load = [0] * (DAYS_PER_WEEK * SLOTS_PER_DAY)
    labs = 0
    credits = Fraction(0)
    secs = []
    off = 0
    for k in elements:
        sec = instance.section(solution.elements[k].section_id)
        for s in sec.slots:
            load[s] += 1
        if sec.kind is Kind.LAB:
            labs += 1
        credits += sec.credits
        secs.append(sec.id)
        if sec.code not in member.preferred_courses:
            off += 1
    occupied = frozenset(s for s, c in enumerate(load) if c)
    return FacultySchedule(faculty_id, occupied, labs, credits, tuple(load), tuple(secs), off)


def build_schedules(instance: Instance, solution: Solution) -> dict[str, FacultySchedule]:
    """Schedules for every faculty member, including those with no assignments."""
    groups = group_by_faculty(instance, solution)
    return {f.id: schedule_for(instance, solution, f.id, groups.get(f.id, [])) for f in instance.faculty}


def section_staffing_violations(instance: Instance, section_id: str, staff: list[str]) -> tuple[int, int]:
    """(theory_unstaffed, lab_understaffed) contribution of one section."""
    sec = instance.section(section_id)
    if sec.kind is Kind.THEORY:
        return (int(len(staff) != 1), 0)
    return (0, int(len(set(staff)) < sec.required_seats))


def faculty_hard_terms(instance: Instance, schedule: FacultySchedule) -> tuple[int, int, int]:
    """(slot_clash, credit_exceeded, off_preference) contribution of one member."""
    member = instance.faculty_member(schedule.faculty_id)
    return (schedule.clashes, int(schedule.total_credits > member.max_credits), schedule.off_preference)


def count_hard_violations(instance: Instance, solution: Solution) -> HardViolations:
    schedules = build_schedules(instance, solution)
    staff: dict[str, list[str]] = defaultdict(list)
    for a in solution.elements:
        staff[a.section_id].append(a.faculty_id)
    theory = lab = 0
    for sec in instance.sections:
        t, lb = section_staffing_violations(instance, sec.id, staff.get(sec.id, []))
        theory += t
        lab += lb
    clash = credit = off = 0
    for sched in schedules.values():
        c, cr, o = faculty_hard_terms(instance, sched)
        clash += c
        credit += cr
        off += o
    return HardViolations(theory, lab, clash, credit, off)


def soft_penalties(instance: Instance, schedule: FacultySchedule) -> list[tuple[str, Fraction]]:
    """One ``(constraint_id, penalty)`` entry per soft-constraint violation."""
    cfg = instance.penalties
    member = instance.faculty_member(schedule.faculty_id)
    mask = schedule.mask
    entries: list[tuple[str, Fraction]] = []
    working_days = 0
    early = 0
    for d in range(DAYS_PER_WEEK):
        prof = DAY_PROFILES[mask >> (SLOTS_PER_DAY * d) & DAY_BITS]
        if not prof.taught:
            continue
        working_days += 1
        early += prof.early
        if prof.taught > MAX_SLOTS_PER_DAY:
            entries.append((SC2, cfg.over_slots_per_day))
        if prof.longest_run >= RUN_LIMIT:
            entries.append((SC3, cfg.consecutive_four))
        if prof.idle:
            entries.append((SC4, cfg.idle_gap * prof.idle))
    entries[:0] = [(SC1, cfg.over_days)] * max(0, working_days - MAX_WORKING_DAYS)
    if member.is_senior:
        entries.extend([(SC5_LAB, cfg.senior_lab)] * schedule.lab_seats)
        entries.extend([(SC5_EARLY, cfg.senior_early)] * early)
    return entries


class PenaltyKernel:
    """Integer-unit penalty evaluation over slot bitmasks.

    Produces the same totals as :func:`soft_penalties`, scaled by
    ``penalties.scale``, and is what the search loops call.
    """

    def __init__(self, penalties: PenaltyConfig):
        self.scale = penalties.scale
        u = {n: penalties.units(n) for n in penalties.field_names()}
        self.over_days = u["over_days"]
        self.senior_lab = u["senior_lab"]
        self.senior_early = u["senior_early"]
        self.day_units = tuple(
            (p.taught > MAX_SLOTS_PER_DAY) * u["over_slots_per_day"]
            + (p.longest_run >= RUN_LIMIT) * u["consecutive_four"]
            + p.idle * u["idle_gap"]
            for p in DAY_PROFILES
        )
        self.day_early = tuple(int(p.early) for p in DAY_PROFILES)

    def units(self, mask: int, lab_seats: int, senior: bool) -> int:
        total = 0
        days = 0
        early = 0
        day_units = self.day_units
        for _ in range(DAYS_PER_WEEK):
            m = mask & DAY_BITS
            if m:
                days += 1
                total += day_units[m]
                early += self.day_early[m]
            mask >>= SLOTS_PER_DAY
        if days > MAX_WORKING_DAYS:
            total += (days - MAX_WORKING_DAYS) * self.over_days
        if senior:
            total += lab_seats * self.senior_lab + early * self.senior_early
        return total
