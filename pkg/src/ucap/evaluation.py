"""Score computation.

A solution scores zero if any hard constraint is violated. Otherwise each
faculty member starts from 1, loses the sum of their soft penalties
(floored at 0), and the score is the mean over all faculty members,
including those without assignments. All arithmetic is exact.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .constraints import (
    FacultySchedule,
    HardViolations,
    faculty_hard_terms,
    group_by_faculty,
    schedule_for,
    section_staffing_violations,
    soft_penalties,
)
from .errors import IntegrityError
from .model import Instance, Solution


@dataclass(frozen=True)
class FacultyScore:
    faculty_id: str
    penalty_sum: Fraction
    clamped_score: Fraction


@dataclass(frozen=True)
class EvaluationReport:
    hcv: HardViolations
    per_faculty: tuple[FacultyScore, ...]
    score: Fraction
    # Caches for evaluate_delta; excluded from equality.
    _schedules: dict = field(default_factory=dict, compare=False, repr=False)
    _faculty_terms: dict = field(default_factory=dict, compare=False, repr=False)
    _section_terms: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def feasible(self) -> bool:
        return self.hcv.total == 0

    def as_dict(self) -> dict:
        return {
            "score": float(self.score),
            "score_exact": str(self.score),
            "hcv": self.hcv.as_dict(),
            "per_faculty": [
                {
                    "faculty_id": r.faculty_id,
                    "penalty_sum": float(r.penalty_sum),
                    "clamped_score": float(r.clamped_score),
                }
                for r in self.per_faculty
            ],
        }


def _faculty_score(instance: Instance, sched: FacultySchedule) -> FacultyScore:
    total = sum((p for _, p in soft_penalties(instance, sched)), Fraction(0))
    return FacultyScore(sched.faculty_id, total, max(Fraction(0), 1 - total))


def _assemble(instance, schedules, faculty_terms, section_terms) -> EvaluationReport:
    theory = sum(t for t, _ in section_terms.values())
    lab = sum(lb for _, lb in section_terms.values())
    clash = sum(t[0] for t in faculty_terms.values())
    credit = sum(t[1] for t in faculty_terms.values())
    off = sum(t[2] for t in faculty_terms.values())
    hcv = HardViolations(theory, lab, clash, credit, off)
    per = tuple(_faculty_score(instance, schedules[f.id]) for f in instance.faculty)
    if hcv.total:
        score = Fraction(0)
    else:
        score = sum((r.clamped_score for r in per), Fraction(0)) / instance.n_faculty
    return EvaluationReport(hcv, per, score, schedules, faculty_terms, section_terms)


def _section_staff(solution: Solution) -> dict[str, list[str]]:
    staff: dict[str, list[str]] = defaultdict(list)
    for a in solution.elements:
        staff[a.section_id].append(a.faculty_id)
    return staff


def evaluate(instance: Instance, solution: Solution) -> EvaluationReport:
    groups = group_by_faculty(instance, solution)
    schedules = {
        f.id: schedule_for(instance, solution, f.id, groups.get(f.id, [])) for f in instance.faculty
    }
    faculty_terms = {fid: faculty_hard_terms(instance, s) for fid, s in schedules.items()}
    staff = _section_staff(solution)
    section_terms = {
        sec.id: section_staffing_violations(instance, sec.id, staff.get(sec.id, []))
        for sec in instance.sections
    }
    return _assemble(instance, schedules, faculty_terms, section_terms)


def evaluate_delta(
    instance: Instance,
    solution: Solution,
    cached: EvaluationReport,
    changed_faculty: Iterable[str],
    *,
    verify: bool = False,
) -> EvaluationReport:
    """Re-evaluate after a change confined to ``changed_faculty``.

    ``cached`` must be the report of the previous solution and
    ``changed_faculty`` exactly the members whose schedules differ. Only
    those schedules and the staffing of sections they touch (before or
    after) are rebuilt. With ``verify=True`` the result is cross-checked
    against a full :func:`evaluate`.
    """
    changed = sorted(set(changed_faculty))
    if not changed:
        return cached
    if not cached._schedules:
        raise ValueError("cached report carries no delta state; use evaluate()")
    for fid in changed:
        instance.faculty_member(fid)

    groups = group_by_faculty(instance, solution)
    schedules = dict(cached._schedules)
    faculty_terms = dict(cached._faculty_terms)
    section_terms = dict(cached._section_terms)

    touched: set[str] = set()
    for fid in changed:
        touched.update(schedules[fid].sections)
        sched = schedule_for(instance, solution, fid, groups.get(fid, []))
        schedules[fid] = sched
        faculty_terms[fid] = faculty_hard_terms(instance, sched)
        touched.update(sched.sections)

    theory = cached.hcv.hc_theory_unstaffed
    lab = cached.hcv.hc_lab_understaffed
    if touched:
        staff = _section_staff(solution)
        for sid in touched:
            old_t, old_l = cached._section_terms[sid]
            new_t, new_l = section_terms[sid] = section_staffing_violations(
                instance, sid, staff.get(sid, [])
            )
            theory += new_t - old_t
            lab += new_l - old_l

    per = list(cached.per_faculty)
    pos = instance.faculty_pos
    for fid in changed:
        per[pos[fid]] = _faculty_score(instance, schedules[fid])
    clash = cached.hcv.hc_slot_clash
    credit = cached.hcv.hc_credit_exceeded
    off = cached.hcv.hc_off_preference
    for fid in changed:
        old, new = cached._faculty_terms[fid], faculty_terms[fid]
        clash += new[0] - old[0]
        credit += new[1] - old[1]
        off += new[2] - old[2]
    hcv = HardViolations(theory, lab, clash, credit, off)
    if hcv.total:
        score = Fraction(0)
    else:
        score = sum((r.clamped_score for r in per), Fraction(0)) / instance.n_faculty
    report = EvaluationReport(hcv, tuple(per), score, schedules, faculty_terms, section_terms)
    if verify:
        full = evaluate(instance, solution)
        if full != report:
            raise IntegrityError("evaluate_delta diverged from full evaluation (stale cache?)")
    return report
