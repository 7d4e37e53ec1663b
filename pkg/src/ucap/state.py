"""Mutable incumbent used by the search loops.

Keeps per-faculty slot bitmasks, credit loads and penalty units so that a
move touching a handful of elements is scored in O(changed) time. Only
hard-feasible configurations are ever represented: :meth:`SearchState.propose`
returns ``None`` for any move that would break a hard constraint.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .constraints import PenaltyKernel
from .errors import InfeasibleStartError
from .evaluation import evaluate
from .model import Instance, Kind, Solution


class Move(NamedTuple):
    total: int
    changes: tuple[tuple[int, int], ...]  # (element, new faculty)
    faculty: tuple[tuple[int, int, int, int, int], ...]  # (f, mask, credit, labs, penalty)


class InstanceTables:
    """Integer lookup tables derived once per instance."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.kernel = PenaltyKernel(instance.penalties)
        self.scale = self.kernel.scale
        self.n_faculty = instance.n_faculty
        self.denominator = self.scale * self.n_faculty
        creds = [s.credits for s in instance.sections] + [f.max_credits for f in instance.faculty]
        self.credit_scale = math.lcm(*(c.denominator for c in creds))
        cs = self.credit_scale
        self.layout = instance.layout
        self.sec_mask = tuple(s.slot_mask for s in instance.sections)
        self.sec_credit = tuple(int(s.credits * cs) for s in instance.sections)
        self.sec_lab = tuple(int(s.kind is Kind.LAB) for s in instance.sections)
        self.eligible = instance.eligible
        self.eligible_set = tuple(frozenset(e) for e in instance.eligible)
        self.fac_max = tuple(int(f.max_credits * cs) for f in instance.faculty)
        self.fac_senior = tuple(f.is_senior for f in instance.faculty)
        seats: dict[int, list[int]] = {}
        for e, s in enumerate(self.layout):
            seats.setdefault(s, []).append(e)
        self.sec_elems = tuple(tuple(seats.get(s, ())) for s in range(len(instance.sections)))


def tables_for(instance: Instance) -> InstanceTables:
    t = instance.__dict__.get("_ucap_tables")
    if t is None:
        t = InstanceTables(instance)
        instance.__dict__["_ucap_tables"] = t
    return t


class SearchState:
    def __init__(self, instance: Instance, positions: Sequence[int], *, check: bool = True):
        t = self.t = tables_for(instance)
        self.instance = instance
        nf = t.n_faculty
        self.fac = list(positions)
        self.mask = [0] * nf
        self.cred = [0] * nf
        self.labs = [0] * nf
        feasible = len(self.fac) == len(t.layout)
        for e, f in enumerate(self.fac):
            if not feasible:
                break
            s = t.layout[e]
            if f not in t.eligible_set[s] or self.mask[f] & t.sec_mask[s]:
                feasible = False
                break
            self.mask[f] |= t.sec_mask[s]
            self.cred[f] += t.sec_credit[s]
            self.labs[f] += t.sec_lab[s]
        if feasible:
            feasible = all(c <= m for c, m in zip(self.cred, t.fac_max))
        if check and not feasible:
            raise InfeasibleStartError("start solution violates a hard constraint")
        self.feasible = feasible
        units = t.kernel.units
        self.pen = [units(self.mask[f], self.labs[f], t.fac_senior[f]) for f in range(nf)]
        self.total = sum(max(0, t.scale - p) for p in self.pen)

    @classmethod
    def from_solution(cls, instance: Instance, solution: Solution) -> "SearchState":
        try:
            positions = solution.to_positions(instance)
        except Exception as exc:
            raise InfeasibleStartError(f"start solution is malformed: {exc}") from exc
        report = evaluate(instance, solution)
        if report.hcv.total:
            raise InfeasibleStartError(f"start solution has hard violations: {report.hcv.as_dict()}")
        return cls(instance, positions)

    def copy(self) -> "SearchState":
        new = SearchState.__new__(SearchState)
        new.t = self.t
        new.instance = self.instance
        new.fac = self.fac.copy()
        new.mask = self.mask.copy()
        new.cred = self.cred.copy()
        new.labs = self.labs.copy()
        new.pen = self.pen.copy()
        new.total = self.total
        new.feasible = self.feasible
        return new

    @property
    def score(self) -> Fraction:
        return Fraction(self.total, self.t.denominator)

    def score_of(self, total: int) -> Fraction:
        return Fraction(total, self.t.denominator)

    def solution(self) -> Solution:
        return Solution.from_positions(self.instance, self.fac)

    def replace_total(self, e: int, f: int) -> int | None:
        """Total units after setting element ``e`` to faculty ``f``, or None if infeasible."""
        t = self.t
        old = self.fac[e]
        if f == old:
            return self.total
        s = t.layout[e]
        if f not in t.eligible_set[s]:
            return None
        smask = t.sec_mask[s]
        mf = self.mask[f]
        if mf & smask:
            return None
        cf = self.cred[f] + t.sec_credit[s]
        if cf > t.fac_max[f]:
            return None
        lab = t.sec_lab[s]
        # a faculty already on another seat of the same section would clash above
        units = t.kernel.units
        scale = t.scale
        senior = t.fac_senior
        p_old = units(self.mask[old] & ~smask, self.labs[old] - lab, senior[old])
        p_new = units(mf | smask, self.labs[f] + lab, senior[f])
        return (
            self.total
            - max(0, scale - self.pen[old])
            - max(0, scale - self.pen[f])
            + max(0, scale - p_old)
            + max(0, scale - p_new)
        )

    def propose(self, changes: Iterable[tuple[int, int]]) -> Move | None:
        """Score a simultaneous set of element reassignments."""
        t = self.t
        target: dict[int, int] = {}
        for e, f in changes:
            target[e] = f
        delta = tuple((e, f) for e, f in target.items() if self.fac[e] != f)
        if not delta:
            return Move(self.total, (), ())
        work: dict[int, list[int]] = {}
        for e, f in delta:
            if f not in t.eligible_set[t.layout[e]]:
                return None
        for e, _ in delta:
            old = self.fac[e]
            s = t.layout[e]
            w = work.get(old)
            if w is None:
                w = work[old] = [self.mask[old], self.cred[old], self.labs[old]]
            w[0] &= ~t.sec_mask[s]
            w[1] -= t.sec_credit[s]
            w[2] -= t.sec_lab[s]
        for e, f in delta:
            s = t.layout[e]
            w = work.get(f)
            if w is None:
                w = work[f] = [self.mask[f], self.cred[f], self.labs[f]]
            if w[0] & t.sec_mask[s]:
                return None
            w[0] |= t.sec_mask[s]
            w[1] += t.sec_credit[s]
            w[2] += t.sec_lab[s]
        for f, w in work.items():
            if w[1] > t.fac_max[f]:
                return None
        units = t.kernel.units
        scale = t.scale
        total = self.total
        out = []
        for f, (m, c, lb) in work.items():
            p = units(m, lb, t.fac_senior[f])
            total += max(0, scale - p) - max(0, scale - self.pen[f])
            out.append((f, m, c, lb, p))
        return Move(total, delta, tuple(out))

    def commit(self, move: Move) -> None:
        for e, f in move.changes:
            self.fac[e] = f
        for f, m, c, lb, p in move.faculty:
            self.mask[f] = m
            self.cred[f] = c
            self.labs[f] = lb
            self.pen[f] = p
        self.total = move.total

    def apply(self, e: int, f: int) -> bool:
        """Reassign one element if feasible; returns whether it happened."""
        move = self.propose(((e, f),))
        if move is None:
            return False
        self.commit(move)
        return True

    def feasible_faculty(self, e: int) -> list[int]:
        """Eligible faculty (other than the current one) that ``e`` could move to."""
        return [f for f in self.t.eligible[self.t.layout[e]] if f != self.fac[e] and self.replace_total(e, f) is not None]
