import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import member, section, small_instance
from oracles import soft_penalty_oracle
from ucap.constraints import build_schedules
from ucap.errors import IntegrityError
from ucap.evaluation import evaluate, evaluate_delta
from ucap.model import Assignment, Instance, Kind, Solution
from ucap.seeding import GeneratorSpec, generate_instance, initial_solution


def _two_member_instance():
    # A can teach periods 1 and 4 of day 0: a two-slot idle gap
    secs = (
        section("S1", "X", slots=(1,)),
        section("S2", "X", slots=(4,)),
        section("S3", "Y", slots=(2,)),
    )
    fac = (member("A", {"X"}), member("B", {"Y"}))
    return Instance(secs, fac)


def test_worked_example_hand_oracle():
    # n_f = 2, penalties {0.30, 0}: (0.70 + 1.00) / 2 = 0.85
    secs = tuple(section(f"S{d}", "X", slots=(6 * d,)) for d in range(6)) + (section("T", "Y", slots=(3,)),)
    fac = (member("A", {"X"}, max_credits=100), member("B", {"Y"}))
    inst = Instance(secs, fac)
    sol = Solution(tuple(Assignment(f"S{d}", Kind.THEORY, "A") for d in range(6)) + (Assignment("T", Kind.THEORY, "B"),))
    rep = evaluate(inst, sol)
    assert rep.hcv.total == 0
    assert [r.penalty_sum for r in rep.per_faculty] == [Fraction(3, 10), Fraction(0)]
    assert rep.score == (Fraction(7, 10) + 1) / 2 == Fraction(85, 100)


def test_gap_penalty_score():
    inst = _two_member_instance()
    sol = Solution.from_positions(inst, [0, 0, 1])
    rep = evaluate(inst, sol)
    assert rep.per_faculty[0].penalty_sum == Fraction(1, 10)
    assert rep.score == (Fraction(9, 10) + 1) / 2


def test_clamped_to_zero():
    # one senior member, six working days, four early slots, two lab seats:
    # 0.30 + 4 * 0.15 + 2 * 0.25 = 1.40 -> clamped to 0
    secs = tuple(section(f"S{d}", "X", slots=(6 * d + (0 if d < 4 else 2),)) for d in range(6))
    labs = (section("L1", "Z", "L", slots=(33,), credits=1), section("L2", "Z", "L", slots=(34,), credits=1))
    fac = (member("A", {"X", "Z"}, max_credits=100, senior=True), member("B", {"Z"}))
    inst = Instance(secs + labs, fac)
    elems = tuple(Assignment(f"S{d}", Kind.THEORY, "A") for d in range(6))
    elems += (
        Assignment("L1", Kind.LAB, "A"),
        Assignment("L1", Kind.LAB, "B"),
        Assignment("L2", Kind.LAB, "A"),
        Assignment("L2", Kind.LAB, "B"),
    )
    rep = evaluate(inst, Solution(elems))
    assert rep.hcv.total == 0
    assert rep.per_faculty[0].penalty_sum == Fraction(14, 10)
    assert rep.per_faculty[0].clamped_score == 0
    assert rep.score == Fraction(1, 2)


def test_single_member_clamped_score_is_zero():
    # n_f = 1: six days (0.30) + six early slots (0.90) + one idle slot on days 0-3 (0.20)
    secs = tuple(section(f"S{d}", "X", slots=(6 * d,)) for d in range(6))
    secs += tuple(section(f"E{d}", "X", slots=(6 * d + 2,)) for d in range(4))
    inst = Instance(secs, (member("A", {"X"}, max_credits=100, senior=True),))
    sol = Solution(tuple(Assignment(s.id, Kind.THEORY, "A") for s in secs))
    rep = evaluate(inst, sol)
    assert rep.per_faculty[0].penalty_sum == Fraction(14, 10)
    assert rep.score == 0


def test_hard_violation_zeroes_score_exactly():
    inst = _two_member_instance()
    sol = Solution.from_positions(inst, [1, 0, 1])  # B does not prefer X
    rep = evaluate(inst, sol)
    assert rep.hcv.total >= 1
    assert rep.score == 0 and isinstance(rep.score, Fraction)


def test_no_soft_violation_scores_one():
    secs = (section("S1", "X", slots=(1,)), section("S2", "Y", slots=(8,)))
    inst = Instance(secs, (member("A", {"X"}), member("B", {"Y"}), member("C", {"Y"})))
    rep = evaluate(inst, Solution.from_positions(inst, [0, 1]))
    assert rep.score == 1
    assert rep.per_faculty[2].clamped_score == 1  # unassigned member contributes 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 2**32))
def test_score_range_and_gate(inst_seed, seed):
    inst = small_instance(inst_seed)
    rng = random.Random(seed)
    pos = [rng.choice(inst.eligible[s]) if rng.random() < 0.8 else rng.randrange(inst.n_faculty) for s in inst.layout]
    sol = Solution.from_positions(inst, pos)
    rep = evaluate(inst, sol)
    assert 0 <= rep.score <= 1
    if rep.hcv.total:
        assert rep.score == 0
    else:
        # independent recomputation from the grid oracle
        scheds = build_schedules(inst, sol)
        per = [max(Fraction(0), 1 - soft_penalty_oracle(inst, f.id, set(scheds[f.id].occupied), scheds[f.id].lab_seats)) for f in inst.faculty]
        assert rep.score == sum(per) / len(per)
    for r in rep.per_faculty:
        assert r.clamped_score == max(Fraction(0), 1 - r.penalty_sum)


def test_delta_with_no_change_returns_cached():
    inst = small_instance(0)
    sol = initial_solution(inst, 1)
    rep = evaluate(inst, sol)
    assert evaluate_delta(inst, sol, rep, set()) is rep


def test_delta_after_swap_matches_full():
    inst = generate_instance(GeneratorSpec(), 2)
    sol = initial_solution(inst, 5)
    rep = evaluate(inst, sol)
    elems = list(sol.elements)
    i, j = 0, 1
    while elems[i].faculty_id == elems[j].faculty_id:
        j += 1
    a, b = elems[i].faculty_id, elems[j].faculty_id
    elems[i] = Assignment(elems[i].section_id, elems[i].kind_tag, b)
    elems[j] = Assignment(elems[j].section_id, elems[j].kind_tag, a)
    new = Solution(tuple(elems))
    assert evaluate_delta(inst, new, rep, {a, b}) == evaluate(inst, new)


def test_delta_walk_1000_steps():
    inst = generate_instance(GeneratorSpec(n_faculty=12, n_theory_sections=25, n_lab_sections=6), 9)
    sol = initial_solution(inst, 4)
    rep = evaluate(inst, sol)
    rng = random.Random(123)
    elems = list(sol.elements)
    ids = [f.id for f in inst.faculty]
    for _ in range(1000):
        k = rng.randrange(len(elems))
        old = elems[k].faculty_id
        new = rng.choice(ids)
        elems[k] = Assignment(elems[k].section_id, elems[k].kind_tag, new)
        cur = Solution(tuple(elems))
        rep = evaluate_delta(inst, cur, rep, {old, new})
        assert rep == evaluate(inst, cur)


def test_delta_verify_flags_stale_cache():
    inst = small_instance(1)
    sol = initial_solution(inst, 1)
    rep = evaluate(inst, sol)
    base = sol.to_positions(inst)
    # Pick a move that changes the report, otherwise a stale cache is still right.
    for e, s in enumerate(inst.layout):
        old = base[e]
        pos = list(base)
        for f in inst.eligible[s]:
            pos[e] = f
            changed = Solution.from_positions(inst, pos)
            if f != old and evaluate(inst, changed) != rep:
                break
        else:
            continue
        break
    untouched = next(f.id for k, f in enumerate(inst.faculty) if k not in (old, pos[e]))
    with pytest.raises(IntegrityError):
        evaluate_delta(inst, changed, rep, {untouched}, verify=True)
    good = {inst.faculty[old].id, inst.faculty[pos[e]].id}
    assert evaluate_delta(inst, changed, rep, good, verify=True) == evaluate(inst, changed)
