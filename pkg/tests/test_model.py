from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import member, section
from ucap.errors import DomainError, InfeasibleInstanceError
from ucap.model import (
    Assignment,
    Instance,
    Kind,
    PenaltyConfig,
    Solution,
    check_well_formed,
    eligible_faculty,
    slot_day_period,
    slot_index,
)


@pytest.mark.parametrize("day,period,expected", [(0, 0, 0), (5, 5, 35), (2, 3, 15)])
def test_slot_index_examples(day, period, expected):
    assert slot_index(day, period) == expected


@pytest.mark.parametrize("day,period", [(-1, 0), (6, 0), (0, 6), (0, -1)])
def test_slot_index_rejects_out_of_range(day, period):
    with pytest.raises(DomainError):
        slot_index(day, period)


def test_slot_index_is_bijection():
    values = {slot_index(d, p) for d in range(6) for p in range(6)}
    assert values == set(range(36))


@given(st.integers(0, 35))
def test_slot_roundtrip(v):
    assert slot_index(*slot_day_period(v)) == v


def _abc_instance():
    secs = (section("S1", "X"), section("S2", "Y", slots=(1,)), section("S3", "Z", slots=(2,)))
    fac = (member("A", {"X", "Z"}), member("B", {"Y", "Z"}), member("C", {"X", "Y", "Z"}))
    return Instance(secs, fac)


def test_eligible_faculty_filters_in_instance_order():
    inst = _abc_instance()
    assert [f.id for f in eligible_faculty(inst, inst.sections[0])] == ["A", "C"]
    assert [f.id for f in eligible_faculty(inst, inst.sections[2])] == ["A", "B", "C"]


def test_eligible_faculty_empty():
    inst = _abc_instance()
    orphan = section("S9", "NOPE")
    assert eligible_faculty(inst, orphan) == []


def test_section_invariants():
    assert section("S", "X").required_seats == 1
    assert section("S", "X", "L").required_seats == 2
    with pytest.raises(DomainError):
        section("S", "X", slots=(3, 3))
    with pytest.raises(DomainError):
        section("S", "X", slots=())
    with pytest.raises(DomainError):
        section("S", "X", slots=(36,))
    with pytest.raises(DomainError):
        section("S", "X", credits=0)
    with pytest.raises(DomainError):
        section("S", "X", seats=2)
    with pytest.raises(DomainError):
        section("S", "X", "L", seats=1)


def test_faculty_invariants():
    with pytest.raises(DomainError):
        member("F", {"X"}, max_credits=0)


def test_instance_rejects_insufficient_eligible():
    with pytest.raises(InfeasibleInstanceError, match="insufficient eligible faculty"):
        Instance((section("S1", "X", "L"),), (member("A", {"X"}), member("B", {"Y"})))
    with pytest.raises(InfeasibleInstanceError):
        Instance((section("S1", "X"),), ())


def test_instance_rejects_duplicate_ids():
    with pytest.raises(DomainError):
        Instance((section("S1", "X"), section("S1", "X")), (member("A", {"X"}),))


def test_penalty_config_defaults_and_scale():
    cfg = PenaltyConfig()
    assert cfg.over_days == Fraction(3, 10)
    assert cfg.idle_gap == Fraction(1, 20)
    assert cfg.scale == 20
    assert PenaltyConfig(idle_gap=0.05).idle_gap == Fraction(1, 20)
    with pytest.raises(DomainError):
        PenaltyConfig(over_days=-0.1)


def test_solution_positions_roundtrip():
    inst = _abc_instance()
    sol = Solution.from_positions(inst, [0, 1, 2])
    assert [a.faculty_id for a in sol] == ["A", "B", "C"]
    assert sol.elements[0] == Assignment("S1", Kind.THEORY, "A")
    shuffled = Solution(tuple(reversed(sol.elements)))
    assert shuffled.to_positions(inst) == [0, 1, 2]


def test_well_formedness_checks():
    inst = Instance(
        (section("S1", "X", "L"),), (member("A", {"X"}), member("B", {"X"}), member("C", {"X"}))
    )
    check_well_formed(inst, Solution.from_positions(inst, [0, 1]))
    with pytest.raises(DomainError):
        check_well_formed(inst, Solution((Assignment("S1", Kind.LAB, "A"), Assignment("S1", Kind.LAB, "A"))))
    with pytest.raises(DomainError):
        check_well_formed(inst, Solution((Assignment("S1", Kind.LAB, "A"),)))
