from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ucap.model import CourseSection, Faculty, Instance, Kind, PenaltyConfig  # noqa: E402
from ucap.seeding import GeneratorSpec, generate_instance  # noqa: E402

SMALL_SPEC = GeneratorSpec(
    n_faculty=4,
    n_theory_sections=5,
    n_lab_sections=1,
    preference_density=0.6,
    credit_limit_range=(9, 12),
    senior_fraction=0.3,
    sections_per_code=2,
)


def section(sid, code, kind="T", slots=(0,), credits=3, seats=None):
    return CourseSection(sid, code, Kind(kind), tuple(slots), Fraction(credits), seats)


def member(fid, prefs, max_credits=12, senior=False):
    return Faculty(fid, f"Name {fid}", frozenset(prefs), Fraction(max_credits), senior)


def small_instance(seed: int) -> Instance:
    """A generated instance small enough to enumerate exhaustively."""
    return generate_instance(SMALL_SPEC, seed)


@pytest.fixture
def full_instance():
    return generate_instance(GeneratorSpec(), 7)


@pytest.fixture
def forced_instance():
    """Every section has exactly one eligible faculty member (labs: two)."""
    secs = (
        section("S1", "A", slots=(0, 6)),
        section("S2", "B", slots=(1,)),
        section("S3", "C", "L", slots=(14,), credits="1.5"),
    )
    fac = (member("F1", {"A", "C"}), member("F2", {"B", "C"}))
    return Instance(secs, fac, PenaltyConfig())


_CRITERIA_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record a one-line pass/fail verdict for an acceptance criterion."""
    lines = request.config.stash.setdefault(_CRITERIA_KEY, [])

    def record(number: int, passed: bool, detail: str) -> bool:
        lines.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERIA_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
