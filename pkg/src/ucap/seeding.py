"""Hard-feasible initial solutions and synthetic benchmark instances."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import DomainError, GenerationError, InfeasibleInstanceError
from .model import (
    DAYS_PER_WEEK,
    SLOTS_PER_DAY,
    CourseSection,
    Faculty,
    Instance,
    Kind,
    PenaltyConfig,
    Solution,
    as_fraction,
)
from .state import tables_for

MAX_SEED = 2**64 - 1
DEFAULT_RESTARTS = 1000


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not (0 <= seed <= MAX_SEED):
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for a synthetic instance.

    Defaults produce a department of roughly the size the hybrid solver was
    designed for: 40 faculty and 105 sections, 25 of them labs.
    """

    n_faculty: int = 40
    n_theory_sections: int = 80
    n_lab_sections: int = 25
    preference_density: float = 0.15
    credit_limit_range: tuple[float, float] = (9, 15)
    meetings_per_section: tuple[float, float] = (0.3, 0.7)  # P(1 meeting), P(2 meetings)
    senior_fraction: float = 0.2
    sections_per_code: int = 3
    theory_credits: float = 3
    lab_credits: float = 1.5
    penalties: PenaltyConfig = field(default_factory=PenaltyConfig)

    def __post_init__(self):
        if self.n_faculty < 1:
            raise DomainError("n_faculty must be >= 1")
        if self.n_theory_sections < 0 or self.n_lab_sections < 0:
            raise DomainError("section counts must be >= 0")
        if self.n_theory_sections + self.n_lab_sections < 1:
            raise DomainError("need at least one section")
        if not (0 < self.preference_density <= 1):
            raise DomainError("preference_density must lie in (0, 1]")
        if not (0 <= self.senior_fraction <= 1):
            raise DomainError("senior_fraction must lie in [0, 1]")
        lo, hi = self.credit_limit_range
        if not (0 < lo <= hi):
            raise DomainError("credit_limit_range must satisfy 0 < lo <= hi")
        p1, p2 = self.meetings_per_section
        if p1 < 0 or p2 < 0 or p1 + p2 <= 0:
            raise DomainError("meetings_per_section weights must be >= 0 and not both 0")
        if self.sections_per_code < 1:
            raise DomainError("sections_per_code must be >= 1")
        object.__setattr__(self, "credit_limit_range", (lo, hi))
        object.__setattr__(self, "meetings_per_section", (p1, p2))
        if isinstance(self.penalties, dict):
            object.__setattr__(self, "penalties", PenaltyConfig(**self.penalties))

    @property
    def load_factor(self) -> float:
        """Credit demand over the expected total credit capacity.

        Specs with ``load_factor <= 0.75`` (and at least two faculty when
        labs are present) are the documented generation range.
        """
        demand = self.n_theory_sections * self.theory_credits + 2 * self.n_lab_sections * self.lab_credits
        lo, hi = self.credit_limit_range
        return demand / (self.n_faculty * (lo + hi) / 2)

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown generator fields: {sorted(unknown)}")
        data = dict(data)
        for key in ("credit_limit_range", "meetings_per_section"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["credit_limit_range"] = list(self.credit_limit_range)
        d["meetings_per_section"] = list(self.meetings_per_section)
        d["penalties"] = {n: str(getattr(self.penalties, n)) for n in PenaltyConfig.field_names()}
        return d


def _random_slots(rng: random.Random, n_meetings: int) -> tuple[int, ...]:
    days = sorted(rng.sample(range(DAYS_PER_WEEK), n_meetings))
    period = rng.randrange(SLOTS_PER_DAY)
    return tuple(SLOTS_PER_DAY * d + period for d in days)


def _build(spec: GeneratorSpec, rng: random.Random) -> Instance:
    per = spec.sections_per_code
    n_theory_codes = math.ceil(spec.n_theory_sections / per)
    n_lab_codes = math.ceil(spec.n_lab_sections / per)
    theory_codes = [f"CSE{101 + i}T" for i in range(n_theory_codes)]
    lab_codes = [f"CSE{101 + i}L" for i in range(n_lab_codes)]

    sections = []
    weights = spec.meetings_per_section
    for kind, count, codes, credits in (
        (Kind.THEORY, spec.n_theory_sections, theory_codes, spec.theory_credits),
        (Kind.LAB, spec.n_lab_sections, lab_codes, spec.lab_credits),
    ):
        for i in range(count):
            meetings = rng.choices((1, 2), weights=weights)[0]
            sections.append(
                CourseSection(
                    id=f"S{len(sections) + 1:03d}",
                    code=codes[i // per],
                    kind=kind,
                    slots=_random_slots(rng, meetings),
                    credits=as_fraction(credits),
                )
            )

    all_codes = theory_codes + lab_codes
    prefs = [
        {c for c in all_codes if rng.random() < spec.preference_density} for _ in range(spec.n_faculty)
    ]
    # enough distinct candidates to staff every section of a code without overlap
    need: dict[str, int] = {}
    for sec in sections:
        need[sec.code] = need.get(sec.code, 0) + sec.required_seats
    need = {c: min(n, spec.n_faculty) for c, n in need.items()}
    for code in all_codes:
        have = [j for j, p in enumerate(prefs) if code in p]
        missing = need[code] - len(have)
        if missing > 0:
            pool = [j for j in range(spec.n_faculty) if code not in prefs[j]]
            for j in rng.sample(pool, missing):
                prefs[j].add(code)
    # a faculty member with no preferences still counts toward n_f but can teach nothing
    lo, hi = spec.credit_limit_range
    faculty = []
    for j in range(spec.n_faculty):
        limit = Fraction(rng.randint(math.ceil(lo), math.floor(hi))) if math.floor(hi) >= math.ceil(lo) else as_fraction(hi)
        faculty.append(
            Faculty(
                id=f"F{j + 1:02d}",
                name=f"Faculty {j + 1:02d}",
                preferred_courses=frozenset(sorted(prefs[j])),
                max_credits=limit,
                is_senior=rng.random() < spec.senior_fraction,
            )
        )
    return Instance(tuple(sections), tuple(faculty), spec.penalties)


def generate_instance(spec: GeneratorSpec, seed: int, *, max_attempts: int = 20) -> Instance:
    """Deterministically generate an instance that admits a feasible solution.

    Each attempt draws a full instance and confirms that the randomized greedy
    seeder finds a hard-feasible start; after ``max_attempts`` failures a
    :class:`GenerationError` is raised.
    """
    seed = check_seed(seed)
    if spec.n_lab_sections and spec.n_faculty < 2:
        raise GenerationError("lab sections need two distinct faculty, spec has only one")
    demand = spec.n_theory_sections * as_fraction(spec.theory_credits) + 2 * spec.n_lab_sections * as_fraction(
        spec.lab_credits
    )
    if demand > spec.n_faculty * as_fraction(spec.credit_limit_range[1]):
        raise GenerationError(f"credit demand {demand} exceeds the largest possible capacity")
    rng = random.Random(seed)
    last = None
    for _ in range(max_attempts):
        try:
            inst = _build(spec, rng)
            initial_solution(inst, rng.getrandbits(64), max_restarts=50)
            return inst
        except (InfeasibleInstanceError, GenerationError) as exc:
            last = exc
    raise GenerationError(f"no feasible instance after {max_attempts} attempts: {last}")


def initial_solution(instance: Instance, seed: int, *, max_restarts: int = DEFAULT_RESTARTS) -> Solution:
    """Randomized greedy construction of a hard-feasible solution.

    Sections are taken in descending seat count, then descending credits
    (ties in a random order); each seat goes to a uniformly drawn eligible
    member that keeps every hard constraint satisfied. A dead end restarts
    with a fresh permutation.
    """
    seed = check_seed(seed)
    t = tables_for(instance)
    rng = random.Random(seed)
    n_sec = len(instance.sections)
    first_stuck = None
    for _ in range(max(1, max_restarts)):
        order = list(range(n_sec))
        rng.shuffle(order)
        order.sort(key=lambda s: (-instance.sections[s].required_seats, -instance.sections[s].credits))
        mask = [0] * t.n_faculty
        cred = [0] * t.n_faculty
        chosen: dict[int, list[int]] = {}
        stuck = None
        for s in order:
            picks: list[int] = []
            sm, sc = t.sec_mask[s], t.sec_credit[s]
            for _seat in range(instance.sections[s].required_seats):
                options = [
                    f
                    for f in t.eligible[s]
                    if not mask[f] & sm and cred[f] + sc <= t.fac_max[f] and f not in picks
                ]
                if not options:
                    stuck = s
                    break
                f = rng.choice(options)
                picks.append(f)
                mask[f] |= sm
                cred[f] += sc
            if stuck is not None:
                break
            chosen[s] = picks
        if stuck is None:
            positions = [f for s in range(n_sec) for f in chosen[s]]
            return Solution.from_positions(instance, positions)
        if first_stuck is None:
            first_stuck = stuck
    sec = instance.sections[first_stuck]
    raise GenerationError(
        f"no hard-feasible initial solution after {max_restarts} restarts; "
        f"first unsatisfiable section {sec.id} ({sec.code})"
    )
