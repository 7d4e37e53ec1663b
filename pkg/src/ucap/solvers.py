"""Local repair (LRA), the modified genetic algorithm (MGA) and their hybrid.

All three work on a single incumbent solution and accept a candidate only
when its score strictly improves on the best found so far, so the
incumbent is always the best solution seen.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DomainError, IntegrityError
from .evaluation import EvaluationReport, evaluate
from .model import Instance, Solution
from .seeding import check_seed
from .state import SearchState

logger = logging.getLogger(__name__)

PHASE_LRA = "LRA"
PHASE_CROSSOVER = "MGA-crossover"
PHASE_MUTATION = "MGA-mutation"


class TerminatedBy(str, Enum):
    ITERATION_BUDGET = "IterationBudget"
    WALL_CLOCK = "WallClock"
    SWITCHING_TOLERANCE = "SwitchingTolerance"


@dataclass(frozen=True)
class SolverConfig:
    lra_total_iteration: int = 5000
    switching_tolerance: int = 1000
    mga_max_generation: int = 500_000
    mini_batch_size: int = 2
    mutation_tolerance: int = 20_000
    wall_clock_budget: float | None = None  # seconds; None = unlimited
    seed: int = 0
    debug: bool = False  # cross-check every acceptance against a full evaluation

    def __post_init__(self):
        for name in ("lra_total_iteration", "mga_max_generation"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")
        for name in ("switching_tolerance", "mutation_tolerance"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1")
        if self.mini_batch_size < 2 or self.mini_batch_size % 2:
            raise DomainError("mini_batch_size must be an even integer >= 2")
        if self.wall_clock_budget is not None and self.wall_clock_budget < 0:
            raise DomainError("wall_clock_budget must be >= 0")
        check_seed(self.seed)


@dataclass(frozen=True)
class TracePoint:
    elapsed: float
    best_score: Fraction
    phase: str
    iteration: int


@dataclass
class SolveResult:
    best_solution: Solution
    best_report: EvaluationReport
    trace: list[TracePoint]
    terminated_by: TerminatedBy
    algorithm: str = ""
    elapsed: float = 0.0
    iterations: int = 0

    @property
    def score(self) -> Fraction:
        return self.best_report.score


class Clock:
    def __init__(self, budget: float | None, start: float | None = None):
        self.start = time.perf_counter() if start is None else start
        self.deadline = None if budget is None else self.start + budget

    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def expired(self) -> bool:
        return self.deadline is not None and time.perf_counter() >= self.deadline


class Recorder:
    """Collects trace points; iterations are offset so phases concatenate."""

    def __init__(self, state: SearchState, clock: Clock, debug: bool = False):
        self.state = state
        self.clock = clock
        self.debug = debug
        self.trace: list[TracePoint] = []
        self.offset = 0

    def point(self, phase: str, iteration: int) -> None:
        self.trace.append(TracePoint(self.clock.elapsed(), self.state.score, phase, self.offset + iteration))

    def check(self) -> None:
        if not self.debug:
            return
        report = evaluate(self.state.instance, self.state.solution())
        if report.hcv.total or report.score != self.state.score:
            raise IntegrityError(
                f"incremental state diverged: hcv={report.hcv.as_dict()} "
                f"score={report.score} state={self.state.score}"
            )


def _finish(rec: Recorder, terminated: TerminatedBy, algorithm: str, iterations: int) -> SolveResult:
    state = rec.state
    solution = state.solution()
    report = evaluate(state.instance, solution)
    if report.score != state.score or report.hcv.total:
        raise IntegrityError("best solution does not re-evaluate to its tracked score")
    return SolveResult(solution, report, rec.trace, terminated, algorithm, rec.clock.elapsed(), iterations)


def _run_lra(rec: Recorder, config: SolverConfig, rng: random.Random) -> tuple[TerminatedBy, int]:
    state, clock = rec.state, rec.clock
    t = state.t
    n = len(state.fac)
    rec.point(PHASE_LRA, 0)
    stale = 0
    it = 0
    terminated = TerminatedBy.ITERATION_BUDGET
    while it < config.lra_total_iteration:
        if clock.expired():
            terminated = TerminatedBy.WALL_CLOCK
            break
        it += 1
        improved = False
        if n:
            e = rng.randrange(n)
            current = state.fac[e]
            best_f, best_total = current, state.total
            for f in t.eligible[t.layout[e]]:
                if f == current:
                    continue
                total = state.replace_total(e, f)
                if total is not None and total > best_total:
                    best_f, best_total = f, total
            if best_f != current:
                state.commit(state.propose(((e, best_f),)))
                rec.check()
                rec.point(PHASE_LRA, it)
                improved = True
        stale = 0 if improved else stale + 1
        if stale >= config.switching_tolerance:
            terminated = TerminatedBy.SWITCHING_TOLERANCE
            break
    rec.point(PHASE_LRA, it)
    return terminated, it


def _run_mga(rec: Recorder, config: SolverConfig, rng: random.Random) -> tuple[TerminatedBy, int]:
    state, clock = rec.state, rec.clock
    t = state.t
    n = len(state.fac)
    k = min(config.mini_batch_size, n)
    k -= k % 2
    active = False
    rec.point(PHASE_CROSSOVER, 0)
    stale = 0
    gen = 0
    terminated = TerminatedBy.ITERATION_BUDGET
    while gen < config.mga_max_generation:
        if clock.expired():
            terminated = TerminatedBy.WALL_CLOCK
            break
        gen += 1
        batch = rng.sample(range(n), k) if k else []
        changes: list[tuple[int, int]] = []
        for i in range(0, len(batch), 2):
            e1, e2 = batch[i], batch[i + 1]
            a, b = state.fac[e1], state.fac[e2]
            if a == b:
                continue
            if b not in t.eligible_set[t.layout[e1]] or a not in t.eligible_set[t.layout[e2]]:
                continue
            trial = changes + [(e1, b), (e2, a)]
            if state.propose(trial) is not None:
                changes = trial
        if active and n:
            elem = rng.choice(batch) if batch else rng.randrange(n)
            changes.append((elem, rng.choice(t.eligible[t.layout[elem]])))
        improved = False
        if changes:
            move = state.propose(changes)
            if move is not None and move.total > state.total:
                state.commit(move)
                rec.check()
                rec.point(PHASE_MUTATION if active else PHASE_CROSSOVER, gen)
                improved = True
        if improved:
            stale = 0
        else:
            stale += 1
            if not active and stale >= config.mutation_tolerance:
                active = True
                rec.point(PHASE_MUTATION, gen)
    rec.point(PHASE_MUTATION if active else PHASE_CROSSOVER, gen)
    return terminated, gen


def _prepare(instance: Instance, start: Solution, config: SolverConfig, clock_start: float | None = None):
    state = SearchState.from_solution(instance, start)
    clock = Clock(config.wall_clock_budget, clock_start)
    return Recorder(state, clock, config.debug), random.Random(config.seed)


def lra(instance: Instance, start: Solution, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Local repair: best single-element faculty replacement at random elements.

    Stops after ``lra_total_iteration`` element selections, after
    ``switching_tolerance`` consecutive selections without improvement, or
    when the wall-clock budget runs out.
    """
    rec, rng = _prepare(instance, start, config)
    terminated, it = _run_lra(rec, config, rng)
    return _finish(rec, terminated, "lra", it)


def mga(instance: Instance, start: Solution, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Modified GA: mini-batch faculty swaps, plus mutation once progress stalls.

    Mutation switches on permanently after ``mutation_tolerance``
    consecutive generations without improvement.
    """
    rec, rng = _prepare(instance, start, config)
    terminated, gen = _run_mga(rec, config, rng)
    return _finish(rec, terminated, "mga", gen)


def hybrid(instance: Instance, start: Solution, config: SolverConfig = SolverConfig()) -> SolveResult:
    """LRA until it stalls or exhausts its budget, then MGA from its result.

    The two phases share one random stream and one clock; the returned trace
    is the concatenation of both, with MGA iterations numbered after the
    LRA ones.
    """
    rec, rng = _prepare(instance, start, config)
    terminated, it = _run_lra(rec, config, rng)
    total = it
    if terminated is not TerminatedBy.WALL_CLOCK and config.mga_max_generation > 0:
        logger.debug("hybrid: LRA stopped (%s) at %d, switching to MGA", terminated.value, it)
        rec.offset = it
        terminated, gen = _run_mga(rec, config, rng)
        total += gen
    return _finish(rec, terminated, "hybrid", total)


def lra_phase_score(result: SolveResult) -> Fraction:
    """Best score reached before the first MGA trace point."""
    best = Fraction(0)
    for p in result.trace:
        if p.phase != PHASE_LRA:
            break
        best = p.best_score
    return best
