"""Reference metaheuristics run from the same start and evaluator as the hybrid.

These are standard textbook formulations over the single-element
faculty-replacement neighbourhood:

* stochastic hill climbing (SHC): accept a random neighbour iff it improves;
* simulated annealing (SA): also accept worsening neighbours with
  probability ``exp(delta / T)``, geometric cooling;
* tabu search (TS): best admissible neighbour each iteration, reversal of
  recent moves forbidden unless it beats the best score;
* genetic algorithm (GA): population of feasible solutions, tournament
  selection, one-point crossover with repair, per-element mutation,
  one elite;
* memetic algorithm: the GA plus a short hill climb on every offspring.

Every baseline reports best-so-far, so its trace never decreases.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .model import Instance, Solution
from .seeding import check_seed
from .solvers import Clock, Recorder, SolveResult, TerminatedBy, _finish
from .state import SearchState


class Algorithm(str, Enum):
    GA = "ga"
    MEMETIC = "memetic"
    SHC = "shc"
    SA = "sa"
    TABU = "tabu"


@dataclass(frozen=True)
class BaselineConfig:
    algorithm: Algorithm = Algorithm.SHC
    population_size: int = 50
    crossover_rate: float = 0.9
    mutation_rate: float = 0.05
    tournament_size: int = 2
    local_search_steps: int = 50
    initial_temperature: float = 0.05
    cooling_rate: float = 0.999
    tabu_tenure: int = 50
    max_iterations: int = 500_000
    wall_clock_budget: float | None = None
    seed: int = 0
    debug: bool = False

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        for name in ("crossover_rate", "mutation_rate", "cooling_rate"):
            if not (0 <= getattr(self, name) <= 1):
                raise DomainError(f"{name} must lie in [0, 1]")
        if self.initial_temperature <= 0:
            raise DomainError("initial_temperature must be > 0")
        if self.tabu_tenure < 1:
            raise DomainError("tabu_tenure must be >= 1")
        if self.population_size < 2:
            raise DomainError("population_size must be >= 2")
        if self.tournament_size < 1:
            raise DomainError("tournament_size must be >= 1")
        if self.max_iterations < 0 or self.local_search_steps < 0:
            raise DomainError("budgets must be >= 0")
        if self.wall_clock_budget is not None and self.wall_clock_budget < 0:
            raise DomainError("wall_clock_budget must be >= 0")
        check_seed(self.seed)


def _random_neighbour(state: SearchState, rng: random.Random) -> tuple[int, int] | None:
    n = len(state.fac)
    if not n:
        return None
    e = rng.randrange(n)
    options = state.t.eligible[state.t.layout[e]]
    if len(options) < 2:
        return e, state.fac[e]
    f = rng.choice(options)
    while f == state.fac[e]:
        f = rng.choice(options)
    return e, f


def _hill_climb(state: SearchState, rng: random.Random, steps: int) -> int:
    """Run ``steps`` random-neighbour attempts; returns the number accepted."""
    accepted = 0
    for _ in range(steps):
        nb = _random_neighbour(state, rng)
        if nb is None:
            break
        total = state.replace_total(*nb)
        if total is not None and total > state.total:
            state.apply(*nb)
            accepted += 1
    return accepted


def _shc(rec: Recorder, cfg: BaselineConfig, rng: random.Random, phase: str):
    state = rec.state
    for it in range(1, cfg.max_iterations + 1):
        if rec.clock.expired():
            return TerminatedBy.WALL_CLOCK, it - 1
        nb = _random_neighbour(state, rng)
        if nb is None:
            continue
        total = state.replace_total(*nb)
        if total is not None and total > state.total:
            state.apply(*nb)
            rec.check()
            rec.point(phase, it)
    return TerminatedBy.ITERATION_BUDGET, cfg.max_iterations


def _sa(rec: Recorder, cfg: BaselineConfig, rng: random.Random, phase: str):
    # The recorder tracks the incumbent; best-so-far lives in a separate copy.
    current = rec.state
    best = current.copy()
    denom = current.t.denominator
    temp = cfg.initial_temperature
    best_rec = Recorder(best, rec.clock, rec.debug)
    best_rec.trace = rec.trace
    for it in range(1, cfg.max_iterations + 1):
        if rec.clock.expired():
            rec.state = best
            return TerminatedBy.WALL_CLOCK, it - 1
        nb = _random_neighbour(current, rng)
        if nb is not None:
            total = current.replace_total(*nb)
            if total is not None and total != current.total:
                diff = total - current.total
                if diff > 0:
                    accept = True
                else:
                    p = math.exp(diff / denom / temp) if temp > 0 else 0.0
                    accept = p > 0.0 and rng.random() < p
                if accept:
                    current.apply(*nb)
                    if current.total > best.total:
                        best = current.copy()
                        best_rec.state = best
                        best_rec.check()
                        best_rec.point(phase, it)
        temp *= cfg.cooling_rate
    rec.state = best
    return TerminatedBy.ITERATION_BUDGET, cfg.max_iterations


def _tabu(rec: Recorder, cfg: BaselineConfig, rng: random.Random, phase: str):
    current = rec.state
    best = current.copy()
    t = current.t
    n = len(current.fac)
    tabu_until: dict[tuple[int, int], int] = {}
    best_rec = Recorder(best, rec.clock, rec.debug)
    best_rec.trace = rec.trace
    for it in range(1, cfg.max_iterations + 1):
        if rec.clock.expired():
            rec.state = best
            return TerminatedBy.WALL_CLOCK, it - 1
        chosen = None
        chosen_total = None
        # random scan start so ties do not always favour low element indices
        offset = rng.randrange(n) if n else 0
        for k in range(n):
            e = (offset + k) % n
            cur_f = current.fac[e]
            for f in t.eligible[t.layout[e]]:
                if f == cur_f:
                    continue
                total = current.replace_total(e, f)
                if total is None:
                    continue
                if tabu_until.get((e, f), 0) >= it and total <= best.total:
                    continue
                if chosen_total is None or total > chosen_total:
                    chosen, chosen_total = (e, f), total
        if chosen is None:
            continue
        e, f = chosen
        tabu_until[(e, current.fac[e])] = it + cfg.tabu_tenure
        current.apply(e, f)
        if current.total > best.total:
            best = current.copy()
            best_rec.state = best
            best_rec.check()
            best_rec.point(phase, it)
    rec.state = best
    return TerminatedBy.ITERATION_BUDGET, cfg.max_iterations


def _repair_child(parent_state: SearchState, genes: list[int], rng: random.Random) -> SearchState | None:
    """Rebuild ``genes`` as a feasible state, redrawing offending elements."""
    t = parent_state.t
    nf = t.n_faculty
    mask = [0] * nf
    cred = [0] * nf
    out = list(genes)
    for e, f in enumerate(genes):
        s = t.layout[e]
        sm, sc = t.sec_mask[s], t.sec_credit[s]
        if f in t.eligible_set[s] and not mask[f] & sm and cred[f] + sc <= t.fac_max[f]:
            pick = f
        else:
            options = [g for g in t.eligible[s] if not mask[g] & sm and cred[g] + sc <= t.fac_max[g]]
            if not options:
                return None
            pick = rng.choice(options)
        out[e] = pick
        mask[pick] |= sm
        cred[pick] += sc
    return SearchState(parent_state.instance, out)


def _mutate(state: SearchState, rng: random.Random, rate: float) -> None:
    t = state.t
    for e in range(len(state.fac)):
        if rng.random() < rate:
            state.apply(e, rng.choice(t.eligible[t.layout[e]]))


def _evolve(rec: Recorder, cfg: BaselineConfig, rng: random.Random, phase: str, memetic: bool):
    start = rec.state
    best = start.copy()
    best_rec = Recorder(best, rec.clock, rec.debug)
    best_rec.trace = rec.trace
    n = len(start.fac)
    population = [start.copy()]
    while len(population) < cfg.population_size:
        member = start.copy()
        _mutate(member, rng, max(cfg.mutation_rate, 0.1))
        population.append(member)

    def tournament() -> SearchState:
        picks = [population[rng.randrange(len(population))] for _ in range(cfg.tournament_size)]
        return max(picks, key=lambda s: s.total)

    for gen in range(1, cfg.max_iterations + 1):
        if rec.clock.expired():
            rec.state = best
            return TerminatedBy.WALL_CLOCK, gen - 1
        elite = max(population, key=lambda s: s.total)
        offspring = [elite]
        while len(offspring) < cfg.population_size:
            if rec.clock.expired():
                break
            p1, p2 = tournament(), tournament()
            if n > 1 and rng.random() < cfg.crossover_rate:
                cut = rng.randrange(1, n)
                child = _repair_child(p1, p1.fac[:cut] + p2.fac[cut:], rng)
                if child is None:
                    child = p1.copy()
            else:
                child = p1.copy()
            _mutate(child, rng, cfg.mutation_rate)
            if memetic:
                _hill_climb(child, rng, cfg.local_search_steps)
            offspring.append(child)
        population = offspring
        leader = max(population, key=lambda s: s.total)
        if leader.total > best.total:
            best = leader.copy()
            best_rec.state = best
            best_rec.check()
            best_rec.point(phase, gen)
    rec.state = best
    return TerminatedBy.ITERATION_BUDGET, cfg.max_iterations


_RUNNERS = {
    Algorithm.SHC: _shc,
    Algorithm.SA: _sa,
    Algorithm.TABU: _tabu,
}


def run_baseline(instance: Instance, start: Solution, config: BaselineConfig = BaselineConfig()) -> SolveResult:
    state = SearchState.from_solution(instance, start)
    rec = Recorder(state, Clock(config.wall_clock_budget), config.debug)
    rng = random.Random(config.seed)
    phase = config.algorithm.value
    rec.point(phase, 0)
    if config.algorithm in (Algorithm.GA, Algorithm.MEMETIC):
        terminated, it = _evolve(rec, config, rng, phase, config.algorithm is Algorithm.MEMETIC)
    else:
        terminated, it = _RUNNERS[config.algorithm](rec, config, rng, phase)
    rec.point(phase, it)
    return _finish(rec, terminated, phase, it)
