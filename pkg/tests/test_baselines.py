import pytest

from conftest import small_instance
from oracles import enumerate_optimum
from ucap.baselines import Algorithm, BaselineConfig, run_baseline
from ucap.constraints import count_hard_violations
from ucap.errors import DomainError, InfeasibleStartError
from ucap.evaluation import evaluate
from ucap.model import Solution
from ucap.seeding import initial_solution

QUICK = {
    Algorithm.SHC: 20_000,
    Algorithm.SA: 20_000,
    Algorithm.TABU: 300,
    Algorithm.GA: 40,
    Algorithm.MEMETIC: 20,
}


def _cfg(algo, **kw):
    return BaselineConfig(algorithm=algo, max_iterations=QUICK[algo], debug=True, **kw)


def test_config_defaults_and_validation():
    cfg = BaselineConfig()
    assert (cfg.population_size, cfg.crossover_rate, cfg.mutation_rate) == (50, 0.9, 0.05)
    assert (cfg.initial_temperature, cfg.cooling_rate, cfg.tabu_tenure) == (0.05, 0.999, 50)
    with pytest.raises(DomainError):
        BaselineConfig(crossover_rate=1.5)
    with pytest.raises(DomainError):
        BaselineConfig(initial_temperature=0)
    with pytest.raises(DomainError):
        BaselineConfig(tabu_tenure=0)
    with pytest.raises(ValueError):
        BaselineConfig(algorithm="pso")


def test_shc_without_alternatives_returns_start(forced_instance):
    start = initial_solution(forced_instance, 0)
    res = run_baseline(forced_instance, start, _cfg(Algorithm.SHC))
    assert res.best_solution == start


def test_cold_sa_matches_shc(full_instance):
    start = initial_solution(full_instance, 4)
    shc = run_baseline(full_instance, start, BaselineConfig(algorithm="shc", max_iterations=30_000, seed=5))
    sa = run_baseline(
        full_instance,
        start,
        BaselineConfig(algorithm="sa", max_iterations=30_000, seed=5, initial_temperature=1e-300),
    )
    assert sa.best_solution == shc.best_solution
    assert [(p.best_score, p.iteration) for p in sa.trace] == [(p.best_score, p.iteration) for p in shc.trace]


@pytest.mark.parametrize("algo", list(Algorithm))
def test_feasible_monotone_deterministic(algo, full_instance):
    start = initial_solution(full_instance, 1)
    a = run_baseline(full_instance, start, _cfg(algo, seed=3))
    b = run_baseline(full_instance, start, _cfg(algo, seed=3))
    assert count_hard_violations(full_instance, a.best_solution).total == 0
    assert a.best_report == evaluate(full_instance, a.best_solution)
    scores = [p.best_score for p in a.trace]
    assert scores == sorted(scores)
    assert a.trace[0].best_score == evaluate(full_instance, start).score
    assert a.score >= a.trace[0].best_score
    assert a.best_solution == b.best_solution
    assert [p.best_score for p in b.trace] == scores


@pytest.mark.parametrize("algo", list(Algorithm))
def test_infeasible_start_rejected(algo):
    inst = small_instance(0)
    bad = Solution.from_positions(inst, [0] * len(inst.layout))
    with pytest.raises(InfeasibleStartError):
        run_baseline(inst, bad, _cfg(algo))


def test_brute_force_bound_and_sa_ts_reach_optimum():
    hits = {Algorithm.SA: 0, Algorithm.TABU: 0}
    for seed in range(20):
        inst = small_instance(100 + seed)
        best, _ = enumerate_optimum(inst)
        start = initial_solution(inst, seed)
        for algo in Algorithm:
            iters = {Algorithm.TABU: 2000, Algorithm.SA: 50_000}.get(algo, QUICK[algo])
            res = run_baseline(inst, start, BaselineConfig(algorithm=algo, seed=seed, max_iterations=iters))
            assert res.score <= best
            if algo in hits:
                hits[algo] += res.score == best
    assert hits[Algorithm.SA] >= 16 and hits[Algorithm.TABU] >= 16, hits
