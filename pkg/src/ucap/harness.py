"""Uniform entry point over all eight algorithms, and the comparison runner."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path

from . import io
from .baselines import Algorithm, BaselineConfig, run_baseline
from .model import Instance, Solution
from .solvers import SolveResult, SolverConfig, hybrid, lra, mga

logger = logging.getLogger(__name__)

SOLVERS = {"lra": lra, "mga": mga, "hybrid": hybrid}
ALGORITHMS = ("hybrid", "lra", "mga", "ga", "memetic", "shc", "sa", "tabu")
DISPLAY_NAMES = {
    "hybrid": "Proposed Hybrid Algorithm",
    "lra": "Local Repair Algorithm",
    "mga": "Modified Genetic Algorithm",
    "ga": "Genetic Algorithm",
    "memetic": "Memetic Algorithm",
    "shc": "Stochastic Hill Climbing",
    "sa": "Simulated Annealing",
    "tabu": "Tabu Search",
}


def _pick(cls, options: dict) -> dict:
    names = {f.name for f in fields(cls)}
    return {k: v for k, v in options.items() if k in names and v is not None}


def run_algorithm(
    instance: Instance,
    start: Solution,
    algorithm: str,
    *,
    seed: int = 0,
    wall_clock_budget: float | None = None,
    **options,
) -> SolveResult:
    """Run any algorithm by name; ``options`` are SolverConfig/BaselineConfig fields."""
    algorithm = algorithm.lower()
    if algorithm in SOLVERS:
        cfg = SolverConfig(seed=seed, wall_clock_budget=wall_clock_budget, **_pick(SolverConfig, options))
        return SOLVERS[algorithm](instance, start, cfg)
    try:
        algo = Algorithm(algorithm)
    except ValueError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}") from None
    cfg = BaselineConfig(
        algorithm=algo, seed=seed, wall_clock_budget=wall_clock_budget, **_pick(BaselineConfig, options)
    )
    return run_baseline(instance, start, cfg)


def _run_job(args):
    instance, start, name, seed, budget, options = args
    return run_algorithm(instance, start, name, seed=seed, wall_clock_budget=budget, **options)


def compare(
    instance: Instance,
    start: Solution,
    algorithms,
    *,
    seed: int = 0,
    wall_clock_budget: float | None = None,
    jobs: int = 1,
    **options,
) -> dict[str, SolveResult]:
    """Run every algorithm from the same start under the same budget."""
    algorithms = list(dict.fromkeys(a.lower() for a in algorithms))
    if len(algorithms) < 2:
        raise ValueError("compare needs at least two algorithms")
    jobs_args = [(instance, start, a, seed, wall_clock_budget, options) for a in algorithms]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_job, jobs_args))
    else:
        results = []
        for args in jobs_args:
            logger.info("running %s", args[2])
            results.append(_run_job(args))
    return dict(zip(algorithms, results))


def summary(result: SolveResult, **extra) -> dict:
    report = result.best_report
    return {
        "algorithm": result.algorithm,
        **extra,
        "final_score": float(report.score),
        "final_score_exact": str(report.score),
        "accuracy_pct": round(float(report.score) * 100, 4),
        "hcv": report.hcv.as_dict(),
        "per_faculty": report.as_dict()["per_faculty"],
        "wall_time_seconds": round(result.elapsed, 6),
        "terminated_by": result.terminated_by.value,
        "iterations": result.iterations,
        "trace_points": len(result.trace),
    }


def comparison_rows(results: dict[str, SolveResult]) -> list[dict]:
    return [
        {
            "algorithm": name,
            "name": DISPLAY_NAMES.get(name, name),
            "total_time_sec": round(r.elapsed, 3),
            "accuracy_pct": round(float(r.score) * 100, 2),
        }
        for name, r in results.items()
    ]


def format_comparison_markdown(rows: list[dict]) -> str:
    out = ["| Algorithm Name | Total Time Taken (sec) | Accuracy (%) |", "|---|---:|---:|"]
    for r in rows:
        out.append(f"| {r['name']} | {r['total_time_sec']:.3f} | {r['accuracy_pct']:.2f} |")
    return "\n".join(out) + "\n"


def write_result(result: SolveResult, out_dir: Path, stem: str, **extra) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    io.save_solution(result.best_solution, out_dir / f"{stem}solution.txt")
    io.save_trace(result.trace, out_dir / f"{stem}trace.csv")
    io.save_json(summary(result, **extra), out_dir / f"{stem}summary.json")


def write_comparison(results: dict[str, SolveResult], out_dir: Path, **extra) -> list[dict]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, r in results.items():
        write_result(r, out_dir, f"{name}_", **extra)
    rows = comparison_rows(results)
    with open(out_dir / "comparison.csv", "w", encoding="utf-8") as fh:
        fh.write("algorithm,total_time_sec,accuracy_pct\n")
        for r in rows:
            fh.write(f"{r['algorithm']},{r['total_time_sec']:.3f},{r['accuracy_pct']:.2f}\n")
    (out_dir / "comparison.md").write_text(format_comparison_markdown(rows), encoding="utf-8")
    return rows
