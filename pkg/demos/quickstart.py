"""Quickstart: generate an instance, build a start, run the hybrid, inspect the result.

Run with ``python demos/quickstart.py``. Takes about five seconds.
"""

from __future__ import annotations

from ucap import GeneratorSpec, SolverConfig, evaluate, generate_instance, hybrid, initial_solution
from ucap.solvers import lra_phase_score

# A synthetic department: 40 faculty, 80 theory sections, 25 labs.
spec = GeneratorSpec()
instance = generate_instance(spec, seed=1)
print(f"{len(instance.faculty)} faculty, {len(instance.sections)} sections, load factor {spec.load_factor:.2f}")

# Every search starts from a feasible solution built by randomized greedy.
start = initial_solution(instance, seed=1)
report = evaluate(instance, start)
print(f"start score {float(report.score):.4f}, hard violations {report.hcv.total}")

# The hybrid: local repair until it stalls, then the mini-batch genetic phase.
result = hybrid(instance, start, SolverConfig(seed=1))
print(f"LRA phase reached {float(lra_phase_score(result)):.4f}")
print(f"final score {float(result.score):.4f} after {result.iterations} iterations "
      f"({result.elapsed:.1f}s, stopped by {result.terminated_by.value})")

# Who carries the largest soft penalty?
worst = max(result.best_report.per_faculty, key=lambda r: r.penalty_sum)
print(f"most penalised: {worst.faculty_id} with penalty {float(worst.penalty_sum):.2f}")

# The trace is what a score-vs-time plot is drawn from.
for point in result.trace[:5]:
    print(f"  t={point.elapsed:.3f}s  score={float(point.best_score):.4f}  {point.phase}")
