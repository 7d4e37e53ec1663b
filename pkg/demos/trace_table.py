"""Print the hybrid's score-vs-time trace as a text chart and save it as CSV.

The phase column shows where LRA stalls and the genetic phase takes over.
No plotting library is needed; the CSV loads straight into any plotting tool.
Run with ``python demos/trace_table.py [out.csv]``.
"""

from __future__ import annotations

import sys

from ucap import GeneratorSpec, SolverConfig, generate_instance, hybrid, initial_solution, save_trace

instance = generate_instance(GeneratorSpec(), seed=5)
start = initial_solution(instance, seed=5)
result = hybrid(instance, start, SolverConfig(seed=5))

lo = float(result.trace[0].best_score)
hi = float(result.trace[-1].best_score)
width = 50

for point in result.trace:
    score = float(point.best_score)
    bar = "#" * (1 + int((score - lo) / max(hi - lo, 1e-9) * (width - 1)))
    print(f"{point.iteration:>9d}  {score:.4f}  {point.phase:14s} {bar}")

out = sys.argv[1] if len(sys.argv) > 1 else "hybrid_trace.csv"
save_trace(result.trace, out)
print(f"wrote {len(result.trace)} points to {out}")
