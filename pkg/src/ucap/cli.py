"""Command-line interface: ``ucap {generate,solve,compare,validate}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import io
from .errors import UcapError
from .evaluation import evaluate
from .harness import (
    ALGORITHMS,
    compare,
    format_comparison_markdown,
    run_algorithm,
    write_comparison,
    write_result,
)
from .seeding import GeneratorSpec, generate_instance, initial_solution

OUTPUT_ENV = "UCAP_OUTPUT_DIR"

# flag -> config field, shared by solve and compare
TUNING_FLAGS = (
    ("--lra-iters", "lra_total_iteration", int),
    ("--switching-tolerance", "switching_tolerance", int),
    ("--mga-generations", "mga_max_generation", int),
    ("--mini-batch", "mini_batch_size", int),
    ("--mutation-tolerance", "mutation_tolerance", int),
    ("--population", "population_size", int),
    ("--crossover-rate", "crossover_rate", float),
    ("--mutation-rate", "mutation_rate", float),
    ("--local-search-steps", "local_search_steps", int),
    ("--t0", "initial_temperature", float),
    ("--cooling", "cooling_rate", float),
    ("--tenure", "tabu_tenure", int),
    ("--iterations", "max_iterations", int),
)

GENERATOR_FLAGS = (
    ("--n-faculty", "n_faculty", int),
    ("--n-theory", "n_theory_sections", int),
    ("--n-lab", "n_lab_sections", int),
    ("--density", "preference_density", float),
    ("--senior-fraction", "senior_fraction", float),
)


def _default_out() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "ucap-out"))


def _add_tuning(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("algorithm parameters")
    for flag, dest, typ in TUNING_FLAGS:
        g.add_argument(flag, dest=dest, type=typ, default=None)
    g.add_argument("--config", type=Path, help="JSON file of SolverConfig/BaselineConfig fields")
    g.add_argument("--debug", action="store_true", help="cross-check every acceptance with a full evaluation")


def _tuning(args) -> dict:
    options = {}
    if args.config is not None:
        options.update(json.loads(args.config.read_text(encoding="utf-8")))
    for _, dest, _ in TUNING_FLAGS:
        value = getattr(args, dest)
        if value is not None:
            options[dest] = value
    if args.debug:
        options["debug"] = True
    return options


def _start(instance, args):
    if getattr(args, "start", None) is not None:
        return io.load_solution(args.start)
    return initial_solution(instance, args.seed)


def cmd_generate(args) -> int:
    data = {}
    if args.spec is not None:
        data = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    for _, dest, _ in GENERATOR_FLAGS:
        value = getattr(args, dest)
        if value is not None:
            data[dest] = value
    spec = GeneratorSpec.from_dict(data)
    instance = generate_instance(spec, args.seed)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    io.save_instance(instance, out)
    print(f"wrote {out}: {len(instance.sections)} sections, {instance.n_faculty} faculty")
    return 0


def cmd_solve(args) -> int:
    instance = io.load_instance(args.instance)
    start = _start(instance, args)
    result = run_algorithm(
        instance, start, args.algo, seed=args.seed, wall_clock_budget=args.time_budget, **_tuning(args)
    )
    out = Path(args.out_dir) if args.out_dir else _default_out()
    write_result(result, out, "", seed=args.seed, instance=str(args.instance))
    print(
        f"{args.algo}: score {float(result.score):.6f} ({result.terminated_by.value}, "
        f"{result.elapsed:.2f}s) -> {out}"
    )
    return 0


def cmd_compare(args) -> int:
    instance = io.load_instance(args.instance)
    start = _start(instance, args)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    results = compare(
        instance,
        start,
        algos,
        seed=args.seed,
        wall_clock_budget=args.time_budget,
        jobs=args.jobs,
        **_tuning(args),
    )
    out = Path(args.out_dir) if args.out_dir else _default_out()
    out.mkdir(parents=True, exist_ok=True)
    io.save_solution(start, out / "initial_solution.txt")
    rows = write_comparison(results, out, seed=args.seed, instance=str(args.instance))
    print(format_comparison_markdown(rows), end="")
    return 0


def cmd_validate(args) -> int:
    instance = io.load_instance(args.instance)
    solution = io.load_solution(args.solution)
    report = evaluate(instance, solution)
    print(json.dumps(report.as_dict(), indent=2))
    if report.hcv.total:
        bad = [k for k, v in report.hcv.as_dict().items() if v and k != "total"]
        print(f"INFEASIBLE: {', '.join(bad)}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ucap", description="University course allocation solvers.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic instance")
    p.add_argument("--spec", type=Path, help="JSON file of GeneratorSpec fields")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    for flag, dest, typ in GENERATOR_FLAGS:
        p.add_argument(flag, dest=dest, type=typ, default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="run one algorithm")
    p.add_argument("instance", type=Path)
    p.add_argument("--algo", default="hybrid", choices=ALGORITHMS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", type=Path, help="start solution file (default: seeded initial solution)")
    p.add_argument("--time-budget", type=float, default=None, help="wall-clock budget in seconds")
    p.add_argument("--out-dir", default=None, help=f"output directory (default ${OUTPUT_ENV} or ./ucap-out)")
    _add_tuning(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="run several algorithms from one shared start")
    p.add_argument("instance", type=Path)
    p.add_argument("--algos", default=",".join(a for a in ALGORITHMS if a not in ("lra", "mga")))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", type=Path)
    p.add_argument("--time-budget", type=float, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", default=None)
    _add_tuning(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("validate", help="evaluate a solution file")
    p.add_argument("instance", type=Path)
    p.add_argument("solution", type=Path)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UcapError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
