"""Faculty-to-section allocation: constraints, scoring, and search algorithms."""

from .baselines import Algorithm, BaselineConfig, run_baseline
from .constraints import (
    FacultySchedule,
    HardViolations,
    build_schedules,
    count_hard_violations,
    soft_penalties,
)
from .errors import (
    DomainError,
    FormatError,
    GenerationError,
    InfeasibleInstanceError,
    InfeasibleStartError,
    IntegrityError,
    UcapError,
)
from .evaluation import EvaluationReport, FacultyScore, evaluate, evaluate_delta
from .harness import compare, run_algorithm
from .io import load_instance, load_solution, save_instance, save_solution, save_trace
from .model import (
    Assignment,
    CourseSection,
    Faculty,
    Instance,
    Kind,
    PenaltyConfig,
    Solution,
    eligible_faculty,
    slot_day_period,
    slot_index,
)
from .seeding import GeneratorSpec, generate_instance, initial_solution
from .solvers import SolveResult, SolverConfig, TerminatedBy, TracePoint, hybrid, lra, mga

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "Assignment",
    "BaselineConfig",
    "CourseSection",
    "DomainError",
    "EvaluationReport",
    "Faculty",
    "FacultySchedule",
    "FacultyScore",
    "FormatError",
    "GenerationError",
    "GeneratorSpec",
    "HardViolations",
    "InfeasibleInstanceError",
    "InfeasibleStartError",
    "Instance",
    "IntegrityError",
    "Kind",
    "PenaltyConfig",
    "Solution",
    "SolveResult",
    "SolverConfig",
    "TerminatedBy",
    "TracePoint",
    "UcapError",
    "build_schedules",
    "compare",
    "count_hard_violations",
    "eligible_faculty",
    "evaluate",
    "evaluate_delta",
    "generate_instance",
    "hybrid",
    "initial_solution",
    "load_instance",
    "load_solution",
    "lra",
    "mga",
    "run_algorithm",
    "run_baseline",
    "save_instance",
    "save_solution",
    "save_trace",
    "slot_day_period",
    "slot_index",
    "soft_penalties",
]
