import random

import pytest

from conftest import member, section
from ucap.constraints import count_hard_violations
from ucap.errors import DomainError, GenerationError
from ucap.model import Instance, check_well_formed
from ucap.seeding import GeneratorSpec, generate_instance, initial_solution


def test_forced_theory_assignment():
    inst = Instance((section("S1", "X"),), (member("A", {"X"}), member("B", {"Y"})))
    sol = initial_solution(inst, 0)
    assert [a.faculty_id for a in sol] == ["A"]


def test_forced_lab_pair():
    inst = Instance((section("L1", "X", "L"),), (member("A", {"X"}), member("B", {"X"}), member("C", {"Y"})))
    for seed in range(5):
        assert sorted(a.faculty_id for a in initial_solution(inst, seed)) == ["A", "B"]


def test_small_seeded_instance_is_hard_feasible():
    spec = GeneratorSpec(n_faculty=8, n_theory_sections=16, n_lab_sections=4)
    inst = generate_instance(spec, 20)
    assert len(inst.sections) == 20
    for seed in range(10):
        sol = initial_solution(inst, seed)
        check_well_formed(inst, sol)
        hcv = count_hard_violations(inst, sol)
        assert hcv.as_dict() == {k: 0 for k in hcv.as_dict()}


def test_initial_solution_deterministic_per_seed():
    inst = generate_instance(GeneratorSpec(), 1)
    assert initial_solution(inst, 99) == initial_solution(inst, 99)
    assert len({initial_solution(inst, s) for s in range(5)}) > 1


def test_initial_solution_reports_unsatisfiable_section():
    # both sections share slot 0 and only A may teach them
    inst = Instance((section("S1", "X"), section("S2", "X")), (member("A", {"X"}),))
    with pytest.raises(GenerationError, match="S[12]"):
        initial_solution(inst, 0, max_restarts=5)


def test_generation_pigeonhole_error():
    with pytest.raises(GenerationError):
        generate_instance(GeneratorSpec(n_faculty=1, n_theory_sections=0, n_lab_sections=1), 0)


def test_generation_is_deterministic():
    spec = GeneratorSpec()
    assert generate_instance(spec, 5) == generate_instance(spec, 5)
    assert generate_instance(spec, 5) != generate_instance(spec, 6)


def test_spec_validation():
    with pytest.raises(DomainError):
        GeneratorSpec(preference_density=0)
    with pytest.raises(DomainError):
        GeneratorSpec(n_faculty=0)
    with pytest.raises(DomainError):
        generate_instance(GeneratorSpec(), -1)
    with pytest.raises(DomainError):
        GeneratorSpec.from_dict({"bogus": 1})
    spec = GeneratorSpec.from_dict(GeneratorSpec(n_faculty=9).to_dict())
    assert spec == GeneratorSpec(n_faculty=9)


def test_default_spec_scale():
    spec = GeneratorSpec()
    inst = generate_instance(spec, 3)
    assert len(inst.sections) == 105 and inst.n_faculty == 40
    assert spec.load_factor <= 0.75


def test_random_specs_in_documented_range_all_load():
    rng = random.Random(2024)
    done = 0
    while done < 100:
        nt, nl = rng.randint(0, 120), rng.randint(0, 40)
        spec = GeneratorSpec(
            n_faculty=rng.randint(2, 60),
            n_theory_sections=nt or (0 if nl else 1),
            n_lab_sections=nl,
            preference_density=rng.uniform(0.05, 1.0),
            senior_fraction=rng.random(),
        )
        if spec.load_factor > 0.75:
            continue
        inst = generate_instance(spec, rng.getrandbits(64))
        sol = initial_solution(inst, done)
        assert count_hard_violations(inst, sol).total == 0
        done += 1
