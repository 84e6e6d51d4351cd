"""Domain catalog tests: generators, goal oracles, reference programs."""

import random

import pytest

from planprog.domains import (DOMAINS, build_suite, generate_instance,
                              reference_program, reverse_example_problem,
                              reverse_example_program, training_problem)
from planprog.fastexec import fast_run
from planprog.program import HaltReason, run

ALL = sorted(DOMAINS)


class TestCatalog:
    def test_the_eight_domains(self):
        assert ALL == ["corridor", "fibonacci", "find", "gripper", "reverse",
                       "select", "sorting", "tsum"]

    def test_line_and_pointer_budgets(self):
        budgets = {name: (spec.lines, spec.pointers)
                   for name, spec in DOMAINS.items()}
        assert budgets == {
            "tsum": (5, 2), "corridor": (7, 2), "reverse": (7, 3),
            "select": (7, 3), "find": (7, 3), "fibonacci": (8, 3),
            "gripper": (8, 4), "sorting": (9, 3)}

    def test_validation_suite_sizes(self):
        sizes = {name: len(spec.validation_sizes)
                 for name, spec in DOMAINS.items()}
        assert sizes == {
            "tsum": 44709, "corridor": 1000, "reverse": 50, "select": 50,
            "find": 50, "fibonacci": 33, "gripper": 1000, "sorting": 20}


def _mid_size(name):
    # domains with a curated training set (empty size schedule) still have a
    # seeded generator; exercise it at a small validation size
    spec = DOMAINS[name]
    return spec.training_sizes[-1] if spec.training_sizes else spec.validation_sizes[4]


class TestGenerators:
    @pytest.mark.parametrize("name", ALL)
    def test_deterministic(self, name):
        size = _mid_size(name)
        a = generate_instance(name, size, seed=3)
        b = generate_instance(name, size, seed=3)
        assert a == b

    @pytest.mark.parametrize("name", ALL)
    def test_seed_varies_values_for_random_domains(self, name):
        insts = {generate_instance(name, _mid_size(name), seed=s).init
                 for s in range(6)}
        if name in ("reverse", "select", "find", "sorting"):
            assert len(insts) > 1
        else:
            assert len(insts) == 1  # closed-form domains ignore the seed

    @pytest.mark.parametrize("name", ALL)
    def test_size_out_of_range(self, name):
        spec = DOMAINS[name]
        smallest = (spec.training_sizes[0] if spec.training_sizes
                    else spec.validation_sizes[0])
        with pytest.raises(ValueError):
            generate_instance(name, smallest - 2)


class TestGoalOracles:
    """Each generated goal must match an independent recomputation."""

    def test_tsum_closed_form(self):
        for t in (1, 3, 10, 250):
            inst = generate_instance("tsum", t)
            assert inst.goal == {0: sum(range(1, t + 1))}
            assert inst.init == (0, t)

    def test_corridor(self):
        inst = generate_instance("corridor", 9)
        assert inst.goal == {0: 9}
        assert inst.space.bounds[0] == (0, 9)

    def test_reverse(self):
        inst = generate_instance("reverse", 6, seed=4)
        values = list(inst.init)
        assert inst.goal == dict(enumerate(values[::-1]))
        assert inst.ptr_init == {1: 5}

    def test_select_minimum(self):
        inst = generate_instance("select", 7, seed=4)
        values = list(inst.init[1:])
        assert inst.init[0] == values[0]
        assert inst.goal == {0: min(values)}

    def test_find_zero_count(self):
        inst = generate_instance("find", 7, seed=4)
        values = list(inst.init[2:])
        assert inst.init[:2] == (0, 0)
        assert values[-1] == 0  # the terminator is itself a counted zero
        assert inst.goal == {0: values.count(0)}
        assert all(v >= 0 for v in values)

    def test_fibonacci_recurrence(self):
        def fib(t):
            a, b = 1, 1
            for _ in range(t - 2):
                a, b = b, a + b
            return b

        for t in (1, 2, 3, 8, 30):
            inst = generate_instance("fibonacci", t)
            assert inst.goal == {1: fib(t)}

    def test_gripper_all_moved(self):
        inst = generate_instance("gripper", 5)
        assert inst.init == (0,) * 6
        assert inst.goal == {i: 1 for i in range(1, 6)}
        assert inst.space.bounds[0] == (0, 1)
        assert all(inst.space.bounds[i] == (0, 2) for i in range(1, 6))

    def test_sorting_sorted_copy(self):
        inst = generate_instance("sorting", 8, seed=4)
        assert inst.goal == dict(enumerate(sorted(inst.init)))


class TestReferencePrograms:
    @pytest.mark.parametrize("name", ALL)
    def test_solves_training_sizes_with_detection(self, name):
        spec = DOMAINS[name]
        program = reference_program(name)
        for size in spec.training_sizes:
            for seed in (0, 1):
                inst = spec.generate(size, seed)
                rec = run(program, inst, detect_revisit=True)
                assert rec.halt is HaltReason.END_GOAL, (name, size, seed)

    @pytest.mark.parametrize("name", ALL)
    def test_solves_validation_sample(self, name):
        spec = DOMAINS[name]
        program = reference_program(name)
        rng = random.Random(name)
        sample = rng.sample(list(spec.validation_sizes),
                            min(25, len(spec.validation_sizes)))
        for size in sample:
            rec = fast_run(program, spec.generate(size, seed=1))
            assert rec.halt is HaltReason.END_GOAL, (name, size)

    def test_budgets_respected_except_sorting(self):
        for name, spec in DOMAINS.items():
            n = len(reference_program(name))
            if name == "sorting":
                assert n == spec.lines + 2  # known to exceed its budget
            else:
                assert n <= spec.lines


class TestSuites:
    @pytest.mark.parametrize("name", ALL)
    def test_training_and_validation(self, name):
        train, validation = build_suite(name, validation_count=10, seed=0)
        assert 1 <= len(train) <= 10
        assert len(validation) == 10
        for inst in train + validation:
            assert inst.domain == name

    def test_validation_covers_full_range_by_default(self):
        _, validation = build_suite("fibonacci")
        assert len(validation) == 33

    def test_deterministic(self):
        a = build_suite("reverse", seed=5)
        b = build_suite("reverse", seed=5)
        assert a == b

    def test_training_validation_values_disjoint(self):
        train, validation = build_suite("sorting", seed=0)
        vals = {inst.init for inst in validation}
        assert all(inst.init not in vals for inst in train)

    def test_training_problem(self):
        problem = training_problem("reverse")
        assert problem.pointer_count == 3
        assert [a.name for a in problem.actions] == ["swap"]
        assert 1 <= len(problem.instances) <= 10


class TestWorkedExample:
    def test_program_solves_both_lists(self):
        problem = reverse_example_problem()
        program = reverse_example_program()
        finals = []
        for inst in problem.instances:
            rec = run(program, inst, detect_revisit=True)
            assert rec.halt is HaltReason.END_GOAL
            finals.append(rec.final.vars)
        assert finals[0] == (1, 5, 2, 4, 3, 6)
        assert finals[1] == (4, 5, 1, 2, 3)
