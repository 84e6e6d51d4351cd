"""Evaluation-function and cost-vector tests."""

import pytest

from planprog.actions import ADD, SWAP
from planprog.evaluation import (CostVector, Evaluator, f1, f2, f3, f6, h4,
                                 h5, parse_config)
from planprog.model import GPProblem, Instance, Primitive, VariableSpace
from planprog.program import (ActionInstr, Condition, END, GotoInstr,
                              PlanningProgram, UNDEFINED, empty_program,
                              run_all)


def prog(*lines):
    return PlanningProgram(tuple(lines) + (END,))


def inst(values, goal, ptr_init=None):
    return Instance(VariableSpace(len(values)), tuple(values), goal,
                    pointer_count=2, ptr_init=ptr_init or {})


INC0 = ActionInstr(Primitive.INC, (0,))
CMP01 = ActionInstr(Primitive.CMP_PTR, (0, 1))


class TestStructural:
    def test_f1_counts_gotos(self):
        p = prog(CMP01, GotoInstr(0, Condition.EQ), UNDEFINED,
                 GotoInstr(0, Condition.NE))
        assert f1(p) == 2

    def test_f2_counts_undefined(self):
        assert f2(empty_program(5)) == 4
        assert f2(empty_program(5).with_line(0, INC0)) == 3

    def test_f3_counts_repeats(self):
        p = prog(INC0, INC0, CMP01, INC0)
        assert f3(p) == 2
        assert f3(prog(INC0, CMP01)) == 0

    def test_f3_distinguishes_arguments(self):
        p = prog(INC0, ActionInstr(Primitive.INC, (1,)))
        assert f3(p) == 0


class TestPerformance:
    def make(self, program, *instances):
        problem = GPProblem(tuple(instances), (ADD, SWAP), 2)
        return problem, run_all(program, problem)

    def test_h4_lines_unreached(self):
        p = empty_program(5).with_line(0, ActionInstr(ADD, (0, 1)))
        problem, status = self.make(p, inst([1, 2], {0: 9}, {1: 1}))
        assert h4(p, status) == 5 - 1

    def test_h4_rejects_solved(self):
        p = prog(ActionInstr(ADD, (0, 1)))
        problem, status = self.make(p, inst([1, 2], {0: 3}, {1: 1}))
        with pytest.raises(ValueError):
            h4(p, status)

    def test_h5_squared_goal_distance(self):
        p = empty_program(3)
        problem, status = self.make(p, inst([1, 2], {0: 4, 1: 2}))
        # (1-4)^2 + (2-2)^2
        assert h5(status.records, problem) == 9

    def test_h5_sums_over_instances(self):
        p = empty_program(3)
        problem, status = self.make(p, inst([1, 2], {0: 2}),
                                    inst([5, 0], {0: 0}))
        assert h5(status.records, problem) == 1 + 25

    def test_h5_zero_iff_goals_match(self):
        p = prog(ActionInstr(ADD, (0, 1)))
        problem, status = self.make(p, inst([1, 2], {0: 3}, {1: 1}))
        assert h5(status.records, problem) == 0

    def test_f6_counts_all_applied_actions(self):
        p = prog(ActionInstr(ADD, (0, 1)), INC0)
        problem, status = self.make(p, inst([1, 2], {}, {1: 1}))
        assert f6(status.records) == 2


class TestCostVector:
    def test_lexicographic_order(self):
        assert CostVector((0, 5), 9) < CostVector((1, 0), 0)
        assert CostVector((1, 0), 0) < CostVector((1, 1), 0)

    def test_fifo_tie_break(self):
        assert CostVector((1, 1), 0) < CostVector((1, 1), 1)


class TestEvaluator:
    def test_config_validated(self):
        with pytest.raises(ValueError):
            Evaluator(("f9",))
        with pytest.raises(ValueError):
            Evaluator(())

    def test_evaluate_matches_functions(self):
        p = empty_program(4).with_line(0, ActionInstr(ADD, (0, 1)))
        problem = GPProblem((inst([1, 2], {0: 9}, {1: 1}),), (ADD,), 2)
        status = run_all(p, problem)
        ev = Evaluator(("h5", "f1", "f2"))
        cost = ev.evaluate(p, status, problem)
        assert cost.values == (h5(status.records, problem), f1(p), f2(p))

    def test_sequence_numbers_increase(self):
        ev = Evaluator(("f1",))
        p = empty_program(2)
        problem = GPProblem((inst([1], {}),), (), 2)
        status = run_all(p, problem)
        first = ev.evaluate(p, status, problem)
        second = ev.evaluate(p, status, problem)
        assert first.seq < second.seq

    def test_metric_path_agrees_with_record_path(self):
        p = empty_program(4).with_line(0, ActionInstr(ADD, (0, 1)))
        problem = GPProblem((inst([1, 2], {0: 9}, {1: 1}),), (ADD,), 2)
        status = run_all(p, problem)
        ev = Evaluator(("f1", "f2", "f3", "h4", "h5", "f6"))
        by_records = ev.evaluate(p, status, problem)
        by_metrics = ev.evaluate_from_metrics(
            p, status.pcmax, h5(status.records, problem),
            f6(status.records))
        assert by_records.values == by_metrics.values


class TestParseConfig:
    def test_comma_string(self):
        assert parse_config("h5,f1") == ("h5", "f1")
        assert parse_config(" f2 , f6 ") == ("f2", "f6")

    def test_iterable(self):
        assert parse_config(["f1"]) == ("f1",)

    def test_rejects_unknown(self):
        with pytest.raises(ValueError):
            parse_config("h5,banana")
