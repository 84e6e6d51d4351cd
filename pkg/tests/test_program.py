"""Program structure and interpreter tests."""

import pytest

from planprog.actions import ADD, DEC_C, SWAP
from planprog.model import Instance, Primitive, VariableSpace
from planprog.program import (ActionInstr, Condition, END, GotoInstr,
                              HaltReason, PlanFilter, PlanningProgram,
                              ProgramState, StatusKind, UNDEFINED, classify,
                              empty_program, goto_target_legal, induced_plan,
                              run, run_all, step)
from planprog.model import GPProblem


def inst(values, goal, pointers=2, ptr_init=None, bounds=None):
    return Instance(VariableSpace(len(values), bounds or {}), tuple(values),
                    goal, pointer_count=pointers, ptr_init=ptr_init or {})


def prog(*lines):
    return PlanningProgram(tuple(lines) + (END,))


class TestConditions:
    # each condition is the flag reading of res: zero = (res == 0),
    # carry = (res > 0)
    @pytest.mark.parametrize("res", [-2, -1, 0, 1, 2])
    def test_conditions_match_res(self, res):
        zero, carry = res == 0, res > 0
        assert Condition.EQ.holds(zero, carry) == (res == 0)
        assert Condition.NE.holds(zero, carry) == (res != 0)
        assert Condition.GT.holds(zero, carry) == (res > 0)
        assert Condition.LT.holds(zero, carry) == (res < 0)
        assert Condition.GE.holds(zero, carry) == (res >= 0)
        assert Condition.LE.holds(zero, carry) == (res <= 0)


class TestStructure:
    def test_goto_targets(self):
        # a goto may jump strictly back or skip at least one line forward
        assert goto_target_legal(2, 0, 5)
        assert goto_target_legal(2, 1, 5)
        assert not goto_target_legal(2, 2, 5)      # self
        assert not goto_target_legal(2, 3, 5)      # next line
        assert goto_target_legal(2, 4, 5)
        assert not goto_target_legal(2, 5, 5)      # out of range

    def test_last_line_must_be_end(self):
        with pytest.raises(ValueError):
            PlanningProgram((UNDEFINED, UNDEFINED))

    def test_illegal_goto_rejected(self):
        with pytest.raises(ValueError):
            prog(GotoInstr(1, Condition.EQ), UNDEFINED)

    def test_empty_program(self):
        p = empty_program(4)
        assert len(p) == 4
        assert p.lines[:3] == (UNDEFINED,) * 3
        assert p.lines[3] is END

    def test_with_line(self):
        p = empty_program(3).with_line(0, ActionInstr(Primitive.INC, (0,)))
        assert p.lines[0] == ActionInstr(Primitive.INC, (0,))
        assert p.lines[1] is UNDEFINED

    def test_encode_is_canonical(self):
        a = empty_program(3).with_line(0, ActionInstr(Primitive.INC, (0,)))
        b = empty_program(3).with_line(0, ActionInstr(Primitive.INC, (0,)))
        assert a.encode() == b.encode()
        assert a.encode() != empty_program(3).encode()
        assert len(a.encode()) == 3 * 3


class TestStep:
    def test_undefined_halts(self):
        halt = step(empty_program(3), ProgramState(0, inst([0], {}).initial_state()))
        assert halt.reason is HaltReason.UNDEFINED_LINE

    def test_end_checks_goal(self):
        p = prog()
        s = ProgramState(0, inst([5], {0: 5}, pointers=1).initial_state())
        assert step(p, s, goal={0: 5}).reason is HaltReason.END_GOAL
        assert step(p, s, goal={0: 6}).reason is HaltReason.END_NO_GOAL

    def test_goto_jump_vs_fallthrough(self):
        p = prog(ActionInstr(Primitive.CMP_PTR, (0, 1)),
                 GotoInstr(0, Condition.EQ), UNDEFINED)
        s = ProgramState(0, inst([0, 0], {}).initial_state())
        s = step(p, s)          # cmp: 0 - 0 -> zero
        assert s.line == 1
        s = step(p, s)          # goto taken
        assert s.line == 0

    def test_inapplicable_action_halts(self):
        p = prog(ActionInstr(Primitive.DEC, (0,)))
        halt = step(p, ProgramState(0, inst([1, 2], {}).initial_state()))
        assert halt.reason is HaltReason.INAPPLICABLE

    def test_bounds_enforced_for_content_actions(self):
        p = prog(ActionInstr(DEC_C, (0,)))
        i = inst([0, 9], {}, bounds={0: (0, 9)})
        halt = step(p, ProgramState(0, i.initial_state()), space=i.space)
        assert halt.reason is HaltReason.INAPPLICABLE


def looper():
    """cmp of a pointer with itself always sets zero, so the EQ goto spins."""
    return prog(ActionInstr(Primitive.CMP_PTR, (0, 0)),
                GotoInstr(0, Condition.EQ))


class TestRun:
    def test_reaches_goal(self):
        # add the second cell into the first, then end
        p = prog(ActionInstr(ADD, (0, 1)))
        i = inst([3, 4], {0: 7}, ptr_init={1: 1})
        rec = run(p, i)
        assert rec.halt is HaltReason.END_GOAL
        assert rec.final.vars == (7, 4)

    def test_step_accounting(self):
        # steps = applied actions + goto evaluations + the halting event
        p = prog(ActionInstr(ADD, (0, 1)), GotoInstr(0, Condition.LT))
        i = inst([3, 4], {0: 7}, ptr_init={1: 1})
        rec = run(p, i)
        assert len(rec.plan) == 1
        assert rec.steps == len(rec.plan) + 1 + 1

    def test_revisit_detection(self):
        rec = run(looper(), inst([0, 0], {}), detect_revisit=True)
        assert rec.halt is HaltReason.INFINITE

    def test_step_limit(self):
        rec = run(looper(), inst([0, 0], {}), max_steps=100)
        assert rec.halt is HaltReason.STEP_LIMIT
        assert rec.steps == 101

    def test_plan_grounds_content_actions(self):
        p = prog(ActionInstr(SWAP, (0, 1)), ActionInstr(Primitive.INC, (0,)))
        i = inst([1, 2, 3], {}, ptr_init={1: 2})
        rec = run(p, i)
        steps = [str(s) for s in rec.plan]
        assert steps == ["swap(x1,x3)", "inc(z1)"]

    def test_plan_filter(self):
        p = prog(ActionInstr(SWAP, (0, 1)), ActionInstr(Primitive.INC, (0,)))
        i = inst([1, 2, 3], {}, ptr_init={1: 2})
        rec = run(p, i)
        assert len(induced_plan(rec, PlanFilter.ALL)) == 2
        domain_only = induced_plan(rec, PlanFilter.DOMAIN_ONLY)
        assert [s.name for s in domain_only] == ["swap"]


class TestClassify:
    def problem(self, *instances):
        return GPProblem(tuple(instances), (ADD,), 2)

    def test_solution(self):
        p = prog(ActionInstr(ADD, (0, 1)))
        i = inst([3, 4], {0: 7}, ptr_init={1: 1})
        assert run_all(p, self.problem(i)).kind is StatusKind.SOLUTION

    def test_dead_end_reports_instance(self):
        p = prog(ActionInstr(ADD, (0, 1)))
        good = inst([3, 4], {0: 7}, ptr_init={1: 1})
        bad = inst([3, 4], {0: 9}, ptr_init={1: 1})
        status = run_all(p, self.problem(good, bad))
        assert status.kind is StatusKind.DEAD_END
        assert status.failed_instance == 1
        assert status.failure is HaltReason.END_NO_GOAL

    def test_open_tracks_max_line_reached(self):
        p = empty_program(4).with_line(0, ActionInstr(ADD, (0, 1)))
        i = inst([3, 4], {0: 7}, ptr_init={1: 1})
        status = run_all(p, self.problem(i))
        assert status.kind is StatusKind.OPEN
        assert status.pcmax == 1
