"""Text-format tests: program and instance round trips, parse errors."""

import pytest

from planprog.actions import BUILTIN_ACTIONS, SWAP
from planprog.model import Instance, Primitive, VariableSpace
from planprog.program import (ActionInstr, Condition, END, GotoInstr,
                              PlanningProgram, UNDEFINED, empty_program)
from planprog.textio import (InstanceParseError, ProgramParseError,
                             parse_instance, parse_program,
                             serialize_instance, serialize_instruction,
                             serialize_program)

REVERSE_TEXT = """\
0. swap(*z1,*z2)
1. inc(z1)
2. dec(z2)
3. cmp(z2,z1)
4. goto(0,GE)
5. end
"""


class TestSerializeProgram:
    def test_reverse_listing(self):
        p = PlanningProgram((
            ActionInstr(SWAP, (0, 1)),
            ActionInstr(Primitive.INC, (0,)),
            ActionInstr(Primitive.DEC, (1,)),
            ActionInstr(Primitive.CMP_PTR, (1, 0)),
            GotoInstr(0, Condition.GE),
            END,
        ))
        assert serialize_program(p) == REVERSE_TEXT

    def test_empty_program_placeholders(self):
        assert serialize_program(empty_program(3)) == (
            "0. -- undefined\n1. -- undefined\n2. end\n")

    def test_content_compare_is_starred(self):
        instr = ActionInstr(Primitive.CMP_DEREF, (0, 2))
        assert serialize_instruction(instr) == "cmp(*z1,*z3)"

    def test_pointer_names_are_one_based(self):
        assert serialize_instruction(ActionInstr(Primitive.INC, (0,))) == "inc(z1)"


class TestParseProgram:
    def test_reverse_round_trip(self):
        p = parse_program(REVERSE_TEXT, pointer_count=2)
        assert serialize_program(p) == REVERSE_TEXT

    def test_round_trip_random_forms(self):
        texts = [
            "0. -- undefined\n1. end\n",
            "0. set(z1,z2)\n1. goto(3,LT)\n2. -- undefined\n3. add(*z1,*z1)\n4. end\n",
        ]
        for text in texts:
            assert serialize_program(parse_program(text)) == text

    def test_unlisted_lines_become_undefined(self):
        p = parse_program("0. inc(z1)\n", n=4)
        assert p.lines[1] is UNDEFINED
        assert p.lines[2] is UNDEFINED
        assert p.lines[3] is END

    def test_comments_and_blank_lines(self):
        p = parse_program("# a comment\n\n0. inc(z1)  # trailing\n1. end\n")
        assert len(p) == 2

    def test_goto_to_next_line_rejected(self):
        with pytest.raises(ProgramParseError, match="illegal goto target"):
            parse_program("0. inc(z1)\n1. goto(2,EQ)\n2. -- undefined\n3. end\n")

    def test_pointer_out_of_range(self):
        with pytest.raises(ProgramParseError):
            parse_program("0. swap(*z1,*z9)\n1. end\n", pointer_count=3)

    def test_unknown_action(self):
        with pytest.raises(ProgramParseError, match="unknown action"):
            parse_program("0. frob(*z1)\n1. end\n")

    def test_malformed_line_reports_number(self):
        with pytest.raises(ProgramParseError, match="line 2"):
            parse_program("0. inc(z1)\nnot a line\n")

    def test_wrong_arity(self):
        with pytest.raises(ProgramParseError):
            parse_program("0. inc(z1,z2)\n1. end\n")

    def test_unknown_condition(self):
        with pytest.raises(ProgramParseError, match="condition"):
            parse_program("0. inc(z1)\n1. goto(0,XX)\n2. end\n")

    def test_last_line_must_be_end(self):
        with pytest.raises(ProgramParseError):
            parse_program("0. inc(z1)\n1. inc(z1)\n")

    def test_duplicate_line_index(self):
        with pytest.raises(ProgramParseError, match="duplicate"):
            parse_program("0. inc(z1)\n0. dec(z1)\n1. end\n")

    def test_mixed_star_usage_rejected(self):
        with pytest.raises(ProgramParseError):
            parse_program("0. swap(*z1,z2)\n1. end\n")

    def test_custom_action_table(self):
        with pytest.raises(ProgramParseError):
            parse_program("0. swap(*z1,*z2)\n1. end\n", actions={})
        p = parse_program("0. swap(*z1,*z2)\n1. end\n", actions=BUILTIN_ACTIONS)
        assert p.lines[0].op is SWAP


class TestInstanceFormat:
    def example(self):
        return Instance(VariableSpace(3, {0: (0, 5)}), (1, 2, 3),
                        {0: 3, 2: 1}, pointer_count=2, ptr_init={1: 2},
                        domain="reverse")

    def test_round_trip(self):
        inst = self.example()
        again = parse_instance(serialize_instance(inst))
        assert again == inst

    def test_round_trip_without_optionals(self):
        inst = Instance(VariableSpace(2), (4, 4), {1: 4}, pointer_count=1)
        again = parse_instance(serialize_instance(inst))
        assert again == inst

    def test_comments_ignored(self):
        text = "# note\nvars: 2\npointers: 1\ninit: 1 2\ngoal: 0=1\n"
        inst = parse_instance(text)
        assert inst.init == (1, 2)

    def test_missing_key(self):
        with pytest.raises(InstanceParseError, match="init"):
            parse_instance("vars: 2\ngoal: 0=1\n")

    def test_malformed_goal(self):
        with pytest.raises(InstanceParseError):
            parse_instance("vars: 2\ninit: 1 2\ngoal: zero\n")

    def test_bad_ptr_init(self):
        with pytest.raises(InstanceParseError):
            parse_instance("vars: 2\ninit: 1 2\ngoal: 0=1\nptr_init: q1=0\n")

    def test_out_of_range_values_rejected(self):
        text = "vars: 2\npointers: 1\ninit: 1 2\ngoal: 7=1\n"
        with pytest.raises(InstanceParseError):
            parse_instance(text)
