"""
How program executions end
==========================

Every run of a program on an instance halts for exactly one reason: it
reached an end line (goal satisfied or not), fell into a line nobody has
programmed yet, tried an inapplicable action, or looped forever.  This demo
produces each verdict on purpose.
"""

from planprog import (ActionInstr, Condition, END, GotoInstr, Instance,
                      PlanningProgram, Primitive, UNDEFINED, VariableSpace,
                      empty_program, run)

inst = Instance(VariableSpace(3), (1, 2, 3), {0: 3}, pointer_count=2)


def show(label, program, **kwargs):
    record = run(program, inst, **kwargs)
    print(f"{label:14s} halt={record.halt.name:14s} "
          f"line={record.halt_line}  steps={record.steps}")


# An empty program halts immediately at line 0, which is still undefined.
show("empty", empty_program(4))

# Swapping x1 and x3 makes the goal {x0: 3} true at the end line.
from planprog.actions import SWAP

solved = PlanningProgram((ActionInstr(SWAP, (0, 1)), END))
inst_swapped = Instance(VariableSpace(3), (1, 2, 3), {0: 3},
                        pointer_count=2, ptr_init={1: 2})
print("solved        halt=" +
      run(solved, inst_swapped).halt.name)

# Ending with the goal unmet is a failure, not a crash.
show("end, no goal", PlanningProgram((END,)))

# dec on a pointer already at 0 leaves the pointer domain: inapplicable.
show("underflow", PlanningProgram((ActionInstr(Primitive.DEC, (0,)), END)))

# cmp(z1,z1) sets the zero flag forever, so goto(0,EQ) never falls through.
loop = PlanningProgram((ActionInstr(Primitive.CMP_PTR, (0, 0)),
                        GotoInstr(0, Condition.EQ), END))
show("loop, detect", loop, detect_revisit=True)
show("loop, budget", loop, max_steps=1000)
