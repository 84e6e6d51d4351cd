"""
Reversing two lists with one six-line program
=============================================

A planning program is a short, line-numbered routine over pointers into the
state variables.  This walkthrough runs the list-reversal program on two
lists of different lengths and prints the trace-level results.
"""

from planprog import PlanFilter, induced_plan, parse_program, run
from planprog.domains import reverse_example_problem

# The program text uses 1-based pointer names; starred arguments are
# dereferenced (the action touches the variable the pointer indexes).
listing = """\
0. swap(*z1,*z2)
1. inc(z1)
2. dec(z2)
3. cmp(z2,z1)
4. goto(0,GE)
5. end
"""
program = parse_program(listing, pointer_count=2)

# Two fixed instances: a 6-element and a 5-element list.  z1 starts at the
# first element (default), z2 is initialized to the last one.
problem = reverse_example_problem()

for name, inst in zip(("P1", "P2"), problem.instances):
    record = run(program, inst, detect_revisit=True)
    print(f"{name}: init={inst.init}")
    print(f"    halt={record.halt.name}  final={record.final.vars}")
    # The induced plan is the sequence of applied actions; DOMAIN_ONLY drops
    # the pointer bookkeeping and leaves just the swaps.
    swaps = induced_plan(record, PlanFilter.DOMAIN_ONLY)
    print("    plan:", ", ".join(str(s) for s in swaps))
