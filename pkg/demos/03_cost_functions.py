"""
Scoring partial programs
========================

The synthesizer ranks candidate programs with six cost functions: three read
the program text alone (goto count, undefined-line count, repeated-action
count), three execute the candidate on the training instances (lines not yet
reached, squared distance to the goal variables, total induced-plan length).
This demo scores a few partial reversal programs side by side.
"""

from planprog import (Evaluator, empty_program, f1, f2, f3, f6, h4, h5,
                      parse_program, run_all)
from planprog.domains import reverse_example_problem, reverse_example_program

problem = reverse_example_problem()

candidates = {
    "empty (n=6)": empty_program(6),
    "swap only": parse_program("0. swap(*z1,*z2)\n5. end", n=6,
                               pointer_count=2),
    "full solution": reverse_example_program(),
}

print(f"{'candidate':16s} {'f1':>3s} {'f2':>3s} {'f3':>3s} "
      f"{'h4':>3s} {'h5':>4s} {'f6':>3s}  status")
for label, program in candidates.items():
    status = run_all(program, problem)
    # h4 is defined only while the candidate is still open
    h4_val = h4(program, status) if status.kind.value == "open" else "-"
    print(f"{label:16s} {f1(program):3d} {f2(program):3d} {f3(program):3d} "
          f"{h4_val!s:>3s} {h5(status.records, problem):4d} "
          f"{f6(status.records):3d}  {status.kind.value}")

# A configured evaluator combines functions lexicographically and appends a
# FIFO tie-break, which is what makes search runs reproducible.
evaluator = Evaluator(("h5", "f1"))
status = run_all(empty_program(6), problem)
cost = evaluator.evaluate(empty_program(6), status, problem)
print("\ncost vector for the empty program under (h5, f1):", cost.values)
