"""
Synthesizing a program from example instances
=============================================

Best-first search over partial programs: start from the all-undefined
program, repeatedly program the highest line any training instance reached,
prune candidates that fail on any instance, and stop at the first candidate
that solves them all.  Here we synthesize the triangular-number accumulator
and the list reversal from a handful of small instances each.
"""

import time

from planprog import bfgp, run_all, serialize_program
from planprog.domains import DOMAINS, training_problem

for name in ("tsum", "reverse"):
    spec = DOMAINS[name]
    problem = training_problem(name, seed=0)
    print(f"--- {name}: {spec.description} "
          f"(n={spec.lines}, |Z|={spec.pointers}, "
          f"{len(problem.instances)} training instances)")
    start = time.perf_counter()
    result = bfgp(problem, spec.lines, ("h5", "f1"), max_steps=500)
    elapsed = time.perf_counter() - start
    print(f"outcome={result.outcome.value}  {elapsed:.2f}s  "
          f"expanded={result.stats.expanded}  "
          f"evaluated={result.stats.evaluated}")
    print(serialize_program(result.program))

    # The returned program must re-validate on its own training set.
    assert run_all(result.program, problem).kind.value == "solution"
