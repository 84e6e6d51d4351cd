"""
Benchmark domains and large-scale validation
============================================

Each benchmark domain bundles an instance generator, a goal oracle and a
hand-written reference program.  Validation replays a program over a whole
suite of unseen instances; turning revisit detection off trades the
infinite-loop verdict for speed.
"""

import time

from planprog import HaltReason, run
from planprog.domains import DOMAINS, generate_instance, reference_program
from planprog.fastexec import fast_run

print(f"{'domain':10s} {'n':>2s} {'|Z|':>3s}  description")
for name, spec in DOMAINS.items():
    print(f"{name:10s} {spec.lines:2d} {spec.pointers:3d}  {spec.description}")

# A generated instance is deterministic in (domain, size, seed).
inst = generate_instance("fibonacci", 10)
print("\nfibonacci size 10:", inst.init, "goal", inst.goal)

# Validate every reference program on a slice of its validation range.
print(f"\n{'domain':10s} {'checked':>7s} {'verdicts':s}")
for name, spec in DOMAINS.items():
    sizes = list(spec.validation_sizes)[:25]
    verdicts = set()
    for size in sizes:
        rec = fast_run(reference_program(name), spec.generate(size, seed=1))
        verdicts.add(rec.halt.name)
    print(f"{name:10s} {len(sizes):7d} {sorted(verdicts)}")

# Revisit detection stores every visited program state, so it costs time and
# memory; without it a runaway program is only caught by the step budget.
spec = DOMAINS["reverse"]
suite = [spec.generate(s, seed=1) for s in spec.validation_sizes]
ref = reference_program("reverse")
for detect in (True, False):
    t0 = time.perf_counter()
    assert all(run(ref, i, detect_revisit=detect).halt is HaltReason.END_GOAL
               for i in suite)
    print(f"detection {'on ' if detect else 'off'}: "
          f"{time.perf_counter() - t0:.3f}s for {len(suite)} instances")
