"""Planning-program synthesis toolkit.

A pointer machine over planning state variables, an interpreter for
line-numbered planning programs (actions, flag-conditioned gotos, end), a
best-first synthesizer guided by structural and execution-based cost
functions, benchmark domains, and text formats with a CLI.
"""

from .model import (ActionSchema, Flags, GPProblem, Instance, MachineState,
                    Primitive, VariableSpace, apply_content_action,
                    apply_primitive, extend_instance, holds_goal, update_flags)
from .program import (ActionInstr, Condition, END, ExecutionRecord, GotoInstr,
                      HaltReason, PlanFilter, PlanningProgram, ProblemStatus,
                      StatusKind, UNDEFINED, empty_program, induced_plan, run,
                      run_all, step)
from .evaluation import CostVector, Evaluator, f1, f2, f3, f6, h4, h5, parse_config
from .search import (Budget, SearchOutcome, SearchResult, SearchStats,
                     Vocabulary, bfgp, candidate_instructions, expand)
from .domains import (DOMAINS, build_suite, generate_instance,
                      reference_program, reverse_example_problem,
                      reverse_example_program, training_problem)
from .textio import (parse_instance, parse_program, serialize_instance,
                     serialize_program)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
