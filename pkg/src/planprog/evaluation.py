"""Evaluation and heuristic functions over candidate programs.

Structural functions (f1, f2, f3) read only the program text; performance
functions (h4, h5, f6) read the execution records of a partially programmed
candidate.  All are costs: smaller is better.  An Evaluator combines a
configured sequence of them into a lexicographic cost vector, tie-broken by
a generation sequence number.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .model import GPProblem
from .program import (ActionInstr, ExecutionRecord, GotoInstr, HaltReason,
                      PlanningProgram, ProblemStatus, StatusKind, UNDEFINED)


def f1(program: PlanningProgram) -> int:
    """Number of goto lines."""
    return sum(1 for w in program.lines if isinstance(w, GotoInstr))


def f2(program: PlanningProgram) -> int:
    """Number of undefined lines."""
    return sum(1 for w in program.lines if w is UNDEFINED)


def f3(program: PlanningProgram) -> int:
    """Number of repeated action lines (same action, same arguments)."""
    seen: dict[tuple, int] = {}
    for w in program.lines:
        if isinstance(w, ActionInstr):
            key = (w.name, w.is_primitive, w.args)
            seen[key] = seen.get(key, 0) + 1
    return sum(c - 1 for c in seen.values())


def h4(program: PlanningProgram, status: ProblemStatus) -> int:
    """Lines not yet reached: program length minus the maximum line reached."""
    if status.kind is not StatusKind.OPEN:
        raise ValueError("h4 is defined for open candidates only")
    return len(program) - status.pcmax


def h5(records: Sequence[ExecutionRecord], problem: GPProblem) -> int:
    """Summed squared distance of each halting state to its goal variables."""
    total = 0
    for rec, inst in zip(records, problem.instances):
        for idx, target in inst.goal.items():
            total += (rec.final.vars[idx] - target) ** 2
    return total


def f6(records: Sequence[ExecutionRecord]) -> int:
    """Summed induced-plan length (all applied actions, primitives included)."""
    return sum(len(rec.plan) for rec in records)


STRUCTURAL = ("f1", "f2", "f3")
PERFORMANCE = ("h4", "h5", "f6")
ALL_FUNCTIONS = STRUCTURAL + PERFORMANCE


@dataclass(frozen=True, order=True)
class CostVector:
    """Lexicographically ordered costs plus a FIFO tie-break."""

    values: tuple[int, ...]
    seq: int


@dataclass
class Evaluator:
    """Computes cost vectors for a fixed configuration of function ids."""

    config: tuple[str, ...]
    _counter: "itertools.count" = field(default_factory=itertools.count)

    def __post_init__(self) -> None:
        self.config = tuple(self.config)
        if not self.config:
            raise ValueError("configuration must name at least one function")
        unknown = set(self.config) - set(ALL_FUNCTIONS)
        if unknown:
            raise ValueError(f"unknown evaluation functions: {sorted(unknown)}")

    @property
    def needs_records(self) -> bool:
        return any(f in PERFORMANCE for f in self.config)

    def evaluate(self, program: PlanningProgram, status: ProblemStatus,
                 problem: GPProblem | None = None) -> CostVector:
        values = []
        for fid in self.config:
            if fid == "f1":
                values.append(f1(program))
            elif fid == "f2":
                values.append(f2(program))
            elif fid == "f3":
                values.append(f3(program))
            elif fid == "h4":
                values.append(h4(program, status))
            elif fid == "h5":
                if not status.records or problem is None:
                    raise ValueError("h5 needs execution records")
                values.append(h5(status.records, problem))
            else:  # f6
                if not status.records:
                    raise ValueError("f6 needs execution records")
                values.append(f6(status.records))
        return CostVector(tuple(values), next(self._counter))

    def vector(self, values: Sequence[int]) -> CostVector:
        """Wrap already-computed costs, consuming one tie-break number."""
        return CostVector(tuple(values), next(self._counter))

    def evaluate_from_metrics(self, program: PlanningProgram, pcmax: int,
                              h5_value: int, plan_total: int) -> CostVector:
        """Cost vector from precomputed execution metrics (compiled path)."""
        values = []
        for fid in self.config:
            if fid == "f1":
                values.append(f1(program))
            elif fid == "f2":
                values.append(f2(program))
            elif fid == "f3":
                values.append(f3(program))
            elif fid == "h4":
                values.append(len(program) - pcmax)
            elif fid == "h5":
                values.append(h5_value)
            else:
                values.append(plan_total)
        return CostVector(tuple(values), next(self._counter))


def parse_config(text: str | Iterable[str]) -> tuple[str, ...]:
    """Accepts 'h5,f1' or an iterable of function ids."""
    if isinstance(text, str):
        parts = tuple(p.strip() for p in text.split(",") if p.strip())
    else:
        parts = tuple(text)
    Evaluator(parts)  # validation
    return parts
