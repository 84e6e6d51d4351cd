"""Best-first synthesis of planning programs.

The search space is the set of programs reachable from the empty program by
repeatedly programming the highest line any training instance reached (which
makes successor generation duplicate-free).  Only the open list is kept;
expanded nodes are dropped.  Candidates that fail on any training instance
are pruned as dead ends, a solved candidate ends the search immediately.

Two engines share the same expansion order and therefore the same node
counts: the compiled one keeps open-list nodes as encoded byte strings and
scores a whole expansion in one batched call, the pure one runs the
reference interpreter on program objects (and is the only one that can
detect infinite executions during synthesis).
"""

from __future__ import annotations

import enum
import heapq
import resource
import time
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import encoding as enc
from .evaluation import Evaluator
from .fastexec import EncodedSuite, NODE_DEAD, NODE_SOLUTION
from .model import ActionSchema, GPProblem, Primitive
from .program import (ActionInstr, Condition, END, GotoInstr, Instruction,
                      PlanningProgram, StatusKind, UNDEFINED, decode_program,
                      empty_program, encode_instruction, goto_target_legal,
                      run_all)


@dataclass(frozen=True)
class Vocabulary:
    """The instantiated instruction set available to the synthesizer.

    Content actions come first in declaration order, then the pointer
    primitives; no-op instantiations (cmp/set on one pointer, symmetric
    duplicate orderings) are left out.
    """

    actions: tuple[ActionInstr, ...]
    pointer_count: int

    @classmethod
    def build(cls, actions: Sequence[ActionSchema], pointer_count: int) -> "Vocabulary":
        out: list[ActionInstr] = []
        for schema in actions:
            out.extend(ActionInstr(schema, args)
                       for args in _schema_args(schema, pointer_count))
        zs = range(pointer_count)
        out.extend(ActionInstr(Primitive.INC, (z,)) for z in zs)
        out.extend(ActionInstr(Primitive.DEC, (z,)) for z in zs)
        for prim in (Primitive.CMP_PTR, Primitive.CMP_DEREF, Primitive.SET_PTR):
            out.extend(ActionInstr(prim, (a, b))
                       for a in zs for b in zs if a != b)
        return cls(tuple(out), pointer_count)


def _schema_args(schema: ActionSchema, nz: int) -> Iterator[tuple[int, ...]]:
    zs = range(nz)
    if schema.arity == 1:
        for z in zs:
            yield (z,)
    elif schema.symmetric:
        for a in zs:
            for b in zs:
                if a < b:
                    yield (a, b)
    else:
        for a in zs:
            for b in zs:
                if a != b or schema.allow_self:
                    yield (a, b)


def candidate_instructions(program: PlanningProgram, line: int,
                           vocab: Vocabulary) -> list[Instruction]:
    """Every instruction that may be programmed at an undefined line:
    actions, legal gotos (by target then condition), then end."""
    if program.lines[line] is not UNDEFINED:
        raise ValueError(f"line {line} is already programmed")
    n = len(program)
    out: list[Instruction] = list(vocab.actions)
    for target in range(n):
        if goto_target_legal(line, target, n):
            out.extend(GotoInstr(target, cond) for cond in Condition)
    out.append(END)
    return out


class SearchOutcome(enum.Enum):
    SOLUTION = "solution"
    NO_SOLUTION = "no_solution"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class Budget:
    time_s: Optional[float] = 3600.0
    max_evaluated: Optional[int] = None


@dataclass
class SearchStats:
    expanded: int = 0
    evaluated: int = 0
    elapsed_s: float = 0.0
    peak_open: int = 0
    max_children: int = 0
    peak_mem_mb: float = 0.0
    duplicate_violations: int = 0


@dataclass
class SearchResult:
    outcome: SearchOutcome
    program: Optional[PlanningProgram]
    stats: SearchStats


class DuplicateTracker:
    """Records every generated canonical encoding to verify that successor
    generation never produces the same program twice.

    Keys are appended to one flat byte buffer and duplicates are counted
    once at the end of the run; a hashed set of millions of small byte
    strings would multiply the memory footprint several-fold.
    """

    def __init__(self, key_len: int):
        self.key_len = key_len
        self._buf = bytearray()

    def add(self, key: bytes) -> None:
        self._buf += key

    def violations(self) -> int:
        if not self._buf:
            return 0
        arr = np.frombuffer(self._buf, dtype=np.uint8).reshape(-1, self.key_len)
        keys = arr.view(np.dtype((np.void, self.key_len)))
        return int(arr.shape[0] - np.unique(keys).shape[0])


def expand(program: PlanningProgram, pcmax: int, problem: GPProblem,
           vocab: Vocabulary, evaluator: Evaluator, stats: SearchStats,
           seen: Optional[DuplicateTracker] = None, max_steps: int = 5000,
           detect_revisit: bool = False):
    """Generate, classify and score every successor of one open node with
    the reference interpreter.

    Returns (children, solution); children are (cost values, seq, program,
    pcmax) heap entries, solution is a solved child program or None (the
    first solved child short-circuits generation).
    """
    children = []
    for instr in candidate_instructions(program, pcmax, vocab):
        child = program.with_line(pcmax, instr)
        if seen is not None:
            seen.add(child.encode())
        status = run_all(child, problem, detect_revisit, max_steps)
        if status.kind is StatusKind.SOLUTION:
            return children, child
        if status.kind is StatusKind.DEAD_END:
            continue
        cost = evaluator.evaluate(child, status, problem)
        stats.evaluated += 1
        children.append((cost.values, cost.seq, child, status.pcmax))
    stats.max_children = max(stats.max_children, len(children))
    return children, None


class _EncodedSearch:
    """Fast-path state: candidate row tables plus structural-cost helpers.

    Open-list nodes are (cost values, seq, program bytes, pcmax); programs
    are materialized only for the returned solution.
    """

    def __init__(self, problem: GPProblem, n: int, vocab: Vocabulary,
                 config: Sequence[str]):
        self.problem = problem
        self.n = n
        self.config = tuple(config)
        self.suite = EncodedSuite(problem.instances)
        self.action_rows = np.array(
            [tuple(encode_instruction(a)) for a in vocab.actions],
            dtype=np.int64).reshape(len(vocab.actions), 3)
        self._cand_cache: dict[int, np.ndarray] = {}

    def candidates(self, line: int) -> np.ndarray:
        """Encoded candidate rows for one line, in expansion order."""
        cached = self._cand_cache.get(line)
        if cached is not None:
            return cached
        gotos = [(enc.OP_GOTO, target, cond.value)
                 for target in range(self.n)
                 if goto_target_legal(line, target, self.n)
                 for cond in Condition]
        rows = np.concatenate([
            self.action_rows,
            np.array(gotos, dtype=np.int64).reshape(len(gotos), 3),
            np.array([[enc.OP_END, 0, 0]], dtype=np.int64),
        ])
        self._cand_cache[line] = rows
        return rows

    def structural(self, code: np.ndarray) -> dict[str, int]:
        """The structural costs of a parent program that children reuse."""
        out = {}
        if "f1" in self.config:
            out["f1"] = int(np.count_nonzero(code[:, 0] == enc.OP_GOTO))
        if "f2" in self.config:
            out["f2"] = int(np.count_nonzero(code[:, 0] == enc.OP_UNDEF))
        if "f3" in self.config:
            action = code[:, 0] >= enc.OP_INC
            rows = code[action]
            _, counts = np.unique(rows, axis=0, return_counts=True)
            out["f3"] = int((counts - 1).sum())
        return out

    def child_cost(self, parent: dict[str, int], code: np.ndarray,
                   row, pcmax: int, h5_val: int, plan_total: int) -> list[int]:
        values = []
        for fid in self.config:
            if fid == "f1":
                values.append(parent["f1"] + (1 if row[0] == enc.OP_GOTO else 0))
            elif fid == "f2":
                values.append(parent["f2"] - 1)
            elif fid == "f3":
                extra = 0
                if row[0] >= enc.OP_INC:
                    extra = int(np.count_nonzero(
                        (code[:, 0] == row[0]) & (code[:, 1] == row[1])
                        & (code[:, 2] == row[2])))
                values.append(parent["f3"] + extra)
            elif fid == "h4":
                values.append(self.n - pcmax)
            elif fid == "h5":
                values.append(h5_val)
            else:  # f6
                values.append(plan_total)
        return values


def _replace_row(code_bytes: bytes, line: int, row) -> bytes:
    out = bytearray(code_bytes)
    out[3 * line] = row[0]
    out[3 * line + 1] = row[1]
    out[3 * line + 2] = row[2]
    return bytes(out)


def _expand_encoded(state: _EncodedSearch, node_bytes: bytes, pcmax: int,
                    evaluator: Evaluator, stats: SearchStats,
                    max_steps: int, seen: Optional[DuplicateTracker]):
    code = np.frombuffer(node_bytes, dtype=np.uint8).astype(np.int64)
    code = code.reshape(state.n, 3)
    cand = state.candidates(pcmax)
    outcomes, pcmaxs, h5s, plans = state.suite.evaluate_candidates(
        code, pcmax, cand, max_steps)
    parent_costs = state.structural(code)
    children = []
    for c in range(cand.shape[0]):
        row = cand[c]
        if seen is not None:
            seen.add(_replace_row(node_bytes, pcmax, row))
        if outcomes[c] == NODE_SOLUTION:
            solution = decode_program(
                np.frombuffer(_replace_row(node_bytes, pcmax, row),
                              dtype=np.uint8).reshape(state.n, 3),
                state.problem.actions)
            return children, solution
        if outcomes[c] == NODE_DEAD:
            continue
        values = state.child_cost(parent_costs, code, row, int(pcmaxs[c]),
                                  int(h5s[c]), int(plans[c]))
        cost = evaluator.vector(values)
        stats.evaluated += 1
        children.append((cost.values, cost.seq,
                         _replace_row(node_bytes, pcmax, row), int(pcmaxs[c])))
    stats.max_children = max(stats.max_children, len(children))
    return children, None


def bfgp(problem: GPProblem, n: int, config: Sequence[str],
         budget: Optional[Budget] = None,
         pointer_count: Optional[int] = None,
         engine: str = "auto",
         detect_revisit: bool = False,
         max_steps: int = 5000,
         track_duplicates: bool = False) -> SearchResult:
    """Best-first search for an n-line program solving every instance.

    ``engine`` is 'fast' (compiled executor), 'pure' (reference interpreter,
    required for revisit detection) or 'auto'.  ``max_steps`` bounds a single
    training execution; it must comfortably exceed the runtime of any real
    solution on the training instances.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if pointer_count is not None and pointer_count != problem.pointer_count:
        raise ValueError("pointer_count disagrees with the problem")
    if engine == "auto":
        fast = not detect_revisit and all(a.kernel_op is not None
                                          for a in problem.actions)
    elif engine == "fast":
        if detect_revisit:
            raise ValueError("revisit detection needs the pure engine")
        fast = True
    elif engine == "pure":
        fast = False
    else:
        raise ValueError(f"unknown engine {engine!r}")

    budget = budget or Budget()
    evaluator = Evaluator(tuple(config))
    vocab = Vocabulary.build(problem.actions, problem.pointer_count)
    stats = SearchStats()
    seen = DuplicateTracker(3 * n) if track_duplicates else None
    start = time.perf_counter()

    def finish(outcome: SearchOutcome, program: Optional[PlanningProgram]):
        stats.elapsed_s = time.perf_counter() - start
        stats.peak_mem_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0
        if seen is not None:
            stats.duplicate_violations = seen.violations()
        return SearchResult(outcome, program, stats)

    root = empty_program(n)
    root_status = run_all(root, problem,
                          detect_revisit=detect_revisit and not fast,
                          max_steps=max_steps)
    if seen is not None:
        seen.add(root.encode())
    if root_status.kind is StatusKind.SOLUTION:
        return finish(SearchOutcome.SOLUTION, root)
    if root_status.kind is StatusKind.DEAD_END:
        return finish(SearchOutcome.NO_SOLUTION, None)
    cost = evaluator.evaluate(root, root_status, problem)
    stats.evaluated += 1

    enc_state = _EncodedSearch(problem, n, vocab, config) if fast else None
    node = root.encode() if fast else root
    heap = [(cost.values, cost.seq, node, root_status.pcmax)]

    while heap:
        if budget.time_s is not None and time.perf_counter() - start > budget.time_s:
            return finish(SearchOutcome.BUDGET_EXHAUSTED, None)
        if budget.max_evaluated is not None and stats.evaluated >= budget.max_evaluated:
            return finish(SearchOutcome.BUDGET_EXHAUSTED, None)
        _, _, node, pcmax = heapq.heappop(heap)
        stats.expanded += 1
        if fast:
            children, solution = _expand_encoded(enc_state, node, pcmax,
                                                 evaluator, stats, max_steps,
                                                 seen)
        else:
            children, solution = expand(node, pcmax, problem, vocab,
                                        evaluator, stats, seen, max_steps,
                                        detect_revisit)
        if solution is not None:
            return finish(SearchOutcome.SOLUTION, solution)
        for entry in children:
            heapq.heappush(heap, entry)
        stats.peak_open = max(stats.peak_open, len(heap))
    return finish(SearchOutcome.NO_SOLUTION, None)
