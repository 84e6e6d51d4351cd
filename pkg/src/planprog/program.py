"""Planning programs and their deterministic interpreter.

A program is a fixed-length sequence of lines, each undefined or holding an
action, a flag-conditioned goto, or end; the last line is always end.
Execution on an instance either reaches an end line (goal checked there),
falls into an undefined line, fails on an inapplicable action, revisits a
program state (infinite execution, when detection is on), or exhausts the
step budget.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from . import encoding as enc
from .model import (ActionSchema, GPProblem, Instance, MachineState,
                    Primitive, PRIMITIVE_ARITY, apply_content_action,
                    apply_primitive, check_bounds, holds_goal)


class Condition(enum.Enum):
    """Jump conditions over the (zero, carry) flags.

    Each condition is the comparison the flags encode for the result ``res``
    of the last flag-setting operation: EQ res==0, NE res!=0, GT res>0,
    LT res<0, GE res>=0, LE res<=0.
    """

    EQ = 0
    NE = 1
    GT = 2
    LT = 3
    GE = 4
    LE = 5

    def holds(self, zero: bool, carry: bool) -> bool:
        if self is Condition.EQ:
            return zero
        if self is Condition.NE:
            return not zero
        if self is Condition.GT:
            return carry
        if self is Condition.LT:
            return not zero and not carry
        if self is Condition.GE:
            return zero or carry
        return not carry  # LE


@dataclass(frozen=True)
class ActionInstr:
    op: Union[Primitive, ActionSchema]
    args: tuple[int, ...]

    @property
    def is_primitive(self) -> bool:
        return isinstance(self.op, Primitive)

    @property
    def name(self) -> str:
        return self.op.value if self.is_primitive else self.op.name


@dataclass(frozen=True)
class GotoInstr:
    target: int
    cond: Condition


class EndInstr:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "End"


class UndefinedInstr:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"


END = EndInstr()
UNDEFINED = UndefinedInstr()

Instruction = Union[ActionInstr, GotoInstr, EndInstr, UndefinedInstr]


def goto_target_legal(line: int, target: int, n: int) -> bool:
    """A goto at ``line`` may jump backwards or skip at least one line ahead."""
    return 0 <= target < line or line + 1 < target < n


@dataclass(frozen=True)
class PlanningProgram:
    lines: tuple[Instruction, ...]

    def __post_init__(self) -> None:
        n = len(self.lines)
        if n < 1:
            raise ValueError("a program needs at least one line")
        if self.lines[-1] is not END:
            raise ValueError("the last line must be end")
        for i, instr in enumerate(self.lines):
            if isinstance(instr, GotoInstr) and not goto_target_legal(i, instr.target, n):
                raise ValueError(f"illegal goto target {instr.target} at line {i}")

    def __len__(self) -> int:
        return len(self.lines)

    def with_line(self, i: int, instr: Instruction) -> "PlanningProgram":
        lines = self.lines[:i] + (instr,) + self.lines[i + 1:]
        return PlanningProgram(lines)

    def encode(self) -> bytes:
        """Canonical byte form: (opcode, a, b) per line."""
        out = bytearray()
        for instr in self.lines:
            out += encode_instruction(instr)
        return bytes(out)


def empty_program(n: int) -> PlanningProgram:
    """All lines undefined except the final end."""
    return PlanningProgram((UNDEFINED,) * (n - 1) + (END,))


_PRIMITIVE_OPCODE = {
    Primitive.INC: enc.OP_INC,
    Primitive.DEC: enc.OP_DEC,
    Primitive.CMP_PTR: enc.OP_CMP_PTR,
    Primitive.CMP_DEREF: enc.OP_CMP_DEREF,
    Primitive.SET_PTR: enc.OP_SET_PTR,
}


def encode_instruction(instr: Instruction) -> bytes:
    if instr is UNDEFINED:
        return bytes((enc.OP_UNDEF, 0, 0))
    if instr is END:
        return bytes((enc.OP_END, 0, 0))
    if isinstance(instr, GotoInstr):
        return bytes((enc.OP_GOTO, instr.target, instr.cond.value))
    if instr.is_primitive:
        op = _PRIMITIVE_OPCODE[instr.op]
    else:
        if instr.op.kernel_op is None:
            raise ValueError(f"action {instr.op.name} has no kernel opcode")
        op = instr.op.kernel_op
    a = instr.args[0]
    b = instr.args[1] if len(instr.args) > 1 else 0
    return bytes((op, a, b))


_OPCODE_PRIMITIVE = {v: k for k, v in _PRIMITIVE_OPCODE.items()}


def decode_program(rows, actions) -> "PlanningProgram":
    """Inverse of :meth:`PlanningProgram.encode` for (opcode, a, b) triples.

    ``actions`` supplies the content-action schemas (matched by their kernel
    opcode).
    """
    by_op = {a.kernel_op: a for a in actions if a.kernel_op is not None}
    lines: list[Instruction] = []
    for op, a, b in rows:
        op, a, b = int(op), int(a), int(b)
        if op == enc.OP_UNDEF:
            lines.append(UNDEFINED)
        elif op == enc.OP_END:
            lines.append(END)
        elif op == enc.OP_GOTO:
            lines.append(GotoInstr(a, Condition(b)))
        elif op in _OPCODE_PRIMITIVE:
            prim = _OPCODE_PRIMITIVE[op]
            args = (a,) if PRIMITIVE_ARITY[prim] == 1 else (a, b)
            lines.append(ActionInstr(prim, args))
        else:
            schema = by_op[op]
            args = (a,) if schema.arity == 1 else (a, b)
            lines.append(ActionInstr(schema, args))
    return PlanningProgram(tuple(lines))


class HaltReason(enum.Enum):
    END_GOAL = enc.H_END_GOAL
    END_NO_GOAL = enc.H_END_NO_GOAL
    UNDEFINED_LINE = enc.H_UNDEFINED_LINE
    INAPPLICABLE = enc.H_INAPPLICABLE
    INFINITE = enc.H_INFINITE
    STEP_LIMIT = enc.H_STEP_LIMIT


@dataclass(frozen=True)
class PlanStep:
    """One applied action, grounded at execution time.

    Content actions record the variable indices their pointers addressed;
    primitives record their pointer arguments.
    """

    name: str
    args: tuple[int, ...]
    primitive: bool

    def __str__(self) -> str:
        prefix = "z" if self.primitive else "x"
        inner = ",".join(f"{prefix}{i + 1}" for i in self.args)
        return f"{self.name}({inner})"


@dataclass(frozen=True)
class ExecutionRecord:
    halt: HaltReason
    halt_line: int
    final: MachineState
    plan: tuple[PlanStep, ...]
    steps: int


@dataclass(frozen=True)
class ProgramState:
    line: int
    machine: MachineState


@dataclass(frozen=True)
class Halt:
    reason: HaltReason
    line: int


def step(program: PlanningProgram, pstate: ProgramState,
         space=None, goal: Optional[dict[int, int]] = None) -> Union[ProgramState, Halt]:
    """Execute the instruction at the current line.

    Returns the successor program state, or a Halt for end, undefined line or
    an inapplicable action.  ``space`` (a VariableSpace) enables bounds
    enforcement for content actions; ``goal`` distinguishes the two end halts.
    """
    line = pstate.line
    instr = program.lines[line]
    if instr is UNDEFINED:
        return Halt(HaltReason.UNDEFINED_LINE, line)
    if instr is END:
        reached = goal is None or holds_goal(pstate.machine, goal)
        return Halt(HaltReason.END_GOAL if reached else HaltReason.END_NO_GOAL, line)
    if isinstance(instr, GotoInstr):
        flags = pstate.machine.flags
        nxt = instr.target if instr.cond.holds(flags.zero, flags.carry) else line + 1
        return ProgramState(nxt, pstate.machine)
    # action
    if instr.is_primitive:
        new_state = apply_primitive(instr.op, instr.args, pstate.machine)
    else:
        new_state = apply_content_action(instr.op, instr.args, pstate.machine)
        if new_state is not None and space is not None and not check_bounds(space, new_state):
            new_state = None
    if new_state is None:
        return Halt(HaltReason.INAPPLICABLE, line)
    return ProgramState(line + 1, new_state)


DEFAULT_MAX_STEPS = 10_000_000


def run(program: PlanningProgram, instance: Instance,
        detect_revisit: bool = False,
        max_steps: int = DEFAULT_MAX_STEPS) -> ExecutionRecord:
    """Run a program on one instance from (initial state, line 0).

    With ``detect_revisit`` the run halts INFINITE on the first repeated
    program state; otherwise it halts STEP_LIMIT after ``max_steps``
    non-halting steps.
    """
    machine = instance.initial_state()
    line = 0
    steps = 0
    plan: list[PlanStep] = []
    seen: Optional[set] = set() if detect_revisit else None
    while True:
        steps += 1
        if seen is not None:
            key = (line, machine.vars, machine.pointers, machine.flags)
            if key in seen:
                return ExecutionRecord(HaltReason.INFINITE, line, machine,
                                       tuple(plan), steps)
            seen.add(key)
        elif steps > max_steps:
            return ExecutionRecord(HaltReason.STEP_LIMIT, line, machine,
                                   tuple(plan), steps)
        instr = program.lines[line]
        if instr is UNDEFINED:
            return ExecutionRecord(HaltReason.UNDEFINED_LINE, line, machine,
                                   tuple(plan), steps)
        if instr is END:
            reason = (HaltReason.END_GOAL if holds_goal(machine, instance.goal)
                      else HaltReason.END_NO_GOAL)
            return ExecutionRecord(reason, line, machine, tuple(plan), steps)
        if isinstance(instr, GotoInstr):
            flags = machine.flags
            line = (instr.target if instr.cond.holds(flags.zero, flags.carry)
                    else line + 1)
            continue
        if instr.is_primitive:
            new_machine = apply_primitive(instr.op, instr.args, machine)
            ground = instr.args
        else:
            new_machine = apply_content_action(instr.op, instr.args, machine)
            if new_machine is not None and not check_bounds(instance.space, new_machine):
                new_machine = None
            ground = tuple(machine.pointers[z] for z in instr.args)
        if new_machine is None:
            return ExecutionRecord(HaltReason.INAPPLICABLE, line, machine,
                                   tuple(plan), steps)
        plan.append(PlanStep(instr.name, ground, instr.is_primitive))
        machine = new_machine
        line += 1


class PlanFilter(enum.Enum):
    ALL = "all"
    DOMAIN_ONLY = "domain_only"


def induced_plan(record: ExecutionRecord,
                 plan_filter: PlanFilter = PlanFilter.ALL) -> tuple[PlanStep, ...]:
    """The sequence of applied actions, optionally without pointer primitives."""
    if plan_filter is PlanFilter.ALL:
        return record.plan
    return tuple(s for s in record.plan if not s.primitive)


class StatusKind(enum.Enum):
    SOLUTION = "solution"
    DEAD_END = "dead_end"
    OPEN = "open"


@dataclass(frozen=True)
class ProblemStatus:
    kind: StatusKind
    pcmax: int = 0
    failed_instance: Optional[int] = None
    failure: Optional[HaltReason] = None
    records: tuple[ExecutionRecord, ...] = ()


_FAILURES = (HaltReason.END_NO_GOAL, HaltReason.INAPPLICABLE,
             HaltReason.INFINITE, HaltReason.STEP_LIMIT)


def classify(records: tuple[ExecutionRecord, ...]) -> ProblemStatus:
    """SOLUTION if every run reached the goal, DEAD_END on any failure,
    otherwise OPEN with the maximum undefined line reached."""
    pcmax = 0
    for t, rec in enumerate(records):
        if rec.halt in _FAILURES:
            return ProblemStatus(StatusKind.DEAD_END, failed_instance=t,
                                 failure=rec.halt, records=records)
        if rec.halt is HaltReason.UNDEFINED_LINE:
            pcmax = max(pcmax, rec.halt_line)
    if all(rec.halt is HaltReason.END_GOAL for rec in records):
        return ProblemStatus(StatusKind.SOLUTION, records=records)
    return ProblemStatus(StatusKind.OPEN, pcmax=pcmax, records=records)


def run_all(program: PlanningProgram, problem: GPProblem,
            detect_revisit: bool = False,
            max_steps: int = DEFAULT_MAX_STEPS) -> ProblemStatus:
    records = tuple(run(program, inst, detect_revisit, max_steps)
                    for inst in problem.instances)
    return classify(records)
