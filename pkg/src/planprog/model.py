"""Machine model: states, pointers, flags, primitive operations and actions.

A machine state extends a vector of integer state variables with a bank of
pointers (each pointer indexes a variable) and two Boolean flags (zero and
carry) that record the result of the last flag-setting operation.  Everything
here is an immutable value; all apply_* functions return new states.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional


class Flags(NamedTuple):
    zero: bool
    carry: bool


FLAGS_FALSE = Flags(False, False)


def update_flags(res: int) -> Flags:
    """Flags after an operation whose result is ``res``.

    zero = (res == 0), carry = (res > 0); they are never both true.
    """
    return Flags(res == 0, res > 0)


@dataclass(frozen=True)
class VariableSpace:
    """Layout of the original state variables: a count plus optional bounds.

    ``bounds`` maps a variable index to an inclusive (lo, hi) range; variables
    not listed are unbounded.
    """

    count: int
    bounds: dict[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("variable count must be >= 1")
        for idx, (lo, hi) in self.bounds.items():
            if not 0 <= idx < self.count:
                raise ValueError(f"bound on variable {idx} out of range")
            if lo > hi:
                raise ValueError(f"bound on variable {idx} has lo > hi")

    def in_bounds(self, idx: int, value: int) -> bool:
        b = self.bounds.get(idx)
        return b is None or b[0] <= value <= b[1]


@dataclass(frozen=True)
class MachineState:
    """Variable values, pointer values and flags; an immutable snapshot."""

    vars: tuple[int, ...]
    pointers: tuple[int, ...]
    flags: Flags = FLAGS_FALSE

    def __post_init__(self) -> None:
        n = len(self.vars)
        for p in self.pointers:
            if not 0 <= p < n:
                raise ValueError(f"pointer value {p} outside [0, {n})")

    def deref(self, z: int) -> int:
        """Content of the variable indexed by pointer ``z``."""
        return self.vars[self.pointers[z]]


class Primitive(enum.Enum):
    """The five primitive pointer operations."""

    INC = "inc"
    DEC = "dec"
    CMP_PTR = "cmp"
    CMP_DEREF = "cmp*"
    SET_PTR = "set"


PRIMITIVE_ARITY = {
    Primitive.INC: 1,
    Primitive.DEC: 1,
    Primitive.CMP_PTR: 2,
    Primitive.CMP_DEREF: 2,
    Primitive.SET_PTR: 2,
}


def apply_primitive(op: Primitive, args: tuple[int, ...],
                    state: MachineState) -> Optional[MachineState]:
    """Apply a primitive pointer operation; ``None`` when inapplicable.

    inc/dec move a pointer within [0, |vars|); set copies one pointer into
    another; the cmp variants change nothing but the flags.  Original state
    variables are never touched.
    """
    ptrs = state.pointers
    nvars = len(state.vars)
    if op is Primitive.INC:
        (z,) = args
        res = ptrs[z] + 1
        if res >= nvars:
            return None
        new_ptrs = ptrs[:z] + (res,) + ptrs[z + 1:]
    elif op is Primitive.DEC:
        (z,) = args
        res = ptrs[z] - 1
        if res < 0:
            return None
        new_ptrs = ptrs[:z] + (res,) + ptrs[z + 1:]
    elif op is Primitive.CMP_PTR:
        z1, z2 = args
        res = ptrs[z1] - ptrs[z2]
        new_ptrs = ptrs
    elif op is Primitive.CMP_DEREF:
        z1, z2 = args
        res = state.deref(z1) - state.deref(z2)
        new_ptrs = ptrs
    elif op is Primitive.SET_PTR:
        z1, z2 = args
        res = ptrs[z2]
        new_ptrs = ptrs[:z1] + (res,) + ptrs[z1 + 1:]
    else:  # pragma: no cover
        raise ValueError(f"unknown primitive {op}")
    return MachineState(state.vars, new_ptrs, update_flags(res))


@dataclass(frozen=True)
class ActionSchema:
    """A content action: operates on variables reached through pointers.

    ``apply`` maps (current values of the dereferenced arguments) to their new
    values, or ``None`` when the action's precondition fails.  ``sets_flags``
    actions additionally update the flags with the new value of their first
    argument; the rest leave flags untouched.

    ``symmetric`` actions take an unordered argument pair; ``allow_self``
    permits both arguments to be the same pointer.  ``kernel_op`` is the
    opcode used by the compiled executor (None for custom schemas, which run
    only on the pure interpreter).
    """

    name: str
    arity: int
    apply: Callable[[tuple[int, ...]], Optional[tuple[int, ...]]]
    sets_flags: bool = False
    symmetric: bool = False
    allow_self: bool = False
    kernel_op: Optional[int] = None

    def __hash__(self) -> int:
        return hash((self.name, self.arity))


def apply_content_action(schema: ActionSchema, args: tuple[int, ...],
                         state: MachineState) -> Optional[MachineState]:
    """Apply a content action through pointer arguments; ``None`` if it fails.

    Arguments are dereferenced (the action reads and writes the variables the
    pointers index), the precondition is checked, and bounded variables must
    stay within their declared range.
    """
    var_idx = tuple(state.pointers[z] for z in args)
    values = tuple(state.vars[i] for i in var_idx)
    new_values = schema.apply(values)
    if new_values is None:
        return None
    new_vars = list(state.vars)
    # write the first argument last so it wins when both pointers alias the
    # same variable (e.g. add of a cell onto itself)
    for i, v in reversed(list(zip(var_idx, new_values))):
        new_vars[i] = v
    flags = update_flags(new_vars[var_idx[0]]) if schema.sets_flags else state.flags
    return MachineState(tuple(new_vars), state.pointers, flags)


# Variable contents are kept within a symmetric range well inside int64 so
# the pure and compiled executors agree; actions that would leave it are
# inapplicable.  Large enough for every benchmark value with headroom.
VALUE_LIMIT = 2 ** 60


def check_bounds(space: VariableSpace, state: MachineState) -> bool:
    return all(space.in_bounds(i, v) and abs(v) <= VALUE_LIMIT
               for i, v in enumerate(state.vars))


def holds_goal(state: MachineState, goal: dict[int, int]) -> bool:
    """True iff every variable listed in the partial-state goal matches."""
    return all(state.vars[i] == v for i, v in goal.items())


@dataclass(frozen=True)
class Instance:
    """One planning instance in pointer-extended form.

    ``ptr_init`` overrides individual pointer start values (default 0); flags
    always start false.  The goal is a partial state over variable indices.
    """

    space: VariableSpace
    init: tuple[int, ...]
    goal: dict[int, int]
    pointer_count: int
    ptr_init: dict[int, int] = field(default_factory=dict)
    domain: str = ""

    def __post_init__(self) -> None:
        if len(self.init) != self.space.count:
            raise ValueError("init length does not match variable count")
        if self.pointer_count < 1:
            raise ValueError("need at least one pointer")
        for idx in self.goal:
            if not 0 <= idx < self.space.count:
                raise ValueError(f"goal variable {idx} out of range")
        for z, v in self.ptr_init.items():
            if not 0 <= z < self.pointer_count:
                raise ValueError(f"pointer override z{z + 1} out of range")
            if not 0 <= v < self.space.count:
                raise ValueError(f"pointer override value {v} outside variable range")
        if not check_bounds(self.space, self.initial_state()):
            raise ValueError("initial values violate variable bounds")

    def initial_state(self) -> MachineState:
        ptrs = tuple(self.ptr_init.get(z, 0) for z in range(self.pointer_count))
        return MachineState(self.init, ptrs, FLAGS_FALSE)


def extend_instance(space: VariableSpace, init: tuple[int, ...],
                    goal: dict[int, int], pointer_count: int,
                    overrides: Optional[dict[int, int]] = None,
                    domain: str = "") -> Instance:
    """Build the pointer-extended instance: flags false, pointers zero except
    for the given overrides, goal unchanged."""
    return Instance(space, tuple(init), dict(goal), pointer_count,
                    dict(overrides or {}), domain)


@dataclass(frozen=True)
class GPProblem:
    """A family of instances sharing pointer count and content actions."""

    instances: tuple[Instance, ...]
    actions: tuple[ActionSchema, ...]
    pointer_count: int

    def __post_init__(self) -> None:
        if not self.instances:
            raise ValueError("a problem needs at least one instance")
        for inst in self.instances:
            if inst.pointer_count != self.pointer_count:
                raise ValueError("instances disagree on pointer count")
        names = [a.name for a in self.actions]
        if len(set(names)) != len(names):
            raise ValueError("duplicate action names")
