"""Text formats for programs and instances.

Programs: one instruction per line, ``<idx>. <instr>``; pointer names are
1-based in text (z1 is pointer index 0).  Content-action arguments are
starred (``swap(*z1,*z2)``), primitive pointer operations are not (except
``cmp(*z1,*z2)``, the content comparison).  Instances: ``key: value`` lines
with ``#`` comments.
"""

from __future__ import annotations

import re
from typing import Optional, Sequence

from .actions import BUILTIN_ACTIONS
from .model import ActionSchema, Instance, Primitive, VariableSpace, VALUE_LIMIT
from .program import (ActionInstr, Condition, END, GotoInstr, Instruction,
                      PlanningProgram, UNDEFINED, goto_target_legal)


class ProgramParseError(ValueError):
    pass


class InstanceParseError(ValueError):
    pass


_PRIMITIVE_NAMES = {
    Primitive.INC: "inc",
    Primitive.DEC: "dec",
    Primitive.CMP_PTR: "cmp",
    Primitive.CMP_DEREF: "cmp",
    Primitive.SET_PTR: "set",
}


def _fmt_ptr(z: int, star: bool) -> str:
    return f"{'*' if star else ''}z{z + 1}"


def serialize_instruction(instr: Instruction) -> str:
    if instr is UNDEFINED:
        return "-- undefined"
    if instr is END:
        return "end"
    if isinstance(instr, GotoInstr):
        return f"goto({instr.target},{instr.cond.name})"
    if instr.is_primitive:
        star = instr.op is Primitive.CMP_DEREF
        args = ",".join(_fmt_ptr(z, star) for z in instr.args)
        return f"{_PRIMITIVE_NAMES[instr.op]}({args})"
    args = ",".join(_fmt_ptr(z, True) for z in instr.args)
    return f"{instr.name}({args})"


def serialize_program(program: PlanningProgram) -> str:
    return "\n".join(f"{i}. {serialize_instruction(instr)}"
                     for i, instr in enumerate(program.lines)) + "\n"


_LINE_RE = re.compile(r"^(\d+)\.\s+(.*?)\s*$")
_CALL_RE = re.compile(r"^([a-zA-Z_][\w]*)\(([^)]*)\)$")
_PTR_RE = re.compile(r"^(\*?)z(\d+)$")


def _parse_ptr(tok: str, pointer_count: Optional[int], lineno: int,
               expect_star: Optional[bool] = None) -> tuple[int, bool]:
    m = _PTR_RE.match(tok.strip())
    if not m:
        raise ProgramParseError(f"line {lineno}: bad pointer argument {tok!r}")
    star = m.group(1) == "*"
    if expect_star is not None and star != expect_star:
        kind = "starred" if expect_star else "unstarred"
        raise ProgramParseError(f"line {lineno}: expected {kind} argument, got {tok!r}")
    idx = int(m.group(2)) - 1
    if idx < 0 or (pointer_count is not None and idx >= pointer_count):
        raise ProgramParseError(f"line {lineno}: pointer z{idx + 1} out of range")
    return idx, star


def parse_instruction(text: str, lineno: int, pointer_count: Optional[int],
                      actions: dict[str, ActionSchema]) -> Instruction:
    text = text.strip()
    if text == "-- undefined":
        return UNDEFINED
    if text == "end":
        return END
    m = _CALL_RE.match(text)
    if not m:
        raise ProgramParseError(f"line {lineno}: malformed instruction {text!r}")
    name, argstr = m.group(1), m.group(2)
    argtoks = [a.strip() for a in argstr.split(",")] if argstr.strip() else []
    if name == "goto":
        if len(argtoks) != 2:
            raise ProgramParseError(f"line {lineno}: goto takes (target,COND)")
        try:
            target = int(argtoks[0])
        except ValueError:
            raise ProgramParseError(f"line {lineno}: bad goto target {argtoks[0]!r}")
        try:
            cond = Condition[argtoks[1]]
        except KeyError:
            raise ProgramParseError(f"line {lineno}: unknown condition {argtoks[1]!r}")
        return GotoInstr(target, cond)
    starred = [t.startswith("*") for t in argtoks]
    if any(starred):
        if not all(starred):
            raise ProgramParseError(f"line {lineno}: mixed starred/unstarred arguments")
        schema = actions.get(name)
        if schema is None:
            raise ProgramParseError(f"line {lineno}: unknown action {name!r}")
        if len(argtoks) != schema.arity:
            raise ProgramParseError(
                f"line {lineno}: {name} takes {schema.arity} argument(s)")
        args = tuple(_parse_ptr(t, pointer_count, lineno, True)[0] for t in argtoks)
        return ActionInstr(schema, args)
    prim = {"inc": Primitive.INC, "dec": Primitive.DEC,
            "cmp": Primitive.CMP_PTR, "set": Primitive.SET_PTR}.get(name)
    if prim is None:
        raise ProgramParseError(f"line {lineno}: unknown action {name!r}")
    arity = 1 if prim in (Primitive.INC, Primitive.DEC) else 2
    if len(argtoks) != arity:
        raise ProgramParseError(f"line {lineno}: {name} takes {arity} argument(s)")
    args = tuple(_parse_ptr(t, pointer_count, lineno, False)[0] for t in argtoks)
    return ActionInstr(prim, args)


def parse_program(text: str, n: Optional[int] = None,
                  pointer_count: Optional[int] = None,
                  actions: Optional[dict[str, ActionSchema]] = None) -> PlanningProgram:
    """Parse program text; omitted trailing lines become undefined, and the
    final line defaults to end when unlisted."""
    actions = BUILTIN_ACTIONS if actions is None else actions
    entries: dict[int, Instruction] = {}
    max_idx = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _LINE_RE.match(stripped)
        if not m:
            raise ProgramParseError(f"line {lineno}: expected '<idx>. <instruction>'")
        idx = int(m.group(1))
        if idx in entries:
            raise ProgramParseError(f"line {lineno}: duplicate program line {idx}")
        entries[idx] = parse_instruction(m.group(2), lineno, pointer_count, actions)
        max_idx = max(max_idx, idx)
    if max_idx < 0:
        raise ProgramParseError("no program lines found")
    if n is None:
        n = max_idx + 1
    if max_idx >= n:
        raise ProgramParseError(f"program line {max_idx} exceeds n={n}")
    lines = [entries.get(i, UNDEFINED) for i in range(n)]
    if lines[-1] is UNDEFINED:
        lines[-1] = END
    if lines[-1] is not END:
        raise ProgramParseError(f"last line must be end, got {lines[-1]!r}")
    for i, instr in enumerate(lines):
        if isinstance(instr, GotoInstr) and not goto_target_legal(i, instr.target, n):
            raise ProgramParseError(f"line {i}: illegal goto target {instr.target}")
    return PlanningProgram(tuple(lines))


# ------------------------------------------------------------- instances

def serialize_instance(inst: Instance) -> str:
    out = []
    if inst.domain:
        out.append(f"domain: {inst.domain}")
    out.append(f"vars: {inst.space.count}")
    out.append(f"pointers: {inst.pointer_count}")
    out.append("init: " + " ".join(str(v) for v in inst.init))
    out.append("goal: " + " ".join(f"{i}={v}" for i, v in sorted(inst.goal.items())))
    if inst.ptr_init:
        out.append("ptr_init: " + " ".join(f"z{z + 1}={v}"
                                           for z, v in sorted(inst.ptr_init.items())))
    if inst.space.bounds:
        out.append("bounds: " + " ".join(
            f"{i}={lo}..{hi}" for i, (lo, hi) in sorted(inst.space.bounds.items())))
    return "\n".join(out) + "\n"


def parse_instance(text: str) -> Instance:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if ":" not in stripped:
            raise InstanceParseError(f"line {lineno}: expected 'key: value'")
        key, value = stripped.split(":", 1)
        key = key.strip()
        if key in fields:
            raise InstanceParseError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
    try:
        count = int(fields["vars"])
        init = tuple(int(v) for v in fields["init"].split())
        goal = {}
        for pair in fields["goal"].split():
            i, v = pair.split("=")
            goal[int(i)] = int(v)
    except KeyError as e:
        raise InstanceParseError(f"missing required key {e.args[0]!r}")
    except ValueError as e:
        raise InstanceParseError(f"malformed value: {e}")
    ptr_init = {}
    for pair in fields.get("ptr_init", "").split():
        m = re.match(r"^z(\d+)=(-?\d+)$", pair)
        if not m:
            raise InstanceParseError(f"malformed ptr_init entry {pair!r}")
        ptr_init[int(m.group(1)) - 1] = int(m.group(2))
    bounds = {}
    for entry in fields.get("bounds", "").split():
        m = re.match(r"^(\d+)=(-?\d+)\.\.(-?\d+)$", entry)
        if not m:
            raise InstanceParseError(f"malformed bounds entry {entry!r}")
        bounds[int(m.group(1))] = (int(m.group(2)), min(int(m.group(3)), VALUE_LIMIT))
    domain = fields.get("domain", "")
    if "pointers" in fields:
        pointer_count = int(fields["pointers"])
    elif ptr_init:
        pointer_count = max(ptr_init) + 1
    else:
        pointer_count = 1
    try:
        return Instance(VariableSpace(count, bounds), init, goal,
                        pointer_count, ptr_init, domain)
    except ValueError as e:
        raise InstanceParseError(str(e))
