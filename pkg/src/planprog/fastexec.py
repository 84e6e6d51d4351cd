"""Compiled program executor used for synthesis and bulk validation.

Mirrors the pure interpreter in :mod:`planprog.program` instruction for
instruction (same step counting, same halt classification), minus revisit
detection, which only the pure interpreter provides.  Programs whose content
actions all come from the builtin library encode to flat opcode arrays that a
numba-compiled loop can run; equivalence with the pure interpreter is covered
by tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numba import njit

from . import encoding as enc
from .model import Instance, VALUE_LIMIT
from .program import HaltReason, MachineState, PlanningProgram

def can_encode(program: PlanningProgram) -> bool:
    try:
        program.encode()
        return True
    except ValueError:
        return False


def encode_program(program: PlanningProgram) -> np.ndarray:
    """Program as an (n, 3) int64 array of (opcode, a, b) rows."""
    raw = np.frombuffer(program.encode(), dtype=np.uint8)
    return raw.astype(np.int64).reshape(len(program), 3)


@njit(cache=True)
def _run_encoded(code, varbuf, nvars, ptrs, lo, hi, goal_idx, goal_val,
                 max_steps):  # pragma: no cover - exercised via wrappers
    """Run one encoded program; returns (halt, halt_line, steps, plan_len).

    ``varbuf`` and ``ptrs`` are modified in place and hold the final state.
    """
    line = 0
    steps = 0
    plan_len = 0
    zero = False
    carry = False
    while True:
        steps += 1
        if steps > max_steps:
            return enc.H_STEP_LIMIT, line, steps, plan_len
        op = code[line, 0]
        a = code[line, 1]
        b = code[line, 2]
        if op == enc.OP_UNDEF:
            return enc.H_UNDEFINED_LINE, line, steps, plan_len
        if op == enc.OP_END:
            ok = True
            for g in range(goal_idx.shape[0]):
                if varbuf[goal_idx[g]] != goal_val[g]:
                    ok = False
                    break
            if ok:
                return enc.H_END_GOAL, line, steps, plan_len
            return enc.H_END_NO_GOAL, line, steps, plan_len
        if op == enc.OP_GOTO:
            c = b
            if c == 0:
                jump = zero
            elif c == 1:
                jump = not zero
            elif c == 2:
                jump = carry
            elif c == 3:
                jump = (not zero) and (not carry)
            elif c == 4:
                jump = zero or carry
            else:
                jump = not carry
            line = a if jump else line + 1
            continue
        # actions
        set_flags = True
        res = 0
        if op == enc.OP_INC:
            res = ptrs[a] + 1
            if res >= nvars:
                return enc.H_INAPPLICABLE, line, steps, plan_len
            ptrs[a] = res
        elif op == enc.OP_DEC:
            res = ptrs[a] - 1
            if res < 0:
                return enc.H_INAPPLICABLE, line, steps, plan_len
            ptrs[a] = res
        elif op == enc.OP_CMP_PTR:
            res = ptrs[a] - ptrs[b]
        elif op == enc.OP_CMP_DEREF:
            res = varbuf[ptrs[a]] - varbuf[ptrs[b]]
        elif op == enc.OP_SET_PTR:
            res = ptrs[b]
            ptrs[a] = res
        else:
            # content actions: dereferenced arguments
            ia = ptrs[a]
            if op == enc.OP_C_INC:
                res = varbuf[ia] + 1
                if res < lo[ia] or res > hi[ia]:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                varbuf[ia] = res
            elif op == enc.OP_C_DEC:
                res = varbuf[ia] - 1
                if res < lo[ia] or res > hi[ia]:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                varbuf[ia] = res
            elif op == enc.OP_C_ADD or op == enc.OP_C_SUB or op == enc.OP_C_SET:
                ib = ptrs[b]
                if op == enc.OP_C_ADD:
                    res = varbuf[ia] + varbuf[ib]
                elif op == enc.OP_C_SUB:
                    res = varbuf[ia] - varbuf[ib]
                else:
                    res = varbuf[ib]
                if res < lo[ia] or res > hi[ia]:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                varbuf[ia] = res
            elif op == enc.OP_C_SWAP:
                ib = ptrs[b]
                va = varbuf[ia]
                vb = varbuf[ib]
                if vb < lo[ia] or vb > hi[ia] or va < lo[ib] or va > hi[ib]:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                varbuf[ia] = vb
                varbuf[ib] = va
                set_flags = False
            elif op == enc.OP_C_PICK:
                ib = ptrs[b]
                if varbuf[ia] != varbuf[ib]:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                if 2 < lo[ia] or 2 > hi[ia]:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                varbuf[ia] = 2
                set_flags = False
            elif op == enc.OP_C_DROP:
                ib = ptrs[b]
                if varbuf[ia] != 2:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                v = varbuf[ib]
                if v < lo[ia] or v > hi[ia]:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                varbuf[ia] = v
                set_flags = False
            else:  # OP_C_MOVE
                v = varbuf[ia]
                if v != 0 and v != 1:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                v = 1 - v
                if v < lo[ia] or v > hi[ia]:
                    return enc.H_INAPPLICABLE, line, steps, plan_len
                varbuf[ia] = v
                set_flags = False
        if set_flags:
            zero = res == 0
            carry = res > 0
        plan_len += 1
        line += 1


@dataclass
class EncodedInstance:
    """One instance lowered to the arrays the compiled loop consumes."""

    init: np.ndarray       # int64[nvars]
    ptr_init: np.ndarray   # int64[|Z|]
    lo: np.ndarray
    hi: np.ndarray
    goal_idx: np.ndarray
    goal_val: np.ndarray

    @classmethod
    def from_instance(cls, inst: Instance) -> "EncodedInstance":
        n = inst.space.count
        lo = np.full(n, -VALUE_LIMIT, dtype=np.int64)
        hi = np.full(n, VALUE_LIMIT, dtype=np.int64)
        for i, (l, h) in inst.space.bounds.items():
            lo[i] = max(l, -VALUE_LIMIT)
            hi[i] = min(h, VALUE_LIMIT)
        goal_items = sorted(inst.goal.items())
        return cls(
            init=np.array(inst.init, dtype=np.int64),
            ptr_init=np.array([inst.ptr_init.get(z, 0)
                               for z in range(inst.pointer_count)], dtype=np.int64),
            lo=lo, hi=hi,
            goal_idx=np.array([g for g, _ in goal_items], dtype=np.int64),
            goal_val=np.array([v for _, v in goal_items], dtype=np.int64),
        )


@dataclass(frozen=True)
class FastRecord:
    """Execution outcome from the compiled loop: counts, not a full trace."""

    halt: HaltReason
    halt_line: int
    final: MachineState
    plan_len: int
    steps: int


def fast_run(program: PlanningProgram, instance: Instance,
             max_steps: int = 10_000_000,
             encoded: Optional[EncodedInstance] = None,
             code: Optional[np.ndarray] = None) -> FastRecord:
    """Compiled counterpart of :func:`planprog.program.run` (no revisit
    detection; step and plan-length counts match the pure interpreter)."""
    ei = encoded or EncodedInstance.from_instance(instance)
    if code is None:
        code = encode_program(program)
    varbuf = ei.init.copy()
    ptrs = ei.ptr_init.copy()
    halt, halt_line, steps, plan_len = _run_encoded(
        code, varbuf, len(varbuf), ptrs, ei.lo, ei.hi,
        ei.goal_idx, ei.goal_val, max_steps)
    final = MachineState(tuple(int(v) for v in varbuf),
                         tuple(int(p) for p in ptrs))
    return FastRecord(HaltReason(halt), int(halt_line), final,
                      int(plan_len), int(steps))


# node-evaluation outcome codes
NODE_SOLUTION = 0
NODE_DEAD = 1
NODE_OPEN = 2


@njit(cache=True)
def _eval_candidates(code, line, cand, var_init, var_off, lo, hi, ptr_init,
                     varbuf, ptrbuf, goal_idx, goal_val, goal_off, max_steps,
                     outcomes, pcmaxs, h5s, plans):  # pragma: no cover
    """Score every candidate instruction poked into ``code[line]``.

    One suite pass per candidate, results per candidate in the out arrays;
    stops early once a candidate solves every instance (later slots are then
    stale).  ``code[line]`` is restored to undefined before returning.
    """
    n_inst = var_off.shape[0] - 1
    for c in range(cand.shape[0]):
        code[line, 0] = cand[c, 0]
        code[line, 1] = cand[c, 1]
        code[line, 2] = cand[c, 2]
        pcmax = 0
        h5 = 0
        plan_total = 0
        all_goal = True
        dead = False
        for t in range(n_inst):
            s = var_off[t]
            e = var_off[t + 1]
            for i in range(s, e):
                varbuf[i] = var_init[i]
            for z in range(ptr_init.shape[1]):
                ptrbuf[t, z] = ptr_init[t, z]
            gs = goal_off[t]
            ge = goal_off[t + 1]
            halt, halt_line, _steps, plan_len = _run_encoded(
                code, varbuf[s:e], e - s, ptrbuf[t], lo[s:e], hi[s:e],
                goal_idx[gs:ge], goal_val[gs:ge], max_steps)
            if (halt == enc.H_END_NO_GOAL or halt == enc.H_INAPPLICABLE
                    or halt == enc.H_STEP_LIMIT):
                dead = True
                break
            if halt == enc.H_UNDEFINED_LINE:
                all_goal = False
                if halt_line > pcmax:
                    pcmax = halt_line
            plan_total += plan_len
            for g in range(gs, ge):
                d = varbuf[s + goal_idx[g]] - goal_val[g]
                h5 += d * d
        if dead:
            outcomes[c] = NODE_DEAD
        elif all_goal:
            outcomes[c] = NODE_SOLUTION
        else:
            outcomes[c] = NODE_OPEN
        pcmaxs[c] = pcmax
        h5s[c] = h5
        plans[c] = plan_total
        if outcomes[c] == NODE_SOLUTION:
            break
    code[line, 0] = enc.OP_UNDEF
    code[line, 1] = 0
    code[line, 2] = 0


class EncodedSuite:
    """A training suite lowered to flat arrays for per-candidate evaluation."""

    def __init__(self, instances: Sequence[Instance]):
        self.encoded = [EncodedInstance.from_instance(i) for i in instances]
        self.varbufs = [e.init.copy() for e in self.encoded]
        self.ptrbufs = [e.ptr_init.copy() for e in self.encoded]
        # flattened copies for the batched kernel
        self._var_init = np.concatenate([e.init for e in self.encoded])
        self._var_off = np.cumsum([0] + [len(e.init) for e in self.encoded]
                                  ).astype(np.int64)
        self._lo = np.concatenate([e.lo for e in self.encoded])
        self._hi = np.concatenate([e.hi for e in self.encoded])
        self._ptr_init = np.stack([e.ptr_init for e in self.encoded])
        self._goal_idx = np.concatenate([e.goal_idx for e in self.encoded])
        self._goal_val = np.concatenate([e.goal_val for e in self.encoded])
        self._goal_off = np.cumsum(
            [0] + [len(e.goal_idx) for e in self.encoded]).astype(np.int64)
        self._varbuf = self._var_init.copy()
        self._ptrbuf = self._ptr_init.copy()

    def evaluate_candidates(self, code: np.ndarray, line: int,
                            cand: np.ndarray, max_steps: int):
        """Batched :meth:`evaluate` over every (opcode, a, b) row of ``cand``
        written into ``code[line]`` in turn.

        Returns per-candidate arrays (outcome, pcmax, h5, plan_total);
        entries after a solving candidate are stale.
        """
        m = cand.shape[0]
        outcomes = np.empty(m, dtype=np.int64)
        pcmaxs = np.empty(m, dtype=np.int64)
        h5s = np.empty(m, dtype=np.int64)
        plans = np.empty(m, dtype=np.int64)
        _eval_candidates(code, line, cand, self._var_init, self._var_off,
                         self._lo, self._hi, self._ptr_init, self._varbuf,
                         self._ptrbuf, self._goal_idx, self._goal_val,
                         self._goal_off, max_steps,
                         outcomes, pcmaxs, h5s, plans)
        return outcomes, pcmaxs, h5s, plans

    def evaluate(self, code: np.ndarray, max_steps: int):
        """Run every instance; returns (outcome, pcmax, h5, plan_total).

        DEAD on any failed run; SOLUTION when every run ends at the goal;
        otherwise OPEN with the maximum line at which a run fell into an
        undefined instruction.  h5 sums squared goal-variable distances of
        the halting states, plan_total sums induced-plan lengths.
        """
        pcmax = 0
        h5 = 0
        plan_total = 0
        all_goal = True
        for ei, varbuf, ptrs in zip(self.encoded, self.varbufs, self.ptrbufs):
            np.copyto(varbuf, ei.init)
            np.copyto(ptrs, ei.ptr_init)
            halt, halt_line, _steps, plan_len = _run_encoded(
                code, varbuf, len(varbuf), ptrs, ei.lo, ei.hi,
                ei.goal_idx, ei.goal_val, max_steps)
            if halt in (enc.H_END_NO_GOAL, enc.H_INAPPLICABLE, enc.H_STEP_LIMIT):
                return NODE_DEAD, 0, 0, 0
            if halt == enc.H_UNDEFINED_LINE:
                all_goal = False
                if halt_line > pcmax:
                    pcmax = halt_line
            plan_total += plan_len
            diff = varbuf[ei.goal_idx] - ei.goal_val
            h5 += int(np.dot(diff, diff))
        if all_goal:
            return NODE_SOLUTION, 0, 0, plan_total
        return NODE_OPEN, pcmax, h5, plan_total
