"""Builtin library of content actions shared by the benchmark domains.

Arithmetic actions (inc, dec, add, sub, set over contents) set the flags from
the new value of their first argument; structural actions (swap, pick, drop,
move) leave flags alone.
"""

from __future__ import annotations

from .model import ActionSchema
from . import encoding as enc


def _inc(v):
    return (v[0] + 1,)


def _dec(v):
    return (v[0] - 1,)


def _add(v):
    return (v[0] + v[1], v[1])


def _sub(v):
    return (v[0] - v[1], v[1])


def _set(v):
    return (v[1], v[1])


def _swap(v):
    return (v[1], v[0])


def _pick(v):
    # ball must be in the robot's room (carried balls have value 2, which the
    # robot's room value never takes)
    ball, robot = v
    if ball != robot:
        return None
    return (2, robot)


def _drop(v):
    ball, robot = v
    if ball != 2:
        return None
    return (robot, robot)


def _move(v):
    (robot,) = v
    if robot not in (0, 1):
        return None
    return (1 - robot,)


INC_C = ActionSchema("inc", 1, _inc, sets_flags=True, kernel_op=enc.OP_C_INC)
DEC_C = ActionSchema("dec", 1, _dec, sets_flags=True, kernel_op=enc.OP_C_DEC)
ADD = ActionSchema("add", 2, _add, sets_flags=True, allow_self=True,
                   kernel_op=enc.OP_C_ADD)
SUB = ActionSchema("sub", 2, _sub, sets_flags=True, allow_self=True,
                   kernel_op=enc.OP_C_SUB)
SET_C = ActionSchema("set", 2, _set, sets_flags=True, kernel_op=enc.OP_C_SET)
SWAP = ActionSchema("swap", 2, _swap, symmetric=True, kernel_op=enc.OP_C_SWAP)
PICK = ActionSchema("pick", 2, _pick, kernel_op=enc.OP_C_PICK)
DROP = ActionSchema("drop", 2, _drop, kernel_op=enc.OP_C_DROP)
MOVE = ActionSchema("move", 1, _move, kernel_op=enc.OP_C_MOVE)

BUILTIN_ACTIONS = {a.name: a for a in
                   (INC_C, DEC_C, ADD, SUB, SET_C, SWAP, PICK, DROP, MOVE)}
