"""Integer opcodes shared by the pure interpreter and the compiled executor.

Each program line encodes to three small integers (opcode, arg_a, arg_b); a
whole program is the concatenated bytes, which doubles as its canonical
duplicate-detection key.
"""

OP_UNDEF = 0
OP_END = 1
OP_GOTO = 2  # a = target line, b = condition index

OP_INC = 3
OP_DEC = 4
OP_CMP_PTR = 5
OP_CMP_DEREF = 6
OP_SET_PTR = 7

# content actions (dereferenced arguments)
OP_C_INC = 8
OP_C_DEC = 9
OP_C_ADD = 10
OP_C_SUB = 11
OP_C_SET = 12
OP_C_SWAP = 13
OP_C_PICK = 14
OP_C_DROP = 15
OP_C_MOVE = 16

CONTENT_OPS = range(OP_C_INC, OP_C_MOVE + 1)

# halt reasons returned by the executors
H_END_GOAL = 0
H_END_NO_GOAL = 1
H_UNDEFINED_LINE = 2
H_INAPPLICABLE = 3
H_INFINITE = 4
H_STEP_LIMIT = 5
