"""
Program and instance files
==========================

Both interchange formats are plain text and round-trip exactly: programs are
one instruction per numbered line, instances are key-value lines.  The same
formats back the planprog CLI (synth / validate / gen / bench).
"""

from planprog import (parse_instance, parse_program, serialize_instance,
                      serialize_program)
from planprog.domains import generate_instance, reference_program

# Serialize a generated instance; comments and omitted defaults are allowed
# on the way back in.
inst = generate_instance("gripper", 4)
text = serialize_instance(inst)
print(text)
assert parse_instance(text) == inst

# Program text: undefined lines get an explicit placeholder, pointer names
# are 1-based, content-action arguments are starred.
program = reference_program("gripper")
text = serialize_program(program)
print(text)
assert parse_program(text, pointer_count=4) == program

# Parse errors carry the offending line.
try:
    parse_program("0. goto(1,EQ)\n1. end")
except ValueError as e:
    print("rejected:", e)
