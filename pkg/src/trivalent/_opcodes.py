# Postfix opcodes shared by both kernel backends. OP_ATOM takes one operand.
OP_ATOM = 0
OP_TOP = 1
OP_BOT = 2
OP_NOT = 3
OP_AND = 4
OP_OR = 5
OP_COND = 6
