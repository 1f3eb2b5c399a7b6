"""Pure-Python truth-table kernel.

Works column-wise: every subformula becomes one ``bytes`` column holding its
value code (0, 1, 2 for 0, 1/2, 1) at each valuation row. Binary connectives
are computed with big-int addition of ``3*x`` and ``y`` followed by a single
``bytes.translate`` through the 9-entry table, so the inner loop stays in C.
"""

from __future__ import annotations

from typing import Sequence

from ._opcodes import OP_AND, OP_ATOM, OP_BOT, OP_COND, OP_NOT, OP_OR, OP_TOP

BACKEND = "python"

_NEG = bytes([2, 1, 0]) + bytes(253)
_TIMES3 = bytes(3 * i if i < 3 else 0 for i in range(256))


def _translation(table: bytes) -> bytes:
    return bytes(table) + bytes(256 - len(table))


def atom_column(k: int, n_atoms: int, bivalent: bool) -> bytes:
    values = (0, 2) if bivalent else (0, 1, 2)
    base = len(values)
    rep = base ** (n_atoms - 1 - k)
    block = b"".join(bytes([v]) * rep for v in values)
    return block * (base**k)


def evaluate(
    program: Sequence[int],
    n_atoms: int,
    bivalent: bool,
    and_table: bytes,
    or_table: bytes,
    cond_table: bytes,
) -> bytes:
    """Evaluate a postfix ``program`` at every valuation of ``n_atoms`` atoms.

    Rows are in lexicographic order with the first atom most significant.
    """
    rows = (2 if bivalent else 3) ** n_atoms
    tables = {
        OP_AND: _translation(and_table),
        OP_OR: _translation(or_table),
        OP_COND: _translation(cond_table),
    }
    cache: dict[int, bytes] = {}
    stack: list[bytes] = []
    i = 0
    n = len(program)
    while i < n:
        op = program[i]
        if op == OP_ATOM:
            k = program[i + 1]
            col = cache.get(k)
            if col is None:
                col = cache[k] = atom_column(k, n_atoms, bivalent)
            stack.append(col)
            i += 2
            continue
        if op == OP_TOP:
            stack.append(b"\x02" * rows)
        elif op == OP_BOT:
            stack.append(b"\x00" * rows)
        elif op == OP_NOT:
            stack.append(stack.pop().translate(_NEG))
        else:
            y = stack.pop()
            x = stack.pop()
            code = int.from_bytes(x.translate(_TIMES3), "big") + int.from_bytes(y, "big")
            stack.append(code.to_bytes(rows, "big").translate(tables[op]))
        i += 1
    (result,) = stack
    return result
