# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truth-table kernel; column-at-a-time stack machine."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

BACKEND = "cython"

cdef enum:
    OP_ATOM = 0
    OP_TOP = 1
    OP_BOT = 2
    OP_NOT = 3
    OP_AND = 4
    OP_OR = 5
    OP_COND = 6


cdef void _atom_column(unsigned char *col, Py_ssize_t rows, int base, Py_ssize_t rep,
                       const unsigned char *atom_code) nogil:
    # runs of length rep cycling through the atom values
    cdef Py_ssize_t r = 0
    cdef int v = 0
    while r < rows:
        memset(col + r, atom_code[v], rep)
        r += rep
        v += 1
        if v == base:
            v = 0


cdef void _binary(unsigned char *x, const unsigned char *y, Py_ssize_t rows,
                  const unsigned char *table) nogil:
    cdef Py_ssize_t r
    for r in range(rows):
        x[r] = table[3 * x[r] + y[r]]


def evaluate(program, int n_atoms, bint bivalent, const unsigned char[:] and_table,
             const unsigned char[:] or_table, const unsigned char[:] cond_table):
    cdef Py_ssize_t plen = len(program)
    cdef int base = 2 if bivalent else 3
    cdef Py_ssize_t rows = 1
    cdef Py_ssize_t r, i, k, rep
    cdef int sp = 0, depth = 0, op
    cdef unsigned char atom_code[3]
    cdef unsigned char tables[3][9]
    cdef unsigned char *top
    for k in range(n_atoms):
        rows *= base
    for k in range(9):
        tables[0][k] = and_table[k]
        tables[1][k] = or_table[k]
        tables[2][k] = cond_table[k]
    if bivalent:
        atom_code[0] = 0
        atom_code[1] = 2
    else:
        atom_code[0] = 0
        atom_code[1] = 1
        atom_code[2] = 2

    cdef int *code = <int *> malloc(max(plen, 1) * sizeof(int))
    if code == NULL:
        raise MemoryError()
    cdef unsigned char *stack = NULL
    try:
        # copy the program and find the peak stack depth
        i = 0
        while i < plen:
            op = program[i]
            code[i] = op
            if op == OP_ATOM:
                code[i + 1] = program[i + 1]
                sp += 1
                i += 2
            else:
                if op == OP_TOP or op == OP_BOT:
                    sp += 1
                elif op != OP_NOT:
                    sp -= 1
                i += 1
            if sp > depth:
                depth = sp
        stack = <unsigned char *> malloc(max(depth, 1) * rows)
        if stack == NULL:
            raise MemoryError()
        sp = 0
        i = 0
        with nogil:
            while i < plen:
                op = code[i]
                top = stack + sp * rows
                if op == OP_ATOM:
                    rep = 1
                    for k in range(n_atoms - 1 - code[i + 1]):
                        rep *= base
                    _atom_column(top, rows, base, rep, atom_code)
                    sp += 1
                    i += 2
                    continue
                if op == OP_TOP:
                    memset(top, 2, rows)
                    sp += 1
                elif op == OP_BOT:
                    memset(top, 0, rows)
                    sp += 1
                elif op == OP_NOT:
                    top -= rows
                    for r in range(rows):
                        top[r] = 2 - top[r]
                else:
                    sp -= 1
                    _binary(top - 2 * rows, top - rows, rows, tables[op - OP_AND])
                i += 1
        return (<char *> stack)[:rows]
    finally:
        free(code)
        free(stack)
