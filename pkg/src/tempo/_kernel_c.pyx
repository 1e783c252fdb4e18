# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask evaluation kernel (same contract as ``_kernel_py``)."""
from libc.stdint cimport uint64_t, int32_t, int64_t
from libc.stdlib cimport malloc, free

cdef enum:
    BOT = 0
    ATOM = 1
    AND = 2
    OR = 3
    IMP = 4
    BOXF = 5
    BOXP = 6
    DIAF = 7
    DIAP = 8
    FORALL = 9
    EXISTS = 10


cdef inline uint64_t _box(const uint64_t[:] rel, int n_world, uint64_t m) nogil:
    cdef uint64_t r = 0
    cdef int w
    for w in range(n_world):
        if rel[w] & ~m == 0:
            r |= (<uint64_t>1) << w
    return r


cdef inline uint64_t _dia(const uint64_t[:] rel, int n_world, uint64_t m) nogil:
    cdef uint64_t r = 0
    cdef int w
    for w in range(n_world):
        if rel[w] & m:
            r |= (<uint64_t>1) << w
    return r


cdef void _run(const int32_t[:, :] nodes, const int32_t[:, :] atoms, int32_t* digits,
               int64_t* powers, int n_slots, int n_elem, int n_world, int64_t n_assign,
               const uint64_t[:] succ, const uint64_t[:] pred, const uint64_t[:] has,
               uint64_t* interp, uint64_t* tables) nogil:
    cdef int n_nodes = nodes.shape[0]
    cdef uint64_t full = ((<uint64_t>1) << n_world) - 1
    cdef int i, op, ca, cb, cc, d, k, arity, base
    cdef int64_t a, base_a, p, tup
    cdef uint64_t r
    cdef uint64_t* t
    cdef uint64_t* x
    cdef uint64_t* y
    for i in range(n_nodes):
        op = nodes[i, 0]
        ca = nodes[i, 1]
        cb = nodes[i, 2]
        cc = nodes[i, 3]
        t = tables + i * n_assign
        if op == BOT:
            for a in range(n_assign):
                t[a] = 0
        elif op == ATOM:
            base = atoms[ca, 0]
            arity = atoms[ca, 1]
            for a in range(n_assign):
                tup = 0
                for k in range(arity):
                    tup = tup * n_elem + digits[a * n_slots + atoms[ca, 2 + k]]
                t[a] = interp[base + tup]
        elif op == AND or op == OR or op == IMP:
            x = tables + ca * n_assign
            y = tables + cb * n_assign
            if op == AND:
                for a in range(n_assign):
                    t[a] = x[a] & y[a]
            elif op == OR:
                for a in range(n_assign):
                    t[a] = x[a] | y[a]
            else:
                for a in range(n_assign):
                    t[a] = (~x[a] | y[a]) & full
        elif op == BOXF or op == DIAF or op == BOXP or op == DIAP:
            x = tables + ca * n_assign
            for a in range(n_assign):
                if op == BOXF:
                    t[a] = _box(succ, n_world, x[a])
                elif op == BOXP:
                    t[a] = _box(pred, n_world, x[a])
                elif op == DIAF:
                    t[a] = _dia(succ, n_world, x[a])
                else:
                    t[a] = _dia(pred, n_world, x[a])
        else:
            x = tables + ca * n_assign
            p = powers[cc]
            for a in range(n_assign):
                base_a = a - digits[a * n_slots + cc] * p
                if op == FORALL:
                    r = full
                    for d in range(n_elem):
                        r &= x[base_a + d * p] | ~has[d]
                    t[a] = r & full
                else:
                    r = 0
                    for d in range(n_elem):
                        r |= x[base_a + d * p] & has[d]
                    t[a] = r


cdef int64_t _setup(int n_slots, int n_elem, int32_t** digits, int64_t** powers) except -1:
    cdef int64_t n_assign = 1
    cdef int j
    cdef int64_t a, rem
    for j in range(n_slots):
        n_assign *= n_elem
    digits[0] = <int32_t*> malloc(sizeof(int32_t) * (n_assign * n_slots + 1))
    powers[0] = <int64_t*> malloc(sizeof(int64_t) * (n_slots + 1))
    if digits[0] == NULL or powers[0] == NULL:
        raise MemoryError()
    powers[0][0] = 1
    for j in range(1, n_slots + 1):
        powers[0][j] = powers[0][j - 1] * n_elem
    for a in range(n_assign):
        rem = a
        for j in range(n_slots):
            digits[0][a * n_slots + j] = rem % n_elem
            rem = rem // n_elem
    return n_assign


def eval_table(const int32_t[:, :] nodes, const int32_t[:, :] atoms, int n_slots, int n_elem,
               int n_world, const uint64_t[:] succ, const uint64_t[:] pred,
               const uint64_t[:] has, const uint64_t[:] interp):
    cdef int32_t* digits = NULL
    cdef int64_t* powers = NULL
    cdef int64_t n_assign = _setup(n_slots, n_elem, &digits, &powers)
    cdef int n_nodes = nodes.shape[0]
    cdef int64_t n_cells = interp.shape[0]
    cdef uint64_t* buf = <uint64_t*> malloc(sizeof(uint64_t) * (n_nodes * n_assign + 1))
    cdef uint64_t* ip = <uint64_t*> malloc(sizeof(uint64_t) * (n_cells + 1))
    cdef int64_t a
    if buf == NULL or ip == NULL:
        raise MemoryError()
    try:
        for a in range(n_cells):
            ip[a] = interp[a]
        _run(nodes, atoms, digits, powers, n_slots, n_elem, n_world, n_assign,
             succ, pred, has, ip, buf)
        return [buf[(n_nodes - 1) * n_assign + a] for a in range(n_assign)]
    finally:
        free(buf)
        free(ip)
        free(digits)
        free(powers)


def search(const int32_t[:, :] nodes, const int32_t[:, :] atoms, int n_slots, int n_elem,
           int n_world, const uint64_t[:] succ, const uint64_t[:] pred, const uint64_t[:] has,
           const int64_t[:] choice_off, const uint64_t[:] choice_val,
           const int32_t[:] free_slots, int mode, int64_t cap, uint64_t[:] out_interp):
    cdef int32_t* digits = NULL
    cdef int64_t* powers = NULL
    cdef int64_t n_assign = _setup(n_slots, n_elem, &digits, &powers)
    cdef int n_nodes = nodes.shape[0]
    cdef int64_t n_cells = choice_off.shape[0] - 1
    cdef uint64_t full = ((<uint64_t>1) << n_world) - 1
    cdef uint64_t* buf = <uint64_t*> malloc(sizeof(uint64_t) * (n_nodes * n_assign + 1))
    cdef uint64_t* relevant = <uint64_t*> malloc(sizeof(uint64_t) * (n_assign + 1))
    cdef uint64_t* interp = <uint64_t*> malloc(sizeof(uint64_t) * (n_cells + 1))
    cdef int64_t* idx = <int64_t*> malloc(sizeof(int64_t) * (n_cells + 1))
    cdef int64_t a, c, examined = 0
    cdef int j, status = 0, world = -1
    cdef int64_t found_a = -1
    cdef uint64_t r, bad
    cdef uint64_t* root
    if buf == NULL or relevant == NULL or interp == NULL or idx == NULL:
        raise MemoryError()
    try:
        with nogil:
            for a in range(n_assign):
                r = full
                if mode == 1:
                    for j in range(n_slots):
                        if free_slots[j]:
                            r &= has[digits[a * n_slots + j]]
                relevant[a] = r
            for c in range(n_cells):
                idx[c] = 0
                interp[c] = choice_val[choice_off[c]]
            root = buf + (n_nodes - 1) * n_assign
            while True:
                if examined >= cap:
                    status = 2
                    break
                examined += 1
                _run(nodes, atoms, digits, powers, n_slots, n_elem, n_world, n_assign,
                     succ, pred, has, interp, buf)
                for a in range(n_assign):
                    bad = relevant[a] & ~root[a]
                    if bad:
                        found_a = a
                        world = 0
                        while not (bad >> world) & 1:
                            world += 1
                        break
                if found_a >= 0:
                    status = 1
                    for c in range(n_cells):
                        out_interp[c] = interp[c]
                    break
                c = 0
                while c < n_cells:
                    idx[c] += 1
                    if choice_off[c] + idx[c] < choice_off[c + 1]:
                        interp[c] = choice_val[choice_off[c] + idx[c]]
                        break
                    idx[c] = 0
                    interp[c] = choice_val[choice_off[c]]
                    c += 1
                if c == n_cells:
                    status = 0
                    break
        return status, examined, found_a, world
    finally:
        free(buf)
        free(relevant)
        free(interp)
        free(idx)
        free(digits)
        free(powers)
