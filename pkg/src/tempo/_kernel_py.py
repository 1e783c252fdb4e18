"""Pure-Python bitmask evaluation kernel.

Reference implementation of the routines in ``_kernel_c.pyx``; both expose the
same two functions with the same argument conventions (see ``tempo.kernel``).
A formula table holds, for every assignment of the program's variable slots, a
bitmask of the worlds where the subformula is true.
"""

BOT, ATOM, AND, OR, IMP, BOXF, BOXP, DIAF, DIAP, FORALL, EXISTS = range(11)


def _digits(n_slots, n_elem):
    n_assign = n_elem ** n_slots
    digits = []
    for a in range(n_assign):
        row = []
        r = a
        for _ in range(n_slots):
            row.append(r % n_elem)
            r //= n_elem
        digits.append(row)
    return digits


def _run(nodes, atoms, digits, n_slots, n_elem, n_world, succ, pred, has, interp):
    full = (1 << n_world) - 1
    n_assign = len(digits)
    powers = [n_elem ** j for j in range(n_slots)]
    tables = []
    for op, ca, cb, cc in nodes:
        if op == BOT:
            t = [0] * n_assign
        elif op == ATOM:
            base, arity = atoms[ca][0], atoms[ca][1]
            slots = atoms[ca][2:2 + arity]
            t = []
            for row in digits:
                tup = 0
                for s in slots:
                    tup = tup * n_elem + row[s]
                t.append(interp[base + tup])
        elif op == AND:
            x, y = tables[ca], tables[cb]
            t = [p & q for p, q in zip(x, y)]
        elif op == OR:
            x, y = tables[ca], tables[cb]
            t = [p | q for p, q in zip(x, y)]
        elif op == IMP:
            x, y = tables[ca], tables[cb]
            t = [(~p | q) & full for p, q in zip(x, y)]
        elif op in (BOXF, BOXP, DIAF, DIAP):
            rel = succ if op in (BOXF, DIAF) else pred
            box = op in (BOXF, BOXP)
            t = []
            for m in tables[ca]:
                r = 0
                for w in range(n_world):
                    if box:
                        if rel[w] & ~m == 0:
                            r |= 1 << w
                    elif rel[w] & m:
                        r |= 1 << w
                t.append(r)
        elif op in (FORALL, EXISTS):
            child = tables[ca]
            p = powers[cc]
            t = []
            for a in range(n_assign):
                base_a = a - digits[a][cc] * p
                if op == FORALL:
                    r = full
                    for d in range(n_elem):
                        r &= child[base_a + d * p] | ~has[d]
                    t.append(r & full)
                else:
                    r = 0
                    for d in range(n_elem):
                        r |= child[base_a + d * p] & has[d]
                    t.append(r)
        else:
            raise ValueError(f"bad opcode {op}")
        tables.append(t)
    return tables[-1]


def _prep(nodes, atoms, succ, pred, has):
    nodes = [tuple(int(v) for v in row) for row in nodes]
    atoms = [tuple(int(v) for v in row) for row in atoms]
    return nodes, atoms, [int(v) for v in succ], [int(v) for v in pred], [int(v) for v in has]


def eval_table(nodes, atoms, n_slots, n_elem, n_world, succ, pred, has, interp):
    """Root table of the program under one interpretation."""
    nodes, atoms, succ, pred, has = _prep(nodes, atoms, succ, pred, has)
    digits = _digits(n_slots, n_elem)
    return _run(nodes, atoms, digits, n_slots, n_elem, n_world, succ, pred, has,
                [int(v) for v in interp])


def search(nodes, atoms, n_slots, n_elem, n_world, succ, pred, has,
           choice_off, choice_val, free_slots, mode, cap, out_interp):
    """Enumerate interpretations until one falsifies the root formula.

    Returns ``(status, examined, assignment_index, world)`` where status is
    0 (none falsifies), 1 (found; ``out_interp`` holds it) or 2 (cap reached).
    Mode 0 counts every world under every assignment; mode 1 only worlds
    whose domain contains the values of the free slots.
    """
    nodes, atoms, succ, pred, has = _prep(nodes, atoms, succ, pred, has)
    choice_off = [int(v) for v in choice_off]
    choice_val = [int(v) for v in choice_val]
    free = [j for j in range(n_slots) if free_slots[j]]
    digits = _digits(n_slots, n_elem)
    full = (1 << n_world) - 1
    relevant = []
    for row in digits:
        r = full
        if mode == 1:
            for j in free:
                r &= has[row[j]]
        relevant.append(r)

    n_cells = len(choice_off) - 1
    idx = [0] * n_cells
    interp = [choice_val[choice_off[c]] for c in range(n_cells)]
    examined = 0
    while True:
        if examined >= cap:
            return 2, examined, -1, -1
        examined += 1
        root = _run(nodes, atoms, digits, n_slots, n_elem, n_world, succ, pred, has, interp)
        for a, m in enumerate(root):
            bad = relevant[a] & ~m
            if bad:
                for c in range(n_cells):
                    out_interp[c] = interp[c]
                return 1, examined, a, (bad & -bad).bit_length() - 1
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
            return 0, examined, -1, -1
