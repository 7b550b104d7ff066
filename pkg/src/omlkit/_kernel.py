"""Depth-first assignment search compiled with numba when available."""

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

OP_MEET, OP_JOIN, OP_COMP, OP_ARROW = 0, 1, 2, 3
CHK_ORTH, CHK_COMMUTES, CHK_LE, CHK_EQ = 0, 1, 2, 3
# adjacency lists: candidates x with orth[src, x], orth[x, src], comm[src, x], comm[x, src]
REL_ORTH_ROW, REL_ORTH_COL, REL_COMM_ROW, REL_COMM_COL = 0, 1, 2, 3


def adjacency(orth: np.ndarray, comm: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """CSR-style neighbour lists for the four relation directions, ascending."""
    m = orth.shape[0]
    rels = [orth, orth.T, comm, comm.T]
    ptr = np.zeros((4, m + 1), dtype=np.int64)
    width = max(int(r.sum()) for r in rels)
    idx = np.zeros((4, max(width, 1)), dtype=np.int64)
    for k, r in enumerate(rels):
        rows, cols = np.nonzero(r)
        ptr[k, 1:] = np.cumsum(np.bincount(rows, minlength=m))
        idx[k, : len(cols)] = cols
    return ptr, idx


@njit(cache=True, nogil=True)
def search(m, meet, join, ortho, arrow, leq, orth, comm, adj_ptr, adj_idx,
           nvars, reg_init, instr, istart, checks, cstart, dom, ndom, concl,
           first_lo, first_hi, cex):
    """Enumerate assignments in lexicographic order of the variable positions.

    Register ``k`` holds variable ``k``; the instructions in
    ``instr[istart[k]:istart[k+1]]`` compute every subterm whose last variable
    is ``k``, and ``checks[cstart[k]:cstart[k+1]]`` are the hypotheses that
    become decidable once ``k`` is bound.  ``dom[k, :ndom[k]]`` lists
    ``(relation, register)`` pairs restricting the candidates for ``k``; the
    shortest neighbour list is scanned.  Returns ``(tested, failed)``; on
    failure the offending assignment is written to ``cex``.
    """
    reg = reg_init.copy()
    vals = np.empty(nvars, np.int64)
    pos = np.empty(nvars, np.int64)
    end = np.empty(nvars, np.int64)
    lst = np.empty(nvars, np.int64)
    k = 0
    pos[0] = first_lo - 1
    end[0] = first_hi
    lst[0] = -1
    tested = 0
    while k >= 0:
        pos[k] += 1
        if pos[k] >= end[k]:
            k -= 1
            continue
        if lst[k] < 0:
            v = pos[k]
        else:
            v = adj_idx[lst[k], pos[k]]
        vals[k] = v
        reg[k] = v
        for i in range(istart[k], istart[k + 1]):
            op = instr[i, 0]
            a = reg[instr[i, 2]]
            b = reg[instr[i, 3]]
            if op == OP_MEET:
                reg[instr[i, 1]] = meet[a, b]
            elif op == OP_JOIN:
                reg[instr[i, 1]] = join[a, b]
            elif op == OP_COMP:
                reg[instr[i, 1]] = ortho[a]
            else:
                reg[instr[i, 1]] = arrow[a, b]
        ok = True
        for c in range(cstart[k], cstart[k + 1]):
            kind = checks[c, 0]
            a = reg[checks[c, 1]]
            b = reg[checks[c, 2]]
            if kind == CHK_ORTH:
                ok = orth[a, b]
            elif kind == CHK_COMMUTES:
                ok = comm[a, b]
            elif kind == CHK_LE:
                ok = leq[a, b]
            else:
                ok = a == b
            if not ok:
                break
        if not ok:
            continue
        if k == nvars - 1:
            tested += 1
            a = reg[concl[1]]
            b = reg[concl[2]]
            if concl[0] == CHK_LE:
                holds = leq[a, b]
            else:
                holds = a == b
            if not holds:
                for j in range(nvars):
                    cex[j] = vals[j]
                return tested, True
        else:
            k += 1
            lst[k] = -1
            pos[k] = -1
            end[k] = m
            best = m + 1
            for d in range(ndom[k]):
                rel = dom[k, d, 0]
                src = reg[dom[k, d, 1]]
                lo = adj_ptr[rel, src]
                hi = adj_ptr[rel, src + 1]
                if hi - lo < best:
                    best = hi - lo
                    lst[k] = rel
                    pos[k] = lo - 1
                    end[k] = hi
    return tested, False
