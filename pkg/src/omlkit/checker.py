"""Decide conditional lattice equations on a finite OML by exhaustive search.

Variables range over all lattice elements.  The search binds variables one
at a time in a planned order; every hypothesis is tested as soon as its
variables are bound and failing branches are abandoned, and subterms are
evaluated once at the depth where their last variable is fixed.
"""

from __future__ import annotations

import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _kernel
from .lattice import ONE, ZERO, OmlLattice
from .terms import (
    EQ,
    LE,
    Arrow,
    Commutes,
    Comp,
    ConditionalEquation,
    Join,
    Meet,
    One,
    Orthogonal,
    Term,
    Var,
    Zero,
)


class UnboundVariable(KeyError):
    pass


@dataclass
class Verdict:
    holds: bool
    counterexample: dict[str, int] | None = None
    assignments_tested: int = 0
    order: tuple[str, ...] = field(default=(), repr=False)

    def describe(self, lattice: OmlLattice) -> str:
        if self.holds:
            return "holds"
        cex = ", ".join(f"{v}={lattice.label(x)}" for v, x in self.counterexample.items())
        return f"fails at {cex}"


def evaluate_term(l: OmlLattice, t: Term, asg: dict[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return asg[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Zero):
        return ZERO
    if isinstance(t, One):
        return ONE
    if isinstance(t, Comp):
        return int(l.ortho[evaluate_term(l, t.arg, asg)])
    a = evaluate_term(l, t.left, asg)
    b = evaluate_term(l, t.right, asg)
    if isinstance(t, Meet):
        return int(l.meet[a, b])
    if isinstance(t, Join):
        return int(l.join[a, b])
    if isinstance(t, Arrow):
        return l.sasaki_arrow(a, b)
    raise TypeError(f"unknown term node {t!r}")


def hypothesis_holds(l: OmlLattice, h, asg: dict[str, int]) -> bool:
    a = evaluate_term(l, h.left, asg)
    b = evaluate_term(l, h.right, asg)
    if isinstance(h, Orthogonal):
        return bool(l.orth[a, b])
    return bool(l.commutes[a, b])


def conclusion_holds(l: OmlLattice, eq: ConditionalEquation, asg: dict[str, int]) -> bool:
    a = evaluate_term(l, eq.lhs, asg)
    b = evaluate_term(l, eq.rhs, asg)
    return bool(l.leq[a, b]) if eq.relation == LE else a == b


def violates(l: OmlLattice, eq: ConditionalEquation, asg: dict[str, int]) -> bool:
    """True when ``asg`` satisfies every hypothesis but not the conclusion."""
    return all(hypothesis_holds(l, h, asg) for h in eq.hypotheses) and not conclusion_holds(l, eq, asg)


def plan_variable_order(eq: ConditionalEquation) -> list[str]:
    """Greedy order: next is the variable completing the most hypotheses.

    Ties go to the earliest variable in ``eq.variables``.
    """
    hyp_vars = [set(h.left.variables()) | set(h.right.variables()) for h in eq.hypotheses]
    ordered: list[str] = []
    placed: set[str] = set()
    remaining = list(eq.variables)
    while remaining:
        best, best_score = None, -1
        for v in remaining:
            score = sum(1 for hv in hyp_vars if v in hv and hv - {v} <= placed)
            if score > best_score:
                best, best_score = v, score
        ordered.append(best)
        placed.add(best)
        remaining.remove(best)
    return ordered


class _Compiled:
    """Register program for one equation under a fixed variable order."""

    def __init__(self, eq: ConditionalEquation, order: list[str]):
        self.order = order
        n = len(order)
        self.nvars = n
        pos = {v: i for i, v in enumerate(order)}
        self.regs: dict[Term, int] = {}
        self.level: dict[int, int] = {}
        self.init: list[int] = [0] * n + [ZERO, ONE]
        self.regs[Zero()] = n
        self.regs[One()] = n + 1
        self.level[n] = self.level[n + 1] = -1
        for i, v in enumerate(order):
            self.regs[Var(v)] = i
            self.level[i] = i
        self.instrs: list[tuple[int, int, int, int, int]] = []  # level, op, dst, a, b
        self.pos = pos

        checks = []
        for h in eq.hypotheses:
            a, b = self._reg(h.left), self._reg(h.right)
            kind = _kernel.CHK_ORTH if isinstance(h, Orthogonal) else _kernel.CHK_COMMUTES
            checks.append((max(self.level[a], self.level[b]), kind, a, b))
        la, lb = self._reg(eq.lhs), self._reg(eq.rhs)
        self.concl = np.array(
            [_kernel.CHK_LE if eq.relation == LE else _kernel.CHK_EQ, la, lb], dtype=np.int64
        )

        self.const_instrs = [i for i in self.instrs if i[0] < 0]
        self.const_checks = [c for c in checks if c[0] < 0]
        self.instr, self.istart = _grouped(
            [i for i in self.instrs if i[0] >= 0], n, lambda i: i[1:], 4
        )
        self.checks, self.cstart = _grouped([c for c in checks if c[0] >= 0], n, lambda c: c[1:], 3)
        self.dom, self.ndom = self._domains(eq)

    def _domains(self, eq: ConditionalEquation):
        # a hypothesis "x_k R t" with t fixed before x_k limits x_k to R-neighbours of t
        doms: list[list[tuple[int, int]]] = [[] for _ in range(self.nvars)]
        for h in eq.hypotheses:
            orth = isinstance(h, Orthogonal)
            for var_side, other, rel in (
                (h.left, h.right, _kernel.REL_ORTH_COL if orth else _kernel.REL_COMM_COL),
                (h.right, h.left, _kernel.REL_ORTH_ROW if orth else _kernel.REL_COMM_ROW),
            ):
                if not isinstance(var_side, Var):
                    continue
                k = self.pos[var_side.name]
                src = self.regs[other]
                if 0 <= self.level[src] < k and (rel, src) not in doms[k]:
                    doms[k].append((rel, src))
        width = max([len(d) for d in doms] + [1])
        dom = np.zeros((self.nvars, width, 2), dtype=np.int64)
        for k, d in enumerate(doms):
            if d:
                dom[k, : len(d)] = d
        return dom, np.array([len(d) for d in doms], dtype=np.int64)

    def _reg(self, t: Term) -> int:
        r = self.regs.get(t)
        if r is not None:
            return r
        if isinstance(t, Var):
            raise UnboundVariable(t.name)
        if isinstance(t, Comp):
            a = self._reg(t.arg)
            b = a
            op = _kernel.OP_COMP
        else:
            a, b = self._reg(t.left), self._reg(t.right)
            op = {Meet: _kernel.OP_MEET, Join: _kernel.OP_JOIN, Arrow: _kernel.OP_ARROW}[type(t)]
        r = len(self.init)
        self.init.append(0)
        lev = max(self.level[a], self.level[b])
        self.level[r] = lev
        self.regs[t] = r
        self.instrs.append((lev, op, r, a, b))
        return r

    def initial_registers(self, l: OmlLattice) -> tuple[np.ndarray, bool]:
        """Registers with constant subterms filled in; flag is False when a
        variable-free hypothesis already fails."""
        reg = np.array(self.init, dtype=np.int64)
        for _, op, d, a, b in self.const_instrs:
            x, y = reg[a], reg[b]
            if op == _kernel.OP_MEET:
                reg[d] = l.meet[x, y]
            elif op == _kernel.OP_JOIN:
                reg[d] = l.join[x, y]
            elif op == _kernel.OP_COMP:
                reg[d] = l.ortho[x]
            else:
                reg[d] = l.arrow[x, y]
        for _, kind, a, b in self.const_checks:
            rel = l.orth if kind == _kernel.CHK_ORTH else l.commutes
            if not rel[reg[a], reg[b]]:
                return reg, False
        return reg, True


def _grouped(items, n, payload, width):
    items = sorted(items, key=lambda it: it[0])  # stable: keeps dependency order
    arr = np.array([payload(it) for it in items], dtype=np.int64).reshape(-1, width)
    start = np.zeros(n + 1, dtype=np.int64)
    for it in items:
        start[it[0] + 1] += 1
    return arr, np.cumsum(start)


_TABLES: "weakref.WeakKeyDictionary[OmlLattice, tuple]" = weakref.WeakKeyDictionary()


def _tables(l: OmlLattice):
    cached = _TABLES.get(l)
    if cached is None:
        cached = _TABLES[l] = _build_tables(l)
    return cached


def _build_tables(l: OmlLattice):
    ptr, idx = _kernel.adjacency(l.orth, l.commutes)
    return (
        l.size,
        np.ascontiguousarray(l.meet),
        np.ascontiguousarray(l.join),
        np.ascontiguousarray(l.ortho),
        np.ascontiguousarray(l.arrow),
        np.ascontiguousarray(l.leq),
        np.ascontiguousarray(l.orth),
        np.ascontiguousarray(l.commutes),
        ptr,
        idx,
    )


def check_equation(
    l: OmlLattice,
    eq: ConditionalEquation,
    *,
    prune: bool = True,
    order: list[str] | None = None,
    jobs: int = 1,
) -> Verdict:
    """Decide whether ``eq`` holds in ``l``.

    With ``prune=False`` every assignment is enumerated in the same order and
    evaluated term by term; it is much slower and exists as a reference.
    ``jobs > 1`` splits the first variable's range across threads; the verdict
    and counterexample do not depend on it.
    """
    order = list(order) if order is not None else plan_variable_order(eq)
    if sorted(order) != sorted(eq.variables):
        raise ValueError("order must be a permutation of the equation's variables")
    if not prune:
        return _brute_force(l, eq, order)
    if not order:
        ok = all(hypothesis_holds(l, h, {}) for h in eq.hypotheses)
        holds = not ok or conclusion_holds(l, eq, {})
        return Verdict(holds, None if holds else {}, 1, ())

    prog = _Compiled(eq, order)
    reg, satisfiable = prog.initial_registers(l)
    if not satisfiable:
        return Verdict(True, None, 0, tuple(order))
    tables = _tables(l)
    m = l.size

    def run(lo, hi):
        cex = np.zeros(prog.nvars, dtype=np.int64)
        tested, failed = _kernel.search(
            *tables, prog.nvars, reg, prog.instr, prog.istart, prog.checks,
            prog.cstart, prog.dom, prog.ndom, prog.concl, lo, hi, cex,
        )
        return int(tested), bool(failed), cex

    if jobs <= 1:
        results = [run(0, m)]
    else:
        bounds = np.linspace(0, m, min(jobs, m) + 1).astype(int)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda ab: run(*ab), zip(bounds[:-1], bounds[1:])))

    total = 0
    for tested, failed, cex in results:
        total += tested
        if failed:
            asg = {v: int(cex[i]) for i, v in enumerate(order)}
            return Verdict(False, asg, total, tuple(order))
    return Verdict(True, None, total, tuple(order))


def _brute_force(l: OmlLattice, eq: ConditionalEquation, order: list[str]) -> Verdict:
    tested = 0
    for values in product(range(l.size), repeat=len(order)):
        asg = dict(zip(order, values))
        tested += 1
        if violates(l, eq, asg):
            return Verdict(False, asg, tested, tuple(order))
    return Verdict(True, None, tested, tuple(order))
