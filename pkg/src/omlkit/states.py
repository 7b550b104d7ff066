"""States on a finite OML as solutions of exact linear programs.

A state is fixed by its atom values: every block's atoms sum to 1.  Any
element's measure is then a linear expression in those values, so only atom
variables enter the programs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .lattice import OmlLattice
from .ratlp import EQ, INFEASIBLE, LE, OPTIMAL, RationalLP, solve

NO_STATE = "no-state"
UNIQUE = "unique"
MANY = "many"

INFINITY = math.inf


@dataclass(frozen=True)
class LinearExpr:
    """``sum(coeffs[atom] * m(atom)) + const`` over diagram atom indices."""

    coeffs: tuple[tuple[int, Fraction], ...]
    const: Fraction

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def value(self, atom_values: Sequence[Fraction]) -> Fraction:
        return sum((c * atom_values[i] for i, c in self.coeffs), self.const)

    def format(self, labels: Sequence[str]) -> str:
        parts = []
        for i, c in self.coeffs:
            term = f"m{labels[i]}" if abs(c) == 1 else f"{abs(c)} m{labels[i]}"
            parts.append(("-" if c < 0 else "+", term))
        if self.const or not parts:
            parts.insert(0, ("-" if self.const < 0 else "+", str(abs(self.const))))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, p in parts[1:]:
            out += f" {sign} {p}"
        return out


def measure_expr(l: OmlLattice, x: int) -> LinearExpr:
    """Measure of element ``x`` as a linear expression in atom values."""
    e = l.elements[x]
    if e.kind == "zero":
        return LinearExpr((), Fraction(0))
    if e.kind == "one":
        return LinearExpr((), Fraction(1))
    if e.kind == "atom":
        return LinearExpr(((e.atom, Fraction(1)),), Fraction(0))
    if e.kind == "coatom":
        return LinearExpr(((e.atom, Fraction(-1)),), Fraction(1))
    return LinearExpr(tuple((a, Fraction(1)) for a in sorted(e.subset)), Fraction(0))


@dataclass(frozen=True)
class StateVector:
    values: tuple[Fraction, ...]
    labels: tuple[str, ...]

    def __getitem__(self, label: str) -> Fraction:
        return self.values[self.labels.index(label)]

    def measure(self, l: OmlLattice, x: int) -> Fraction:
        return measure_expr(l, x).value(self.values)

    def format(self) -> str:
        return " ".join(f"{lab}={v}" for lab, v in zip(self.labels, self.values))


def state_lp(l: OmlLattice, relaxed: Sequence[bool] | None = None) -> RationalLP:
    """Block constraints over atom variables ``m<label>``; relaxed blocks use ``<= 1``."""
    d = l.diagram
    lp = RationalLP(d.num_atoms, names=tuple(f"m{lab}" for lab in d.labels))
    for i, block in enumerate(d.blocks):
        rel = LE if relaxed is not None and relaxed[i] else EQ
        lp.add_constraint({a: 1 for a in block}, rel, 1)
    return lp


def _pin(lp: RationalLP, expr: LinearExpr, value) -> None:
    lp.add_constraint(expr.as_dict(), EQ, Fraction(value) - expr.const)


def _minimize(lp: RationalLP, expr: LinearExpr) -> None:
    lp.set_objective(expr.as_dict(), expr.const)


def pair_lp(l: OmlLattice, a: int, b: int, relaxed: Sequence[bool] | None = None) -> RationalLP:
    """Minimize ``m(b)`` over states with ``m(a) = 1``."""
    lp = state_lp(l, relaxed)
    _pin(lp, measure_expr(l, a), 1)
    _minimize(lp, measure_expr(l, b))
    return lp


def admits_state(l: OmlLattice) -> StateVector | None:
    out = solve(state_lp(l))
    if out.status != OPTIMAL:
        return None
    return StateVector(out.point, l.diagram.labels)


def unique_point(lp: RationalLP) -> tuple[str, tuple[Fraction, ...] | None]:
    """Whether the feasible region of ``lp`` is empty, a single point or larger."""
    base = solve(lp)
    if base.status != OPTIMAL:
        return NO_STATE, None
    for i in range(lp.num_vars):
        for sign in (1, -1):
            probe = lp.copy()
            probe.set_objective({i: sign})
            if solve(probe).point[i] != base.point[i]:
                return MANY, base.point
    return UNIQUE, base.point


def unique_state(l: OmlLattice) -> tuple[str, StateVector | None]:
    """``(NO_STATE, None)``, ``(UNIQUE, state)`` or ``(MANY, some state)``."""
    kind, point = unique_point(state_lp(l))
    return kind, None if point is None else StateVector(point, l.diagram.labels)


@dataclass(frozen=True)
class StrongWitness:
    a: int
    b: int
    min_value: Fraction | float  # INFINITY when no state gives m(a) = 1
    lp: RationalLP

    def format(self, l: OmlLattice) -> str:
        mv = "inf" if self.min_value == INFINITY else str(self.min_value)
        return f"witness {l.label(self.a)}, {l.label(self.b)}; min {mv}"


@dataclass(frozen=True)
class StrongVerdict:
    strong: bool
    witness: StrongWitness | None = None

    def format(self, l: OmlLattice) -> str:
        if self.strong:
            return "strong"
        return f"not strong; {self.witness.format(l)}"


def _pair_outcome(l: OmlLattice, a: int, b: int) -> tuple[Fraction | float, RationalLP, tuple | None]:
    lp = pair_lp(l, a, b)
    out = solve(lp)
    if out.status == INFEASIBLE:
        return INFINITY, lp, None
    return out.value, lp, out.point


def separating_failures(l: OmlLattice, jobs: int = 1) -> Iterator[StrongWitness]:
    """Every pair ``a`` not below ``b`` for which no state has ``m(a) = 1, m(b) < 1``.

    Pairs come in :meth:`OmlLattice.nonleq_pairs` order.  States found along
    the way are reused to skip pairs they already separate.
    """
    found: list[tuple[Fraction, ...]] = []
    exprs = [measure_expr(l, x) for x in range(l.size)]

    def separated(a, b):
        ea, eb = exprs[a], exprs[b]
        return any(ea.value(s) == 1 and eb.value(s) < 1 for s in found)

    pairs = l.nonleq_pairs()
    chunk = max(1, jobs)
    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        i = 0
        while i < len(pairs):
            batch = []
            while i < len(pairs) and len(batch) < chunk:
                a, b = pairs[i]
                i += 1
                if not separated(a, b):
                    batch.append((a, b))
            if not batch:
                continue
            if pool is None:
                results = [_pair_outcome(l, a, b) for a, b in batch]
            else:
                results = list(pool.map(lambda ab: _pair_outcome(l, *ab), batch))
            for (a, b), (value, lp, point) in zip(batch, results):
                if value < 1:
                    found.append(point)
                else:
                    yield StrongWitness(a, b, value, lp)
    finally:
        if pool is not None:
            pool.shutdown()


def strong_state_check(l: OmlLattice, jobs: int = 1) -> StrongVerdict:
    """Decide whether ``l`` admits a strong set of states.

    The witness is the first pair, in :meth:`OmlLattice.nonleq_pairs` order,
    that no state separates.
    """
    for w in separating_failures(l, jobs):
        return StrongVerdict(False, w)
    return StrongVerdict(True)
