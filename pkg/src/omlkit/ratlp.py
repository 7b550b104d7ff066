"""Exact rational linear programming by the two-phase simplex method.

All arithmetic uses :class:`fractions.Fraction`, so an optimum of exactly 1
can be told apart from anything smaller.  Bland's rule guarantees termination.
Problems have the form::

    minimize    c . x + offset
    subject to  a_i . x  (= or <=)  b_i
                x >= 0
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

Number = Union[int, Fraction]

EQ = "="
LE = "<="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction


@dataclass
class RationalLP:
    num_vars: int
    constraints: list[Constraint] = field(default_factory=list)
    objective: tuple[Fraction, ...] = ()
    offset: Fraction = Fraction(0)
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.objective:
            self.objective = (Fraction(0),) * self.num_vars
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length must equal num_vars")

    def _vector(self, coeffs: Sequence[Number] | Mapping[int, Number]) -> tuple[Fraction, ...]:
        if isinstance(coeffs, Mapping):
            vec = [Fraction(0)] * self.num_vars
            for j, c in coeffs.items():
                vec[j] += Fraction(c)
            return tuple(vec)
        if len(coeffs) != self.num_vars:
            raise ValueError("coefficient vector has wrong length")
        return tuple(Fraction(c) for c in coeffs)

    def add_constraint(self, coeffs, relation: str, rhs: Number) -> None:
        if relation not in (EQ, LE):
            raise ValueError(f"relation must be {EQ!r} or {LE!r}")
        self.constraints.append(Constraint(self._vector(coeffs), relation, Fraction(rhs)))

    def set_objective(self, coeffs, offset: Number = 0) -> None:
        self.objective = self._vector(coeffs)
        self.offset = Fraction(offset)

    def copy(self) -> RationalLP:
        return RationalLP(self.num_vars, list(self.constraints), self.objective, self.offset, self.names)

    def name(self, j: int) -> str:
        return self.names[j] if self.names else f"x{j}"

    def to_lp_format(self) -> str:
        """Render in lp_solve-style text (``min: ...; a + b = 1; ...``)."""

        def expr(coeffs, const=Fraction(0)):
            parts = []
            for j, c in enumerate(coeffs):
                if c == 0:
                    continue
                mag = "" if abs(c) == 1 else f"{abs(c)} "
                sign = "-" if c < 0 else "+"
                parts.append((sign, f"{mag}{self.name(j)}"))
            if const:
                parts.append(("-" if const < 0 else "+", str(abs(const))))
            if not parts:
                return "0"
            first_sign, first = parts[0]
            out = ("-" if first_sign == "-" else "") + first
            for sign, p in parts[1:]:
                out += f" {sign} {p}"
            return out

        lines = [f"min: {expr(self.objective, self.offset)};"]
        for c in self.constraints:
            lines.append(f"{expr(c.coeffs)} {c.relation} {c.rhs};")
        return "\n".join(lines)


@dataclass
class LpOutcome:
    status: str
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows  # each row: coefficients..., rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            self.rows[r] = row = [v / p for v in row]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    self.rows[i] = [a - f * b for a, b in zip(other, row)]
        self.basis[r] = c

    def reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        ncols = len(self.rows[0]) - 1
        red = list(cost) + [Fraction(0)]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                for j in range(ncols + 1):
                    if row[j]:
                        red[j] -= cb * row[j]
        return red  # last entry is -(objective value)

    def optimize(self, cost: list[Fraction], allowed: int) -> bool:
        """Minimize ``cost`` over the first ``allowed`` columns; False if unbounded."""
        while True:
            red = self.reduced_costs(cost)
            enter = next((j for j in range(allowed) if red[j] < 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return False
            self.pivot(best[1], enter)


def solve(lp: RationalLP) -> LpOutcome:
    """Minimize ``lp`` exactly."""
    n = lp.num_vars
    cons = lp.constraints
    n_slack = sum(1 for c in cons if c.relation == LE)
    m = len(cons)

    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art_rows: list[int] = []
    slack = n
    for i, c in enumerate(cons):
        row = list(c.coeffs) + [Fraction(0)] * n_slack
        rhs = c.rhs
        slack_col = None
        if c.relation == LE:
            row[slack] = Fraction(1)
            slack_col = slack
            slack += 1
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            slack_col = None
        rows.append(row + [rhs])
        if slack_col is not None:
            basis.append(slack_col)
        else:
            basis.append(-1)
            art_rows.append(i)

    n_struct = n + n_slack
    n_art = len(art_rows)
    for r in rows:
        rhs = r.pop()
        r.extend([Fraction(0)] * n_art)
        r.append(rhs)
    for k, i in enumerate(art_rows):
        rows[i][n_struct + k] = Fraction(1)
        basis[i] = n_struct + k

    tab = _Tableau(rows, basis)
    total = n_struct + n_art
    if n_art:
        phase1 = [Fraction(0)] * n_struct + [Fraction(1)] * n_art
        tab.optimize(phase1, total)
        infeas = sum(tab.rows[i][-1] for i in range(m) if tab.basis[i] >= n_struct)
        if infeas > 0:
            return LpOutcome(INFEASIBLE)
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= n_struct:
                col = next((j for j in range(n_struct) if tab.rows[i][j] != 0), None)
                if col is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1
        tab.rows = [r[:n_struct] + [r[-1]] for r in tab.rows]

    cost = list(lp.objective) + [Fraction(0)] * n_slack
    if not tab.rows:
        # no constraints left: bounded only if every cost is nonnegative
        if any(c < 0 for c in cost):
            return LpOutcome(UNBOUNDED)
        return LpOutcome(OPTIMAL, lp.offset, (Fraction(0),) * n)
    if not tab.optimize(cost, n_struct):
        return LpOutcome(UNBOUNDED)
    x = [Fraction(0)] * n_struct
    for i, b in enumerate(tab.basis):
        x[b] = tab.rows[i][-1]
    point = tuple(x[:n])
    value = sum((c * v for c, v in zip(lp.objective, point)), Fraction(0)) + lp.offset
    return LpOutcome(OPTIMAL, value, point)


def satisfies(lp: RationalLP, point: Sequence[Fraction]) -> bool:
    """Exact feasibility test of ``point``."""
    if any(v < 0 for v in point):
        return False
    for c in lp.constraints:
        lhs = sum((a * v for a, v in zip(c.coeffs, point)), Fraction(0))
        if c.relation == EQ and lhs != c.rhs:
            return False
        if c.relation == LE and lhs > c.rhs:
            return False
    return True
