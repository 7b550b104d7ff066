"""Derive a Mayet-Godowski equation from a pair that no state separates.

Given ``a`` not below ``b`` where every state with ``m(a) = 1`` also has
``m(b) = 1``, block equalities are weakened to ``<= 1`` one at a time while
the minimum of ``m(b)`` stays 1.  The blocks that must stay exact, restricted
to atoms that can be nonzero, give the left side of a condensed state
equation; the weakened blocks restricted to those same atoms give the right
side.  The search is heuristic: it may fail to balance an equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .checker import check_equation, violates
from .lattice import OmlLattice
from .mge import CondensedStateEquation, MgeError, MgEquation, condensed_to_mge
from .ratlp import OPTIMAL, solve
from .states import StrongWitness, pair_lp, separating_failures
from .terms import ConditionalEquation


class MgeGenerationError(RuntimeError):
    pass


class WitnessNotTight(MgeGenerationError):
    pass


class EmptyLeftSide(MgeGenerationError):
    pass


class Unbalanceable(MgeGenerationError):
    pass


class GeneratedEquationHoldsInInput(MgeGenerationError):
    pass


@dataclass(frozen=True)
class RelaxationRecord:
    a: int
    b: int
    relaxed: tuple[bool, ...]       # per diagram block
    forced_zero: frozenset[int]     # diagram atom indices

    @property
    def pinned(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.relaxed) if not r)

    def format(self, l: OmlLattice) -> str:
        d = l.diagram
        pinned = ",".join(d.block_text(i) for i in self.pinned)
        relaxed = ",".join(d.block_text(i) for i, r in enumerate(self.relaxed) if r)
        return f"pinned {pinned}; relaxed {relaxed}"


def _min_value(l: OmlLattice, a: int, b: int, relaxed) -> Fraction | None:
    out = solve(pair_lp(l, a, b, relaxed))
    return out.value if out.status == OPTIMAL else None


def relax_blocks(l: OmlLattice, witness: StrongWitness | tuple[int, int]) -> RelaxationRecord:
    """Weaken block constraints in diagram order while ``min m(b)`` stays 1."""
    a, b = (witness.a, witness.b) if isinstance(witness, StrongWitness) else witness
    nblocks = len(l.diagram.blocks)
    relaxed = [False] * nblocks
    start = _min_value(l, a, b, relaxed)
    if start != 1:
        raise WitnessNotTight(f"min m({l.label(b)}) given m({l.label(a)}) = 1 is {start}, not 1")
    for i in range(nblocks):
        relaxed[i] = True
        if _min_value(l, a, b, relaxed) != 1:
            relaxed[i] = False
    atoms = l.atom_indices
    zeros = frozenset(i for i in range(l.diagram.num_atoms) if l.orth[atoms[i], a])
    return RelaxationRecord(a, b, tuple(relaxed), zeros)


def build_condensed(l: OmlLattice, rec: RelaxationRecord) -> CondensedStateEquation:
    """Condensed equation over Greechie labels, e.g. ``45+9A+E8+6D=56+89+4A+DE``."""
    d = l.diagram
    lhs, used = [], set()
    for i in rec.pinned:
        group = [x for x in d.blocks[i] if x not in rec.forced_zero]
        if group:
            lhs.append("".join(d.labels[x] for x in group))
            used.update(group)
    if not lhs:
        raise EmptyLeftSide("every pinned block is forced to zero")
    rhs = []
    for i, r in enumerate(rec.relaxed):
        if r:
            group = [x for x in d.blocks[i] if x in used]
            if group:
                rhs.append("".join(d.labels[x] for x in group))
    return CondensedStateEquation(tuple(lhs), tuple(rhs))


@dataclass(frozen=True)
class GeneratedMge:
    condensed: CondensedStateEquation   # Greechie labels, after balancing
    renamed: CondensedStateEquation     # letters a, b, c, ...
    mge: MgEquation
    assignment: dict[str, int]          # MGE variable -> atom element refuting it

    @property
    def equation(self) -> ConditionalEquation:
        return self.mge.to_equation()


def _balance(c: CondensedStateEquation, budget: int) -> CondensedStateEquation:
    lhs, rhs = list(c.lhs), list(c.rhs)
    while True:
        # a single conjunct is padded by repeating it, which changes nothing
        for side in (lhs, rhs):
            if len(side) == 1:
                side.append(side[0])
        cur = CondensedStateEquation(tuple(lhs), tuple(rhs))
        left, right = cur.counts()
        short = next((s for s in cur.symbols() if left[s] != right[s]), None)
        if short is None:
            return cur
        if len(lhs) + len(rhs) >= budget:
            raise Unbalanceable(f"{c}: no balanced form within {budget} conjuncts")
        side = lhs if left[short] < right[short] else rhs
        group = next((g for g in side if short in g), None)
        if group is None:
            raise Unbalanceable(f"{c}: no conjunct with {short} to repeat")
        side.append(group)


def balance_and_emit(c: CondensedStateEquation, l: OmlLattice, budget_factor: int = 4) -> GeneratedMge:
    """Balance ``c`` by repeating conjuncts, convert to an MGE and confirm it fails in ``l``."""
    balanced = _balance(c, budget_factor * (len(c.lhs) + len(c.rhs)))
    renamed = balanced.renamed()
    back = dict(zip(renamed.symbols(), balanced.symbols()))
    atom_of = {s: l.atom(back[s]) for s in back}

    def orth(x: str, y: str) -> bool:
        return bool(l.orth[atom_of[x], atom_of[y]])

    mge = condensed_to_mge(renamed, orth)
    names = dict(zip(renamed.symbols(), dict.fromkeys(v for g in mge.left_terms + mge.right_terms for v in g)))
    asg = {names[s]: atom_of[s] for s in renamed.symbols()}
    eq = mge.to_equation()
    if not violates(l, eq, asg):
        verdict = check_equation(l, eq)
        if verdict.holds:
            raise GeneratedEquationHoldsInInput(f"{renamed} holds in the input lattice")
        asg = verdict.counterexample
    return GeneratedMge(balanced, renamed, mge, asg)


@dataclass(frozen=True)
class Generation:
    witness: StrongWitness
    record: RelaxationRecord
    raw: CondensedStateEquation
    result: GeneratedMge
    skipped: tuple[tuple[StrongWitness, str], ...] = ()  # earlier witnesses and why they failed


def generate_mge(l: OmlLattice, jobs: int = 1, max_witnesses: int = 50) -> Generation | None:
    """Full pipeline; ``None`` for lattices with a strong set of states.

    Unseparated pairs are tried in order until one yields an equation.  The
    error from the first witness is raised when none of the first
    ``max_witnesses`` does.
    """
    skipped = []
    first_error = None
    for k, w in enumerate(separating_failures(l, jobs)):
        if k >= max_witnesses:
            break
        try:
            rec = relax_blocks(l, w)
            raw = build_condensed(l, rec)
            return Generation(w, rec, raw, balance_and_emit(raw, l), tuple(skipped))
        except (MgeGenerationError, MgeError) as e:
            skipped.append((w, f"{type(e).__name__}: {e}"))
            first_error = first_error or e
            if l.elements[w.a].kind == "one":
                break  # no state at all, every later pair fails the same way
    if first_error is None:
        return None
    raise first_error
