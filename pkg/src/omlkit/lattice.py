"""Finite orthomodular lattices pasted from Greechie diagrams.

Every block with atoms ``k`` contributes the Boolean algebra ``2^k``; blocks
are glued along shared atoms (and hence along the shared coatoms).  The
element numbering is fixed: ``0`` is the bottom, ``1`` the top, then the
atoms in diagram order, the coatoms in atom order, and finally the remaining
block subsets ordered by ``(block, bitmask)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .greechie import GreechieDiagram, parse_diagram

ZERO = 0
ONE = 1


class LatticeConstructionError(ValueError):
    pass


class NotALattice(LatticeConstructionError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        self.pair = pair
        super().__init__(message)


class NotAnOrtholattice(LatticeConstructionError):
    pass


class NotOrthomodular(LatticeConstructionError):
    def __init__(self, message: str, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(message)


@dataclass(frozen=True)
class OmlElement:
    """Canonical description of a lattice element.

    ``kind`` is one of ``"zero"``, ``"one"``, ``"atom"``, ``"coatom"`` or
    ``"join"``.  ``atom`` is set for atoms and coatoms; ``block`` and
    ``subset`` are set for the other block elements.
    """

    kind: str
    atom: int | None = None
    block: int | None = None
    subset: frozenset[int] = frozenset()

    def label(self, labels: tuple[str, ...]) -> str:
        if self.kind == "zero":
            return "zero"
        if self.kind == "one":
            return "one"
        if self.kind == "atom":
            return labels[self.atom]
        if self.kind == "coatom":
            return labels[self.atom] + "'"
        return "".join(labels[a] for a in sorted(self.subset))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            lo, hi = min(ri, rj), max(ri, rj)
            self.parent[hi] = lo


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class OmlLattice:
    elements: tuple[OmlElement, ...]
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    ortho: np.ndarray
    atom_indices: tuple[int, ...]
    diagram: GreechieDiagram
    # per block: (element indices, bitmask of each inside the block)
    block_members: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    zero = ZERO
    one = ONE

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"OmlLattice({self.diagram!s}, {self.size} elements)"

    @cached_property
    def arrow(self) -> np.ndarray:
        """Sasaki arrow table ``arrow[x, y] = x' v (x ^ y)``."""
        m = self.size
        x = np.arange(m)[:, None]
        y = np.arange(m)[None, :]
        return _frozen(self.join[self.ortho[x], self.meet[x, y]])

    @cached_property
    def orth(self) -> np.ndarray:
        """``orth[x, y]`` is true iff ``x <= y'``."""
        return _frozen(self.leq[:, self.ortho].copy())

    @cached_property
    def commutes(self) -> np.ndarray:
        """``commutes[x, y]`` is true iff ``x ^ (x' v y) <= y``."""
        m = self.size
        x = np.arange(m)[:, None]
        y = np.arange(m)[None, :]
        t = self.meet[x, self.join[self.ortho[x], y]]
        return _frozen(self.leq[t, y])

    def label(self, x: int) -> str:
        return self.elements[x].label(self.diagram.labels)

    def element(self, label: str) -> int:
        """Look an element up by label: ``"7"``, ``"7'"``, ``"56"``, ``"zero"``, ``"one"``."""
        label = label.replace("′", "'").strip()
        for i in range(self.size):
            if self.label(i) == label:
                return i
        raise KeyError(label)

    def atom(self, label: str) -> int:
        return self.atom_indices[self.diagram.label_index(label)]

    def sasaki_arrow(self, x: int, y: int) -> int:
        return int(self.join[self.ortho[x], self.meet[x, y]])

    def nonleq_pairs(self) -> list[tuple[int, int]]:
        """All ordered pairs ``(a, b)`` with ``a`` not below ``b``, lexicographic."""
        return [(int(a), int(b)) for a, b in np.argwhere(~self.leq)]

    def atom_support(self, x: int) -> frozenset[int]:
        """Atoms (diagram indices) whose join is ``x``; the complement set for coatoms is not used."""
        e = self.elements[x]
        if e.kind == "atom":
            return frozenset([e.atom])
        if e.kind == "join":
            return e.subset
        if e.kind == "zero":
            return frozenset()
        raise ValueError(f"{self.label(x)} is not a join of atoms from a single block")


def build_oml(diagram: GreechieDiagram | str) -> OmlLattice:
    """Paste the Boolean blocks of ``diagram`` into a finite OML.

    Raises :class:`NotALattice` or :class:`NotOrthomodular` when the pasting
    fails to be an orthomodular lattice.
    """
    if isinstance(diagram, str):
        diagram = parse_diagram(diagram)
    A = diagram.num_atoms
    raw: list[OmlElement] = [OmlElement("zero"), OmlElement("one")]
    raw += [OmlElement("atom", atom=a) for a in range(A)]
    raw += [OmlElement("coatom", atom=a) for a in range(A)]
    atom_idx = {a: 2 + a for a in range(A)}
    coatom_idx = {a: 2 + A + a for a in range(A)}

    uf_pairs = []
    raw_blocks = []
    for bi, block in enumerate(diagram.blocks):
        k = len(block)
        full = (1 << k) - 1
        idx = [ZERO]
        masks = [0]
        for mask in range(1, full):
            members = [block[j] for j in range(k) if mask >> j & 1]
            if len(members) == 1:
                e = atom_idx[members[0]]
                if k == 2:
                    missing = block[1] if members[0] == block[0] else block[0]
                    uf_pairs.append((e, coatom_idx[missing]))
            elif len(members) == k - 1:
                missing = next(block[j] for j in range(k) if not mask >> j & 1)
                e = coatom_idx[missing]
            else:
                e = len(raw)
                raw.append(OmlElement("join", block=bi, subset=frozenset(members)))
            idx.append(e)
            masks.append(mask)
        idx.append(ONE)
        masks.append(full)
        raw_blocks.append((idx, masks))

    uf = _UnionFind(len(raw))
    for i, j in uf_pairs:
        uf.union(i, j)
    reps = sorted({uf.find(i) for i in range(len(raw))})
    renum = {r: n for n, r in enumerate(reps)}
    canon = [renum[uf.find(i)] for i in range(len(raw))]
    elements = tuple(raw[r] for r in reps)
    m = len(elements)

    leq = np.zeros((m, m), dtype=bool)
    leq[ZERO, :] = True
    leq[:, ONE] = True
    np.fill_diagonal(leq, True)
    ortho = np.full(m, -1, dtype=np.int64)
    block_members = []
    for idx, masks in raw_blocks:
        ids = np.array([canon[i] for i in idx])
        mk = np.array(masks, dtype=np.int64)
        full = mk[-1]
        sub = (mk[:, None] & ~mk[None, :]) == 0
        leq[np.ix_(ids, ids)] |= sub
        pos = {int(v): n for n, v in enumerate(mk)}
        for n, e in enumerate(ids):
            c = ids[pos[int(full ^ mk[n])]]
            if ortho[e] >= 0 and ortho[e] != c:
                raise NotAnOrtholattice(
                    f"orthocomplement of {elements[e].label(diagram.labels)} not unique"
                )
            ortho[e] = c
        block_members.append((tuple(int(i) for i in ids), tuple(masks)))

    # partial order: antisymmetry and transitivity
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        x, y = (int(v) for v in np.argwhere(both)[0])
        raise NotALattice("order is not antisymmetric", (x, y))
    li = leq.astype(np.int64)
    closure = (li @ li) > 0
    if (closure & ~leq).any():
        x, y = (int(v) for v in np.argwhere(closure & ~leq)[0])
        raise NotALattice("block-local order is not transitive", (x, y))

    meet = _bounds_table(leq, lower=True)
    join = _bounds_table(leq, lower=False)

    # orthocomplement: involution, order reversing, complement
    rng = np.arange(m)
    if (ortho[ortho] != rng).any() or (meet[rng, ortho] != ZERO).any() or (
        join[rng, ortho] != ONE
    ).any():
        raise NotAnOrtholattice("orthocomplement is not an involutive complement")
    xs, ys = np.nonzero(leq)
    if not leq[ortho[ys], ortho[xs]].all():
        raise NotAnOrtholattice("orthocomplement does not reverse order")
    bad = join[xs, meet[ys, ortho[xs]]] != ys
    if bad.any():
        k = int(np.argmax(bad))
        raise NotOrthomodular(
            "orthomodular law fails", (int(xs[k]), int(ys[k]))
        )

    return OmlLattice(
        elements=elements,
        leq=_frozen(leq),
        meet=_frozen(meet),
        join=_frozen(join),
        ortho=_frozen(ortho),
        atom_indices=tuple(canon[atom_idx[a]] for a in range(A)),
        diagram=diagram,
        block_members=tuple(block_members),
    )


def _bounds_table(leq: np.ndarray, lower: bool) -> np.ndarray:
    # glb(x, y) is the unique z whose down-set equals down(x) & down(y)
    rel = leq if lower else leq.T
    m = rel.shape[0]
    sets = [int.from_bytes(np.packbits(rel[:, x], bitorder="little").tobytes(), "little")
            for x in range(m)]
    by_set = {s: z for z, s in enumerate(sets)}
    table = np.empty((m, m), dtype=np.int64)
    for x in range(m):
        sx = sets[x]
        for y in range(x, m):
            z = by_set.get(sx & sets[y])
            if z is None:
                kind = "meet" if lower else "join"
                raise NotALattice(f"no {kind} for pair ({x}, {y})", (x, y))
            table[x, y] = table[y, x] = z
    return table
