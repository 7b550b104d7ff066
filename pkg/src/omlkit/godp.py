"""Dynamic-programming scan over the whole Godowski family.

``V_p(x, z)`` is the set of values of ``(x -> y1) ^ (y1 -> y2) ^ ... ^ (y_{p-1} -> z)``
over all intermediate elements.  n-Go fails exactly when some
``v in V_{n-1}(x, z)`` has ``v ^ (z -> x)`` not below ``x -> z``.  Because
``y = z`` contributes ``v ^ 1 = v``, the sets only grow with ``p``; once a pass
leaves every set unchanged no larger n can fail.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .lattice import OmlLattice

FIRST_FAIL = "first_fail"
CONVERGED = "converged"
CUTOFF = "cutoff"


@dataclass
class GoScanResult:
    outcome: str
    n: int | None = None        # first failing n for FIRST_FAIL, max_n for CUTOFF
    passes: int = 0             # last pass index p computed
    witness: tuple[int, int, int] | None = None  # (x, z, v) violating the check
    ops: list[int] = field(default_factory=list, repr=False)

    def holds(self, n: int) -> bool | None:
        """Whether n-Go holds as implied by the scan (``None`` if undecided)."""
        if self.outcome == FIRST_FAIL:
            return n < self.n
        if self.outcome == CONVERGED:
            return True
        return True if n <= self.n else None

    def __str__(self) -> str:
        if self.outcome == FIRST_FAIL:
            return f"first-fail n={self.n} (passes={self.passes})"
        if self.outcome == CONVERGED:
            return f"converged: all n-Go hold (pass {self.passes})"
        return f"cutoff reached at n={self.n} without failure or convergence"


def initial_values(l: OmlLattice) -> np.ndarray:
    """``V_1`` as a boolean array ``V[x, z, v]``."""
    m = l.size
    V = np.zeros((m, m, m), dtype=bool)
    x, z = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    V[x, z, l.arrow] = True
    return V


def next_values(l: OmlLattice, V: np.ndarray) -> tuple[np.ndarray, int]:
    """One pass of the recurrence ``V'(x, z) = {v ^ (y -> z) : v in V(x, y)}``.

    Returns the new sets and the number of ``(x, y, v, z)`` combinations
    processed, which is at most ``m**4``.
    """
    m = l.size
    out = np.zeros_like(V)
    cols = np.arange(m)
    ops = 0
    for x in range(m):
        ys, vs = np.nonzero(V[x])
        res = l.meet[vs[:, None], l.arrow[ys, :]]
        out[x][np.broadcast_to(cols, res.shape), res] = True
        ops += res.size
    return out, ops


def check_values(l: OmlLattice, V: np.ndarray) -> tuple[int, int, int] | None:
    """First ``(x, z, v)`` with ``v ^ (z -> x)`` not below ``x -> z``, else None."""
    xs, zs, vs = np.nonzero(V)
    lhs = l.meet[vs, l.arrow[zs, xs]]
    ok = l.leq[lhs, l.arrow[xs, zs]]
    if ok.all():
        return None
    k = int(np.argmin(ok))
    return int(xs[k]), int(zs[k]), int(vs[k])


def passes(l: OmlLattice) -> Iterator[tuple[int, np.ndarray, int]]:
    """Yield ``(p, V_p, ops)`` for p = 2, 3, ... indefinitely."""
    V = initial_values(l)
    p = 1
    while True:
        V, ops = next_values(l, V)
        p += 1
        yield p, V, ops


def go_scan(l: OmlLattice, max_n: int = 100) -> GoScanResult:
    """Find the first n for which n-Go fails, or prove that all n-Go hold."""
    if max_n < 3:
        raise ValueError("max_n must be at least 3")
    prev = initial_values(l)
    ops_log = []
    for p, V, ops in passes(l):
        ops_log.append(ops)
        bad = check_values(l, V)
        if bad is not None:
            return GoScanResult(FIRST_FAIL, p + 1, p, bad, ops_log)
        if np.array_equal(V, prev):
            return GoScanResult(CONVERGED, None, p, None, ops_log)
        if p + 1 >= max_n:
            return GoScanResult(CUTOFF, max_n, p, None, ops_log)
        prev = V


def go_batch(lattices: Sequence[OmlLattice], max_n: int = 100, jobs: int = 1) -> list[GoScanResult]:
    """Scan several lattices; results keep the input order."""
    if jobs <= 1 or len(lattices) <= 1:
        return [go_scan(l, max_n) for l in lattices]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda l: go_scan(l, max_n), lattices))


def pass_n_fail_next(results: Sequence[GoScanResult], n: int) -> list[int]:
    """Indices of lattices that satisfy n-Go but violate (n+1)-Go."""
    return [i for i, r in enumerate(results) if r.outcome == FIRST_FAIL and r.n == n + 1]
