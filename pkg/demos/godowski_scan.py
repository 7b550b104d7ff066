"""Find the first Godowski equation each corpus lattice violates.

The scan propagates the set of values the Godowski chain can take instead
of testing each n-Go equation from scratch.  For small n the result is
checked against the generic equation checker.
"""

import time

from omlkit import corpus
from omlkit.checker import check_equation
from omlkit.families import go_gamma
from omlkit.godp import go_scan

for name in corpus.NAMES:
    l = corpus.lattice(name)
    t = time.perf_counter()
    res = go_scan(l)
    print(f"{name:22s} {l.size:4d} elements  {res}  ({time.perf_counter() - t:.2f} s)")

# the checker needs 2n variables, so only cross-check the cheap cases
pet = corpus.lattice("peterson")
for n in (3, 4):
    print(f"peterson {n}-Go by checker:", check_equation(pet, go_gamma(n)).holds)
