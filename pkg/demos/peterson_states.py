"""Peterson's OML has no strong set of states.

Every state that gives the atom 1 value 1 also gives 7' value 1, although
1 is not below 7'.  The exact LP below shows that minimum, and the strong
state check finds the same pair on its own.
"""

from omlkit import corpus
from omlkit.ratlp import solve
from omlkit.states import pair_lp, strong_state_check

l = corpus.lattice("peterson")
print(f"{l.diagram.num_atoms} atoms, {len(l.diagram.blocks)} blocks, {l.size} elements")

lp = pair_lp(l, l.atom("1"), l.element("7'"))
print(lp.to_lp_format())
out = solve(lp)
print("min m(7') with m(1) = 1:", out.value)

verdict = strong_state_check(l)
print(verdict.format(l))
