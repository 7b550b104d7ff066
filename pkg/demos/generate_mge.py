"""Turn a pair that no state separates into an equation.

Blocks of Peterson's diagram are relaxed to <= 1 while the LP minimum stays
at 1.  The blocks that must stay exact give the left side of a condensed
state equation and the relaxed ones the right side.  After renaming, the
result is the 4-Go equation.
"""

from omlkit import corpus
from omlkit.checker import check_equation
from omlkit.mge import condensed_to_mge, godowski_condensed, mge_isomorphic
from omlkit.mgegen import generate_mge

l = corpus.lattice("peterson")
g = generate_mge(l)
print("witness:", g.witness.format(l))
print(g.record.format(l))
print("condensed:", g.raw)
print("renamed:  ", g.result.renamed)
print(g.result.equation)

print("fails in Peterson:", not check_equation(l, g.result.equation).holds)
go4 = condensed_to_mge(godowski_condensed(4), lambda x, y: True)
print("same as 4-Go:", mge_isomorphic(g.result.mge, go4))

# the Godowski lattices all fail to be strong, and each yields an equation too
for name in corpus.GODOWSKI_FIGURES:
    g = generate_mge(corpus.lattice(name))
    print(f"{name:22s} {g.result.renamed}")
