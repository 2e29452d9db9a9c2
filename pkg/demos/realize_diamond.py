"""
Realizing the diamond lattice
=============================

Build a valuation on a free product of copies of Z/2 whose level subgroups
reproduce the lattice of ideals of the diamond 0 < a, b < t.
"""

import numpy as np

from latticeforge.groups import Cyclic
from latticeforge.order import JoinSemilattice, diamond
from latticeforge.valuation import containment_matrices, realize_lattice

sl = JoinSemilattice(diamond())
rl = realize_lattice(sl, Cyclic(2))
print(rl.trace)

# %%
# Each ideal J gives the subgroup K(J) = {x : delta(x) in J}.  On a ball
# of words, K(J) <= K(J') should hold exactly when J is inside J'.
inc, cont = containment_matrices(rl, 4)
print(np.array(inc, dtype=int))
print("ball containments agree:", inc == cont)

# %%
# Values of a few words.
sp = rl.spec
for text in ["xa", "xa xb", "x0 xt", "xa x0 xa"]:
    print(text, "->", sl.labels[rl.delta(sp.parse(text))])

# %%
# A witness writes h as a product of pieces from L and conjugates of L by g.
g = sp.parse("xa")
w = rl.witness_join_membership(g, g)
print(len(w), "pieces; problems:", rl.check_witness(w, g, g))
