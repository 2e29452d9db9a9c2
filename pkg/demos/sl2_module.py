"""
Invariant subgroups of (F_q^2)^I
================================

For a finite poset I, the block upper triangular action on (F_q^2)^I has
exactly one invariant additive subgroup per down-set of I.
"""

from latticeforge.constructions.sl2 import build_sl2, invariant_subgroups, sl2_difference_span
from latticeforge.order import Poset, antichain, chain

# A single vector already generates the whole plane under SL2.
for q in (2, 3):
    print(q, sorted(sl2_difference_span(q, 1, (1, 0))))

# %%
for name, P in [("point", chain(1)), ("chain", chain(2)), ("antichain", antichain(2)),
                ("V shape", Poset(["0", "a", "b"], [(0, 1), (0, 2)]))]:
    c = build_sl2(2, 1, P)
    found = invariant_subgroups(c)
    print(f"{name:10s} |V|={c.module_size():3d} generators={len(c.generators):4d}",
          "sizes", [len(S) for S in found], "down-sets", len(P.down_sets()))
