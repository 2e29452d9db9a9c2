"""
Words in Z/2 * Z/3
==================

Normal forms, cyclic reduction and how powers grow.
"""

from latticeforge.freeprod import FreeProduct, cyclic_reduce, power_growth_failures
from latticeforge.groups import Cyclic

G = FreeProduct([Cyclic(2), Cyclic(3)], names=["s", "t"])

# %%
# Products are reduced as they are formed: adjacent letters from the same
# factor merge, and a letter meeting its inverse disappears.
x = G.parse("s t t t s")
print("s t t t s =", G.format(x))
y = G.parse("s t s t^2")
print(G.format(y), "has length", len(y), "and inverse", G.format(G.inv(y)))

# %%
# Balls grow fast: the number of reduced words of length <= L.
for L in range(7):
    print(L, sum(1 for _ in G.ball(L)))

# %%
# Every word is w * core * w^-1 with a cyclically reduced core.
for text in ["s t s", "t s t^2", "t s t"]:
    w, core = cyclic_reduce(G, G.parse(text))
    print(f"{text:10s} conjugator={G.format(w):5s} core={G.format(core)}")

# %%
# For a core of length >= 2, |x^n| is usually n|core| + 2|w|.  Two words in
# the radius-4 ball break the rule because the peeled end letters merge
# with the core instead of cancelling.
for x in ["t s t", "t^2 s t^2"]:
    p = G.parse(x)
    print(x, [len(G.power(p, n)) for n in range(1, 9)])
print("merge-aware failures:", power_growth_failures(G, 4, 8, merge_aware=True))
