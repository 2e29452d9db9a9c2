"""
Finite Ulm truncations
======================

Generators a(s) for increasing sequences s, with p a(i) = 0 and
p a(i1, ..., in) = a(i2, ..., in).  The Smith form gives the cyclic
decomposition.
"""

import numpy as np

from latticeforge.constructions.ulm import ulm_group

for p in (2, 3):
    for lam in range(5):
        U = ulm_group(p, lam)
        print(f"p={p} lambda={lam} factors={U.invariant_factors} exponent={U.exponent}")

# %%
U = ulm_group(2, 2)
print(np.array(U.relations))
print({",".join(map(str, s)): U.height(s) for s in U.generators})
