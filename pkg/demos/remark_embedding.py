"""
Embedding F2 * Z/2 into F2
==========================

The even part of <a, b> * <c> is free on a, b, cac, cbc.  Sending these
to conjugates of u by powers of v gives an injective homomorphism, and
a twist by v^-2 extends it to odd elements.
"""

from latticeforge.constructions.remark import F2, LAMBDA, check_remark_identity, delta_values, remark_embedding

print(delta_values())

# %%
for text in ["c", "a c b", "c a c b", "b c a c a^-1"]:
    print(f"{text:14s} -> {F2.format(remark_embedding(LAMBDA.parse(text)))}")

# %%
rep = check_remark_identity(L=3)
print(rep.triples_checked, "triples,", len(rep.identity_failures), "failures")
print(rep.injectivity_checked, "words,", len(rep.collisions), "collisions")
