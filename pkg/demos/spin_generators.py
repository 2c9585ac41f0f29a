"""
Generators of the spin mapping class group
==========================================

Dehn twists act on homology by transvections.  The image of words in
twists is a subgroup of Sp(2g, 2); here the spin generators are compared
with the stabilizer of the standard form.
"""

# %%
# Curves and words
# ----------------

from spinform.homology import Z2, twist_word_matrix
from spinform.quadform import preserves_q, q_standard
from spinform.spinmcg.bfs import generated_subgroup_order, stabilizer_order_oracle, symplectic_group_order
from spinform.spinmcg.catalogs import catalog_hirose, catalog_humphreys
from spinform.spinmcg.generators import hirose_generators, thm5_generators, twist_generators
from spinform.spinmcg.words import word

cat = catalog_hirose(3)
for name in ("c1", "c2", "c5", "b4"):
    print(name, cat[name])
print(twist_word_matrix(word("c1 c2 c1"), cat, Z2))

# %%
# Preserving the standard form
# ----------------------------
#
# Every spin generator fixes q_st; plain Humphreys twists do not.

q = q_standard(cat.surface)
gens = thm5_generators(3)
print({n: preserves_q(twist_word_matrix(w, cat, Z2), q) for n, w in gens.items()})
hum = catalog_humphreys(3, 1)
print({n: preserves_q(twist_word_matrix(w, hum, Z2), q_standard(hum.surface))
       for n, w in twist_generators(hum).items()})

# %%
# Subgroup orders
# ---------------
#
# Breadth-first closure of the generator images, against an independent
# count of symplectic bases that fix q.

a, _ = generated_subgroup_order(gens, cat, q)
b, _ = generated_subgroup_order(hirose_generators(3), cat, q)
print("spin generators", a, "Hirose", b, "oracle", stabilizer_order_oracle(q, 3))
print("index in Sp(6, 2):", symplectic_group_order(3) // a)
