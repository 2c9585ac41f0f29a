"""
Open books and variation maps
=============================

The variation of a monodromy h is id - h; its determinant decides whether
the total space is a homology sphere.
"""

# %%

import numpy as np

from spinform.openbook import bareiss_det, universality_obstruction, variation_from_monodromy

for H in (np.eye(2, dtype=int), -np.eye(2, dtype=int), np.array([[0, 1], [-1, 0]]), np.array([[1, 1], [-1, 0]])):
    v = variation_from_monodromy(H)
    print(H.tolist(), "delta", [list(r) for r in v.delta], "det", bareiss_det(v.delta))

# %%
# Universality
# ------------

v = variation_from_monodromy([[1, 1], [-1, 0]])
print(universality_obstruction(True, True, v, False).as_record())
print(universality_obstruction(True, True, None, True).as_record())
print(universality_obstruction(False, True, v, False).as_record())
