"""
Quadratic forms and the Arf invariant
=====================================

A spin structure on a surface is a function q on mod 2 homology with
q(x + y) = q(x) + q(y) + x.y.  This walk-through builds a few, counts them
by Arf invariant, and looks at the closed torus.
"""

# %%
# The standard form
# -----------------
#
# The trivial embedding gives the form that vanishes on every basis curve.

import numpy as np

from spinform.extendibility import ContradictionError, torus_case
from spinform.homology import HomologyClass, SurfaceSignature, intersect
from spinform.quadform import arf, arf_census, enumerate_forms, evaluate_all, q_standard

s = SurfaceSignature(2, 0)
q = q_standard(s)
print(s, "labels", s.labels)
print("q on all", 1 << s.rank, "classes:", evaluate_all(q))
print("Arf", arf(q))

# %%
# The quadratic relation
# ----------------------
#
# Values on a basis determine q everywhere; check the relation on one pair.

x = HomologyClass.from_labels(s, ["x1", "y2"])
y = HomologyClass.from_labels(s, ["y1", "y2"])
print(q(x + y), "=", (q(x) + q(y) + intersect(x, y)) % 2)

# %%
# Counting forms
# --------------
#
# At genus g there are 2^(2g-1) + 2^(g-1) forms with Arf 0.

for g in (1, 2, 3):
    c = arf_census(SurfaceSignature(g, 0))
    print(f"g = {g}: Arf 0 -> {c[0]}, Arf 1 -> {c[1]}, formula {2**(2*g-1) + 2**(g-1)}")

# %%
# The closed torus
# ----------------
#
# In a homology 4-sphere a characteristic torus has Arf 0, so one of the
# basis curves has q = 0 and its twist cannot extend.

for f in enumerate_forms(SurfaceSignature(1, 0)):
    try:
        fact = torus_case(f)
        print(f.basis_values, "->", fact.curve, fact.status.value)
    except ContradictionError as exc:
        print(f.basis_values, "->", exc)

# %%
# Value tables are plain numpy arrays, handy for histograms.

tables = np.array([evaluate_all(f) for f in enumerate_forms(s)])
print("zeros per form:", np.sort((tables == 0).sum(axis=1)))
