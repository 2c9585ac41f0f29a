"""
Twists on plumbed Seifert surfaces
==================================

A surface built by plumbing twisted annuli carries a Rokhlin form read off
from the twists.  Local tricks and plumbing rules then decide which twists
extend over the 4-ball.
"""

# %%
# A plumbed surface
# -----------------

from spinform.datafiles import data_path
from spinform.extendibility import obstruct_essential, slice_obstruction, thm3_propagate
from spinform.plumbing import load_descriptor, rokhlin_form, traversal_framing
from spinform.quadform import arf
from spinform.spinmcg.catalogs import catalog_humphreys

d = load_descriptor(data_path("descriptors", "extexmp_right.json"))
q = rokhlin_form(d)
print(d.surface, [(n.label, n.twist) for n in d.nodes], "Arf", arf(q))

# %%
# Propagation
# -----------
#
# Odd-framed unknotted cores extend; the plumbing rules pass this along.

store = thm3_propagate(d)
for f in store.facts():
    print(f.curve, f.status.value, f.rationale.value)

# %%
# A curve with q = 0 is obstructed.

t = load_descriptor(data_path("descriptors", "trivial_chain_g1.json"))
print(obstruct_essential(rokhlin_form(t), t.basis_assignment["c1"], name="c1").as_record())

# %%
# Slice obstruction
# -----------------
#
# If every Humphreys twist extends, the boundary link is not slice.

for name in ("nl_left", "nl_right"):
    nl = load_descriptor(data_path("descriptors", f"{name}.json"))
    cat = catalog_humphreys(nl.surface.genus, nl.surface.boundary)
    print(name, slice_obstruction(nl, thm3_propagate(nl), cat).verdict)

# %%
# Framings of traversal curves
# ----------------------------

h = load_descriptor(data_path("descriptors", "hammenstadt_odd_g5.json"))
print({c.name: traversal_framing(c, h) for c in h.curves})
