"""Generating sets as twist words over the catalogs."""

from __future__ import annotations

from .catalogs import CurveCatalog
from .words import TwistWord, word


class GeneratorRangeError(ValueError):
    pass


def hirose_generators(g: int) -> dict[str, TwistWord]:
    """Hirose's generators of the stabilizer of q_st, in the listed order."""
    if g < 2:
        raise GeneratorRangeError("Hirose's list needs g >= 2")
    gens: dict[str, TwistWord] = {}
    for i in range(1, 2 * g + 1):
        gens[f"X{i}"] = word("c{i+1} c{i} c{i+1}^-1", i=i)
    for j in range(2, g):
        gens[f"Y{2 * j}"] = word("c{2j} b{2j} c{2j}^-1", j=j)
    for i in range(1, 2 * g + 2):
        gens[f"D{i}"] = word("c{i}^2", i=i)
    for j in range(2, g):
        gens[f"DB{2 * j}"] = word("b{2j}^2", j=j)
    # Z1 ends with b4, the curve meeting c4 once
    gens["Z1"] = word("c1 c3 b4")
    gens["Z2"] = word("b4 " + " ".join(f"c{k}" for k in range(5, 2 * g + 2, 2)))
    return gens


def thm5_generators(g: int) -> dict[str, TwistWord]:
    """The 3g generators alpha_i, beta_j, gamma_k, zeta."""
    if g < 3:
        raise GeneratorRangeError("the 3g-element list references b4 and needs g >= 3")
    gens: dict[str, TwistWord] = {}
    for i in range(1, g + 1):
        gens[f"alpha{i}"] = word("c{2i+1} c{2i} c{2i+1}^-1", i=i)
    gens["beta1"] = word("c1 c3 b4")
    for j in range(2, g):
        # the last letter is b_{2j+2}, the b curve meeting c_{2j+2}
        gens[f"beta{j}"] = word("b{2j} c{2j+1} b{2j+2}", j=j)
    gens[f"beta{g}"] = word("b{2g-2} c{2g-1} c{2g+1}", g=g)
    gens["gamma1"] = word("c1^2")
    for k in range(2, g):
        gens[f"gamma{k}"] = word("b{2k}^2", k=k)
    gens["zeta"] = word("b4 " + " ".join(f"c{k}" for k in range(5, 2 * g + 2, 2)))
    return gens


def twist_generators(catalog: CurveCatalog) -> dict[str, TwistWord]:
    """One twist per catalog curve (Humphreys and Hammenstadt sets)."""
    return {name: TwistWord.twist(name) for name in catalog.names}
