"""
Closure of generator images in Sp(2g, 2), and an independent count of the
stabilizer of a quadratic form.

An element is held as its n column bitmasks (n = rank <= 8), packed into one
uint64 key with column j in bits n*j .. n*j + n - 1.  Left multiplication by
a fixed generator G acts column-wise through a lookup table of G applied to
all 2^n vectors, so a whole frontier is advanced with one fancy-index.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from ..homology import SurfaceSignature, columns_from_array, standard_form, twist_word_matrix, Z2
from ..quadform import QuadraticForm, evaluate_all, preserves_q

MAX_BFS_RANK = 8
MAX_ORACLE_GENUS = 3


class GuardError(ValueError):
    pass


def _lookup_table(cols: tuple[int, ...], n: int) -> np.ndarray:
    v = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for j, c in enumerate(cols):
        out ^= np.where((v >> j) & 1, c, 0)
    return out.astype(np.uint8 if n <= 8 else np.int64)


def _pack(block: np.ndarray, n: int) -> np.ndarray:
    shifts = (np.arange(block.shape[1], dtype=np.uint64) * np.uint64(n))
    return np.bitwise_or.reduce(block.astype(np.uint64) << shifts, axis=1)


def closure_order(generator_columns: Iterable[tuple[int, ...]], n: int) -> int:
    """Order of the subgroup of GL(n, 2) generated by the given matrices."""
    if n > MAX_BFS_RANK:
        raise GuardError(
            f"rank {n} exceeds the BFS guard {MAX_BFS_RANK}; "
            "only genus <= 4 is supported and genus 4 is already very slow"
        )
    tables = [_lookup_table(tuple(c), n) for c in generator_columns]
    ident = np.array([[1 << j for j in range(n)]], dtype=np.uint8)
    if not tables:
        return 1
    frontier = ident
    seen = _pack(ident, n)
    while len(frontier):
        # finite group: closing under left multiplication by generators suffices
        images = np.concatenate([t[frontier] for t in tables], axis=0)
        keys = _pack(images, n)
        keys, idx = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        frontier = images[idx[fresh]]
        seen = np.union1d(seen, keys[fresh])
    return int(len(seen))


def generator_matrices(words: Mapping | Iterable, catalog) -> list[np.ndarray]:
    items = words.values() if isinstance(words, Mapping) else words
    return [twist_word_matrix(w, catalog, Z2) for w in items]


def generated_subgroup_order(words, catalog, q: QuadraticForm | None = None) -> tuple[int, bool | None]:
    """BFS order of the image in Sp(2g, 2), and whether every generator preserves q."""
    n = catalog.surface.rank
    if n > MAX_BFS_RANK:
        raise GuardError(f"rank {n} exceeds the BFS guard {MAX_BFS_RANK}")
    mats = generator_matrices(words, catalog)
    order = closure_order([columns_from_array(M) for M in mats], n)
    preserves_all = None if q is None else all(preserves_q(M, q) for M in mats)
    return order, preserves_all


# ---------- oracle


def symplectic_bases(g: int) -> np.ndarray:
    """Every ordered symplectic basis (e_1, f_1, ..., e_g, f_g) of GF(2)^{2g}.

    Rows are the column bitmasks of the corresponding element of Sp(2g, 2),
    so the row count is |Sp(2g, 2)|.  Built pair by pair: the next e must pair
    to zero with all chosen vectors and be nonzero, the next f must pair to 1
    with that e and to zero with the rest.  No transvections are involved.
    """
    if g > MAX_ORACLE_GENUS:
        raise GuardError(f"oracle enumeration is limited to genus {MAX_ORACLE_GENUS}")
    n = 2 * g
    form = standard_form(SurfaceSignature(g, 0))
    N = 1 << n
    P = np.array([[form.pair_bits(a, b) for b in range(N)] for a in range(N)], dtype=np.uint8)
    bases = np.zeros((1, 0), dtype=np.uint8)
    cand = np.arange(N, dtype=np.uint8)
    for k in range(g):
        # choose e_k
        ok = np.ones((len(bases), N), dtype=bool)
        ok[:, 0] = False
        for j in range(bases.shape[1]):
            ok &= P[bases[:, j]] == 0
        r, c = np.nonzero(ok)
        bases = np.concatenate([bases[r], cand[c][:, None]], axis=1)
        # choose f_k
        ok = np.ones((len(bases), N), dtype=bool)
        for j in range(bases.shape[1] - 1):
            ok &= P[bases[:, j]] == 0
        ok &= P[bases[:, -1]] == 1
        r, c = np.nonzero(ok)
        bases = np.concatenate([bases[r], cand[c][:, None]], axis=1)
    return bases


def stabilizer_order_oracle(q: QuadraticForm, g: int) -> int:
    """Number of elements of Sp(2g, 2) preserving q, by full enumeration."""
    if q.rank != 2 * g:
        raise ValueError(f"form of rank {q.rank} for genus {g}")
    bases = symplectic_bases(g)
    table = evaluate_all(q)
    target = np.asarray(q.basis_values, dtype=np.uint8)
    keep = np.all(table[bases] == target, axis=1)
    return int(keep.sum())


def symplectic_group_order(g: int) -> int:
    """|Sp(2g, 2)| from the product formula."""
    out = 2 ** (g * g)
    for i in range(1, g + 1):
        out *= 4 ** i - 1
    return out
