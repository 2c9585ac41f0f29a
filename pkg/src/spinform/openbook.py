"""
Variation maps of open book monodromies.

The variation of h is the map induced by id - h on middle homology.  Its
domain is relative homology and its target absolute homology; here both are
identified through a fixed basis (the identity by default, or a matrix the
caller supplies), so the variation is one square integer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class VariationData:
    delta: tuple[tuple[int, ...], ...]
    identification: str = "identity"

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.delta)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("variation matrix must be square")
        object.__setattr__(self, "delta", rows)

    @property
    def rank(self) -> int:
        return len(self.delta)

    @classmethod
    def from_matrix(cls, M, identification: str = "identity") -> "VariationData":
        return cls(tuple(map(tuple, np.asarray(M, dtype=object).tolist())), identification)


def _as_square(M) -> list[list[int]]:
    rows = [[int(v) for v in r] for r in M]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    return rows


def variation_from_monodromy(H, identify=None) -> VariationData:
    """delta = I - H, optionally composed with a relative-to-absolute identification."""
    H = _as_square(H)
    n = len(H)
    delta = [[int(i == j) - H[i][j] for j in range(n)] for i in range(n)]
    name = "identity"
    if identify is not None:
        P = _as_square(identify)
        if len(P) != n:
            raise ValueError("identification matrix has the wrong size")
        delta = [[sum(delta[i][k] * P[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        name = "supplied"
    return VariationData(tuple(map(tuple, delta)), name)


def bareiss_det(M) -> int:
    """Exact integer determinant by fraction-free elimination."""
    A = _as_square(M)
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_homotopy_sphere(v: VariationData) -> bool:
    return abs(bareiss_det(v.delta)) == 1


def has_nontrivial_kernel(v: VariationData) -> bool:
    return bareiss_det(v.delta) == 0


@dataclass(frozen=True)
class UniversalityVerdict:
    verdict: str
    rationale: str
    note: str = ""

    def as_record(self) -> dict:
        rec = {"verdict": self.verdict, "rationale": self.rationale}
        if self.note:
            rec["note"] = self.note
        return rec


def universality_obstruction(page_spin: bool, simple: bool, v: VariationData | None,
                             class_in_kernel_case: bool) -> UniversalityVerdict:
    """Whether a simple open book with spin page can be universal.

    Case1: the surface's relative class dies in the page, the embedding is
    characteristic and some twist does not extend.  Case2: the class
    survives; a unimodular variation means the monodromy moves it.
    """
    if not (page_spin and simple):
        return UniversalityVerdict("Inconclusive", "NonSpinOrNotSimple", "hypotheses fail")
    if class_in_kernel_case:
        return UniversalityVerdict("NotUniversal", "Case1",
                                   "characteristic embedding carries a curve with q = 0")
    if v is None:
        return UniversalityVerdict("Inconclusive", "NoVariation", "Case2 needs the variation map")
    if is_homotopy_sphere(v):
        return UniversalityVerdict("NotUniversal", "Case2",
                                   "variation is an isomorphism, so the monodromy fixes no nonzero class")
    if has_nontrivial_kernel(v):
        return UniversalityVerdict("Inconclusive", "NontrivialKernel", "variation has nontrivial kernel")
    return UniversalityVerdict("Inconclusive", "NotHomotopySphere",
                               "variation injective but not unimodular; total space is not a homotopy sphere")
