"""
Quadratic refinements of the mod 2 intersection form.

A form is stored by its values on the basis vectors only.  The value on an
arbitrary class is rebuilt from the intersection form,

    q(sum x_i e_i) = sum x_i q(e_i) + sum_{i<j} x_i x_j (e_i . e_j)   (mod 2),

so q(x + y) = q(x) + q(y) + x.y holds by construction and two forms are
equal exactly when their basis values agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .homology import (
    DimensionError,
    HomologyClass,
    IntersectionForm,
    SurfaceSignature,
    Z2,
    columns_from_array,
    is_symplectic,
    parity,
    standard_form,
)

MAX_ENUMERATION_RANK = 24


class UndefinedArfError(ValueError):
    pass


class NotSymplecticError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    basis_values: tuple[int, ...]
    form: IntersectionForm
    surface: SurfaceSignature | None = None

    def __post_init__(self):
        vals = tuple(int(v) % 2 for v in self.basis_values)
        object.__setattr__(self, "basis_values", vals)
        if len(vals) != self.form.rank:
            raise DimensionError(f"{len(vals)} basis values for a form of rank {self.form.rank}")

    @classmethod
    def from_bits(cls, bits: int, form: IntersectionForm, surface=None) -> "QuadraticForm":
        return cls(tuple((bits >> i) & 1 for i in range(form.rank)), form, surface)

    @property
    def rank(self) -> int:
        return self.form.rank

    @property
    def bits(self) -> int:
        return sum(v << i for i, v in enumerate(self.basis_values))

    def value_bits(self, x: int) -> int:
        """q on a packed GF(2) vector."""
        acc = parity(self.bits & x)
        upper = self.form.upper_mod2
        i = 0
        y = x
        while y:
            if y & 1:
                acc ^= parity(upper[i] & x)
            y >>= 1
            i += 1
        return acc

    def __call__(self, x: HomologyClass) -> int:
        return evaluate(self, x)

    def table(self) -> np.ndarray:
        """Values of q on all 2^rank packed vectors, vectorized."""
        return evaluate_all(self)

    def as_record(self) -> dict:
        return {
            "rank": self.rank,
            "basis_values": "".join(str(v) for v in self.basis_values),
            "basis_labels": list(self.form.labels),
        }


def evaluate(q: QuadraticForm, x: HomologyClass) -> int:
    if len(x.coords) != q.rank:
        raise DimensionError(f"class of rank {len(x.coords)} against a form of rank {q.rank}")
    return q.value_bits(x.bits)


def evaluate_all(q: QuadraticForm) -> np.ndarray:
    n = q.rank
    xs = np.arange(1 << n, dtype=np.int64)
    bits = (xs[:, None] >> np.arange(n)) & 1
    out = bits @ np.asarray(q.basis_values, dtype=np.int64)
    U = np.triu(q.form.array % 2, k=1)
    out += np.einsum("ki,ij,kj->k", bits, U, bits)
    return (out % 2).astype(np.uint8)


def _genus_pairs(q: QuadraticForm) -> int:
    if q.surface is not None:
        return q.surface.genus
    # genus pairs are the leading (x_i, y_i) blocks with nonzero pairing
    g = 0
    A = q.form.array % 2
    while 2 * g + 1 < q.rank and A[2 * g, 2 * g + 1]:
        g += 1
    return g


def arf(q: QuadraticForm) -> int:
    """Arf invariant over the genus pairs; boundary-parallel directions are ignored."""
    g = _genus_pairs(q)
    if g == 0:
        raise UndefinedArfError("Arf invariant needs at least one genus pair")
    v = q.basis_values
    return sum(v[2 * i] * v[2 * i + 1] for i in range(g)) % 2


def pullback(q: QuadraticForm, M) -> QuadraticForm:
    """The form x -> q(M x)."""
    M = np.asarray(M, dtype=np.int64) % 2
    if M.shape != (q.rank, q.rank) or not is_symplectic(M, q.form, Z2):
        raise NotSymplecticError("pullback needs a matrix preserving the mod 2 pairing")
    cols = columns_from_array(M)
    return QuadraticForm(tuple(q.value_bits(c) for c in cols), q.form, q.surface)


def preserves_q(M, q: QuadraticForm) -> bool:
    return pullback(q, M).basis_values == q.basis_values


def preserves_q_columns(cols, q: QuadraticForm) -> bool:
    """Fast path for packed symplectic matrices (caller guarantees symplecticity)."""
    bv = q.basis_values
    return all(q.value_bits(c) == bv[j] for j, c in enumerate(cols))


def q_standard(surface: SurfaceSignature) -> QuadraticForm:
    """The form of the trivial embedding: zero on every basis vector."""
    form = standard_form(surface)
    return QuadraticForm((0,) * form.rank, form, surface)


def enumerate_forms(rank_or_surface, form: IntersectionForm | None = None) -> Iterator[QuadraticForm]:
    if isinstance(rank_or_surface, SurfaceSignature):
        surface = rank_or_surface
        form = form or standard_form(surface)
    else:
        surface = None
        if form is None:
            raise ValueError("an intersection form is required when only a rank is given")
    rank = form.rank
    if rank > MAX_ENUMERATION_RANK:
        raise ValueError(f"rank {rank} exceeds the enumeration guard {MAX_ENUMERATION_RANK}")
    for bits in range(1 << rank):
        yield QuadraticForm.from_bits(bits, form, surface)


def arf_census(surface: SurfaceSignature) -> dict[int, int]:
    counts = {0: 0, 1: 0}
    for q in enumerate_forms(surface):
        counts[arf(q)] += 1
    return counts
