"""
First homology of the compact orientable surface Sigma_{g,b}.

Coordinates are taken in the fixed basis

    (x_1, y_1, ..., x_g, y_g, d_1, ..., d_{b-1})

where (x_i, y_i) are genus pairs with x_i . y_i = 1 and the d_i are classes
parallel to the first b - 1 boundary components.  The d_i pair trivially
with everything.

Classes carry integer coordinates; the GF(2) view is the coordinate vector
reduced mod 2 and packed into a Python int (bit i = coordinate i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

Z2 = "z2"
Z = "z"
RINGS = (Z2, Z)


class DimensionError(ValueError):
    """Operands live on different surfaces or have the wrong length."""


def _check_ring(ring: str) -> None:
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}; expected one of {RINGS}")


def parity(n: int) -> int:
    return n.bit_count() & 1


@dataclass(frozen=True)
class SurfaceSignature:
    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise ValueError("genus and boundary count must be nonnegative")

    @property
    def rank(self) -> int:
        return 2 * self.genus + max(self.boundary - 1, 0)

    @property
    def labels(self) -> tuple[str, ...]:
        out = []
        for i in range(1, self.genus + 1):
            out += [f"x{i}", f"y{i}"]
        out += [f"d{i}" for i in range(1, self.boundary)]
        return tuple(out)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __str__(self):
        return f"Sigma_{{{self.genus},{self.boundary}}}"


@dataclass(frozen=True)
class IntersectionForm:
    """Integer intersection matrix with its basis labels.

    The integer matrix is antisymmetric; its reduction mod 2 is the
    (symmetric) mod 2 intersection form.
    """

    matrix: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @classmethod
    def standard(cls, surface: SurfaceSignature) -> "IntersectionForm":
        n = surface.rank
        J = [[0] * n for _ in range(n)]
        for i in range(surface.genus):
            J[2 * i][2 * i + 1] = 1
            J[2 * i + 1][2 * i] = -1
        return cls(tuple(map(tuple, J)), surface.labels)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.rank, self.rank)

    @cached_property
    def rows_mod2(self) -> tuple[int, ...]:
        """Row i packed as the bitmask of j with J[i][j] odd."""
        return tuple(
            sum(1 << j for j, v in enumerate(row) if v % 2) for row in self.matrix
        )

    @cached_property
    def upper_mod2(self) -> tuple[int, ...]:
        """Strictly upper triangular part of the mod 2 form, row-packed."""
        return tuple(r & ~((1 << (i + 1)) - 1) for i, r in enumerate(self.rows_mod2))

    def pair_bits(self, x: int, y: int) -> int:
        """Mod 2 pairing of two packed vectors."""
        acc = 0
        i = 0
        while x:
            if x & 1:
                acc ^= self.rows_mod2[i] & y
            x >>= 1
            i += 1
        return parity(acc)

    def pair_int(self, x: Sequence[int], y: Sequence[int]) -> int:
        return int(np.asarray(x, dtype=np.int64) @ self.array @ np.asarray(y, dtype=np.int64))

    def is_valid(self) -> bool:
        A = self.array
        return bool(np.array_equal(A, -A.T)) and len(self.labels) == self.rank


@dataclass(frozen=True)
class HomologyClass:
    """An element of H_1(Sigma_{g,b}) with integer coordinates."""

    coords: tuple[int, ...]
    surface: SurfaceSignature
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.surface.rank:
            raise DimensionError(
                f"{len(self.coords)} coordinates given for {self.surface} of rank {self.surface.rank}"
            )

    @classmethod
    def from_bits(cls, bits: int, surface: SurfaceSignature, name=None) -> "HomologyClass":
        return cls(tuple((bits >> i) & 1 for i in range(surface.rank)), surface, name)

    @classmethod
    def basis(cls, surface: SurfaceSignature, label: str) -> "HomologyClass":
        i = surface.index(label)
        return cls(tuple(int(j == i) for j in range(surface.rank)), surface, label)

    @classmethod
    def from_labels(cls, surface: SurfaceSignature, terms: dict[str, int] | Iterable[str], name=None):
        """Build a class from ``{"x1": 1, "y2": -1}`` or an iterable of labels."""
        if not isinstance(terms, dict):
            terms = {t: 1 for t in terms}
        coords = [0] * surface.rank
        for label, c in terms.items():
            coords[surface.index(label)] += c
        return cls(tuple(coords), surface, name)

    @cached_property
    def bits(self) -> int:
        return sum(1 << i for i, c in enumerate(self.coords) if c % 2)

    def mod2(self) -> "HomologyClass":
        return HomologyClass(tuple(c % 2 for c in self.coords), self.surface, self.name)

    def is_zero(self, ring: str = Z2) -> bool:
        return self.bits == 0 if ring == Z2 else not any(self.coords)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        _same_surface(self, other)
        return HomologyClass(tuple(a + b for a, b in zip(self.coords, other.coords)), self.surface)

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        _same_surface(self, other)
        return HomologyClass(tuple(a - b for a, b in zip(self.coords, other.coords)), self.surface)

    def __neg__(self):
        return HomologyClass(tuple(-a for a in self.coords), self.surface)

    def scale(self, k: int) -> "HomologyClass":
        return HomologyClass(tuple(k * a for a in self.coords), self.surface)

    def __str__(self):
        terms = []
        for label, c in zip(self.surface.labels, self.coords):
            if c == 1:
                terms.append(label)
            elif c == -1:
                terms.append(f"-{label}")
            elif c:
                terms.append(f"{c}{label}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _same_surface(x: HomologyClass, y: HomologyClass) -> None:
    if x.surface != y.surface:
        raise DimensionError(f"classes on {x.surface} and {y.surface}")


@lru_cache(maxsize=None)
def standard_form(surface: SurfaceSignature) -> IntersectionForm:
    return IntersectionForm.standard(surface)


def intersect(x: HomologyClass, y: HomologyClass, ring: str = Z2) -> int:
    """Algebraic intersection number x . y (mod 2 for ``ring="z2"``)."""
    _check_ring(ring)
    _same_surface(x, y)
    form = standard_form(x.surface)
    if ring == Z2:
        return form.pair_bits(x.bits, y.bits)
    return form.pair_int(x.coords, y.coords)


def transvect(gamma: HomologyClass, x: HomologyClass, sign: int = 1, ring: str = Z2) -> HomologyClass:
    """Homology action of a Dehn twist along ``gamma`` applied to ``x``.

    ``sign=+1`` is the left-handed twist x -> x + (x.gamma) gamma and
    ``sign=-1`` the right-handed one.  Over GF(2) the sign is irrelevant and
    the result is reduced mod 2.
    """
    _check_ring(ring)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _same_surface(gamma, x)
    k = intersect(x, gamma, ring)
    if ring == Z2:
        bits = x.bits ^ (gamma.bits if k else 0)
        return HomologyClass.from_bits(bits, x.surface)
    return x + gamma.scale(sign * k)


def transvection_matrix(gamma: HomologyClass, sign: int = 1, ring: str = Z2) -> np.ndarray:
    """Matrix of ``transvect(gamma, ., sign)``; columns are images of basis vectors."""
    _check_ring(ring)
    form = standard_form(gamma.surface)
    g = np.asarray(gamma.coords, dtype=np.int64)
    # x . gamma = x^T J gamma, so T = I + sign * gamma (J gamma)^T
    T = np.eye(len(g), dtype=np.int64) + sign * np.outer(g, form.array @ g)
    return T % 2 if ring == Z2 else T


def is_symplectic(M, form: IntersectionForm, ring: str = Z) -> bool:
    """True iff M^T J M = J (mod 2 when ``ring="z2"``)."""
    _check_ring(ring)
    M = np.asarray(M, dtype=np.int64)
    J = form.array
    if M.shape != J.shape:
        raise DimensionError(f"matrix of shape {M.shape} for a form of rank {form.rank}")
    lhs = M.T @ J @ M
    if ring == Z2:
        return bool(np.array_equal(lhs % 2, J % 2))
    return bool(np.array_equal(lhs, J))


# ---------- packed GF(2) matrices
#
# A GF(2) matrix of rank n <= 8 is stored as a tuple of column bitmasks or,
# for hashing, packed into one int with column j occupying bits n*j .. n*j+n-1.


def columns_from_array(M) -> tuple[int, ...]:
    M = np.asarray(M, dtype=np.int64) % 2
    n = M.shape[0]
    return tuple(sum(int(M[i, j]) << i for i in range(n)) for j in range(M.shape[1]))


def array_from_columns(cols: Sequence[int], n: int) -> np.ndarray:
    M = np.zeros((n, len(cols)), dtype=np.int64)
    for j, c in enumerate(cols):
        for i in range(n):
            M[i, j] = (c >> i) & 1
    return M


def apply_columns(cols: Sequence[int], v: int) -> int:
    out = 0
    j = 0
    while v:
        if v & 1:
            out ^= cols[j]
        v >>= 1
        j += 1
    return out


def compose_columns(A: Sequence[int], B: Sequence[int]) -> tuple[int, ...]:
    """Columns of the product A @ B."""
    return tuple(apply_columns(A, b) for b in B)


def pack_columns(cols: Sequence[int], n: int) -> int:
    out = 0
    for j, c in enumerate(cols):
        out |= c << (n * j)
    return out


def unpack_columns(packed: int, n: int) -> tuple[int, ...]:
    mask = (1 << n) - 1
    return tuple((packed >> (n * j)) & mask for j in range(n))


class UnknownCurveError(KeyError):
    pass


def twist_word_matrix(word, catalog, ring: str = Z2) -> np.ndarray:
    """Homology matrix of a composite of Dehn twists.

    ``word`` is a sequence of ``(curve name, exponent)`` pairs (a TwistWord
    works) and ``catalog`` anything with a ``curves`` mapping or a plain
    mapping from names to classes.  The leftmost letter acts last, so the
    result is the product of the letter matrices in word order.
    """
    _check_ring(ring)
    curves = getattr(catalog, "curves", catalog)
    letters = list(getattr(word, "letters", word))
    surface = getattr(catalog, "surface", None)
    if surface is None:
        if not curves:
            raise ValueError("cannot infer rank from an empty catalog")
        surface = next(iter(curves.values())).surface
    M = np.eye(surface.rank, dtype=np.int64)
    cache: dict[tuple[str, int], np.ndarray] = {}
    for name, exp in letters:
        if name not in curves:
            raise UnknownCurveError(name)
        sign = 1 if exp > 0 else -1
        key = (name, sign)
        if key not in cache:
            cache[key] = transvection_matrix(curves[name], sign, ring)
        for _ in range(abs(exp)):
            M = M @ cache[key]
            if ring == Z2:
                M %= 2
    return M
