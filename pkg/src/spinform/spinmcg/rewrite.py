"""
Certified rewriting of twist words.

Each step of a chain must follow from the previous one by a single
elementary move, licensed by the catalog's relation table:

    FreeCancel         delete or insert x x^-1
    Commute(a, b)      swap adjacent a^s b^t, needs a commute pair
    Braid(a, b)        one of the six three-letter forms of aba = bab
    ConjugateRewrite   a^s x a^-s  <->  the single twist along tau_a^s(x)
    Regroup            the steps expand to the same letters

Derived curves for ConjugateRewrite are named ``"a(x)"`` and ``"a^-1(x)"``
and get their class from the transvection action, so they need no catalog
entry.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..homology import HomologyClass, Z, transvect, twist_word_matrix
from .catalogs import BRAID, COMMUTE, CurveCatalog
from .words import Letter, TwistWord

FREE_CANCEL = "FreeCancel"
COMMUTE_MOVE = "Commute"
BRAID_MOVE = "Braid"
CONJUGATE = "ConjugateRewrite"
REGROUP = "Regroup"
MOVES = (FREE_CANCEL, COMMUTE_MOVE, BRAID_MOVE, CONJUGATE, REGROUP)


class UnverifiableMoveError(ValueError):
    """The move touches a pair the relation table says nothing about."""


@dataclass(frozen=True)
class Move:
    kind: str
    pair: tuple[str, str] | None = None

    def __post_init__(self):
        if self.kind not in MOVES:
            raise ValueError(f"unknown move {self.kind!r}")
        if self.kind in (COMMUTE_MOVE, BRAID_MOVE) and (self.pair is None or len(self.pair) != 2):
            raise ValueError(f"{self.kind} needs a pair of curve names")

    def __str__(self):
        return f"{self.kind}({', '.join(self.pair)})" if self.pair else self.kind


@dataclass(frozen=True)
class RewriteChain:
    steps: tuple[TwistWord, ...]
    moves: tuple[Move, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.moves) != len(self.steps) - 1:
            raise ValueError("a chain of n steps needs n - 1 moves")


@dataclass
class ChainReport:
    verdicts: list[str] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v == "pass" for v in self.verdicts)

    @property
    def status(self) -> str:
        if self.ok:
            return "pass"
        if "fail" in self.verdicts:
            return "fail"
        return "unverifiable"


# ---------- derived curves


_DERIVED = re.compile(r"^(?P<w>[^()]+?)(?:\^(?P<s>-?1))?\((?P<x>.+)\)$")


def resolve_curve(name: str, catalog: CurveCatalog) -> HomologyClass:
    """Class of a catalog curve or a derived twisted image ``a(x)`` / ``a^-1(x)``."""
    if name in catalog.curves:
        return catalog.curves[name]
    m = _DERIVED.match(name)
    if not m:
        raise KeyError(name)
    sign = int(m.group("s") or 1)
    w = resolve_curve(m.group("w"), catalog)
    x = resolve_curve(m.group("x"), catalog)
    return HomologyClass(transvect(w, x, sign, Z).coords, catalog.surface, name)


def conjugate_name(w: str, sign: int, x: str) -> str:
    return f"{w}({x})" if sign > 0 else f"{w}^-1({x})"


class _Curves(dict):
    """Curve lookup that also resolves derived names."""

    def __init__(self, catalog: CurveCatalog):
        super().__init__(catalog.curves)
        self.catalog = catalog

    def __contains__(self, name):
        try:
            self[name]
        except KeyError:
            return False
        return True

    def __missing__(self, name):
        cls = resolve_curve(name, self.catalog)
        self[name] = cls
        return cls


def word_matrix(word: TwistWord, catalog: CurveCatalog, ring: str = Z) -> np.ndarray:
    curves = _Curves(catalog)
    for n in word.names():
        curves[n]
    return twist_word_matrix(word, _CatalogView(catalog, curves), ring)


@dataclass
class _CatalogView:
    catalog: CurveCatalog
    curves: dict

    @property
    def surface(self):
        return self.catalog.surface


def verify_identity_symplectic(lhs: TwistWord, rhs: TwistWord, catalog: CurveCatalog, ring: str = Z) -> bool:
    """Equality of the two words in the symplectic representation (necessary condition only)."""
    return bool(np.array_equal(word_matrix(lhs, catalog, ring), word_matrix(rhs, catalog, ring)))


# ---------- elementary moves

_BRAID_FORMS = (
    ((("A", 1), ("B", 1), ("A", 1)), (("B", 1), ("A", 1), ("B", 1))),
    ((("A", -1), ("B", -1), ("A", -1)), (("B", -1), ("A", -1), ("B", -1))),
    ((("A", 1), ("B", 1), ("A", -1)), (("B", -1), ("A", 1), ("B", 1))),
    ((("A", 1), ("B", -1), ("A", -1)), (("B", -1), ("A", -1), ("B", 1))),
    ((("A", -1), ("B", 1), ("A", 1)), (("B", 1), ("A", 1), ("B", -1))),
    ((("A", -1), ("B", -1), ("A", 1)), (("B", 1), ("A", -1), ("B", -1))),
)


def braid_forms(a: str, b: str) -> list[tuple[tuple[Letter, ...], tuple[Letter, ...]]]:
    out = []
    for x, y in ((a, b), (b, a)):
        sub = {"A": x, "B": y}
        for lhs, rhs in _BRAID_FORMS:
            L = tuple((sub[s], e) for s, e in lhs)
            R = tuple((sub[s], e) for s, e in rhs)
            out.append((L, R))
            out.append((R, L))
    return out


def _free_cancel_images(u: tuple[Letter, ...]) -> Iterable[tuple[Letter, ...]]:
    for k in range(len(u) - 1):
        if u[k][0] == u[k + 1][0] and u[k][1] == -u[k + 1][1]:
            yield u[:k] + u[k + 2:]


def _commute_images(u: tuple[Letter, ...], a: str, b: str) -> Iterable[tuple[Letter, ...]]:
    for k in range(len(u) - 1):
        if {u[k][0], u[k + 1][0]} == {a, b} and a != b:
            yield u[:k] + (u[k + 1], u[k]) + u[k + 2:]


def _braid_images(u: tuple[Letter, ...], a: str, b: str) -> Iterable[tuple[Letter, ...]]:
    forms = braid_forms(a, b)
    for k in range(len(u) - 2):
        window = u[k:k + 3]
        for L, R in forms:
            if window == L:
                yield u[:k] + R + u[k + 3:]


def _conjugate_images(u: tuple[Letter, ...], catalog: CurveCatalog) -> Iterable[tuple[Letter, ...]]:
    # collapse a^s x^e a^-s into tau_{a^s(x)}^e
    for k in range(len(u) - 2):
        (w, s), (x, e), (w2, s2) = u[k:k + 3]
        if w == w2 and s2 == -s and x != w:
            yield u[:k] + ((conjugate_name(w, s, x), e),) + u[k + 3:]


def check_move(u: TwistWord, v: TwistWord, move: Move, catalog: CurveCatalog) -> str:
    """'pass', 'fail' or 'unverifiable' for a single declared step u -> v."""
    a, b = u.letters, v.letters
    if move.kind == REGROUP:
        return "pass" if a == b else "fail"
    if move.kind == FREE_CANCEL:
        ok = b in set(_free_cancel_images(a)) or a in set(_free_cancel_images(b))
        return "pass" if ok else "fail"
    if move.kind == CONJUGATE:
        ok = b in set(_conjugate_images(a, catalog)) or a in set(_conjugate_images(b, catalog))
        return "pass" if ok else "fail"
    p, r = move.pair
    for nm in (p, r):
        if nm not in catalog.curves:
            return "unverifiable"
    rel = catalog.relation(p, r)
    if rel is None:
        return "unverifiable"
    if move.kind == COMMUTE_MOVE:
        if rel != COMMUTE:
            return "fail"
        return "pass" if b in set(_commute_images(a, p, r)) else "fail"
    if move.kind == BRAID_MOVE:
        if rel != BRAID:
            return "fail"
        return "pass" if b in set(_braid_images(a, p, r)) else "fail"
    return "fail"


def verify_rewrite_chain(chain: RewriteChain, catalog: CurveCatalog, *, strict: bool = False) -> ChainReport:
    """Check every declared move; with ``strict`` an unlicensed pair raises."""
    report = ChainReport()
    for k, move in enumerate(chain.moves):
        u, v = chain.steps[k], chain.steps[k + 1]
        verdict = check_move(u, v, move, catalog)
        if strict and verdict == "unverifiable":
            raise UnverifiableMoveError(f"step {k + 1}: no relation recorded for {move.pair}")
        report.verdicts.append(verdict)
        if verdict != "pass":
            report.messages.append(f"step {k + 1}: {move} does not take '{u}' to '{v}' ({verdict})")
    return report


# ---------- search for elementary chains (used to author chain files)


def neighbours(u: tuple[Letter, ...], catalog: CurveCatalog, alphabet: Sequence[str],
               max_len: int) -> Iterable[tuple[tuple[Letter, ...], Move]]:
    for w in _free_cancel_images(u):
        yield w, Move(FREE_CANCEL)
    if len(u) + 2 <= max_len:
        for k in range(len(u) + 1):
            for x in alphabet:
                for s in (1, -1):
                    yield u[:k] + ((x, s), (x, -s)) + u[k:], Move(FREE_CANCEL)
    seen = set()
    for k in range(len(u) - 1):
        x, y = u[k][0], u[k + 1][0]
        if x != y and frozenset((x, y)) not in seen:
            seen.add(frozenset((x, y)))
    for pair in seen:
        x, y = sorted(pair)
        rel = catalog.relation(x, y)
        if rel == COMMUTE:
            for w in _commute_images(u, x, y):
                yield w, Move(COMMUTE_MOVE, (x, y))
        elif rel == BRAID:
            for w in _braid_images(u, x, y):
                yield w, Move(BRAID_MOVE, (x, y))


def find_rewrite_path(u: TwistWord, v: TwistWord, catalog: CurveCatalog, *, slack: int = 2,
                      max_states: int = 200_000) -> RewriteChain | None:
    """Bidirectional breadth-first search for an elementary chain from u to v."""
    a, b = u.letters, v.letters
    if a == b:
        return RewriteChain((u, v), (Move(REGROUP),))
    alphabet = sorted(u.names() | v.names())
    max_len = max(len(a), len(b)) + slack
    fwd = {a: None}
    bwd = {b: None}
    qf, qb = deque([a]), deque([b])
    meet = None
    while (qf or qb) and meet is None and len(fwd) + len(bwd) < max_states:
        for q, mine, other in ((qf, fwd, bwd), (qb, bwd, fwd)):
            for _ in range(len(q)):
                x = q.popleft()
                for y, mv in neighbours(x, catalog, alphabet, max_len):
                    if y in mine:
                        continue
                    mine[y] = (x, mv)
                    if y in other:
                        meet = y
                        break
                    q.append(y)
                if meet is not None:
                    break
            if meet is not None:
                break
    if meet is None:
        return None
    left = []
    x = meet
    while fwd[x] is not None:
        prev, mv = fwd[x]
        left.append((prev, mv))
        x = prev
    left.reverse()
    steps = [p for p, _ in left] + [meet]
    moves = [mv for _, mv in left]
    x = meet
    while bwd[x] is not None:
        # neighbour moves are symmetric, so the move from nxt to x also runs x to nxt
        nxt, mv = bwd[x]
        moves.append(mv)
        steps.append(nxt)
        x = nxt
    return RewriteChain(tuple(TwistWord(w) for w in steps), tuple(moves))


def _commute_cancel_once(u: tuple[Letter, ...], catalog: CurveCatalog):
    """Slide one letter left onto its inverse through commuting letters, then cancel."""
    for l in range(1, len(u)):
        name, e = u[l]
        for k in range(l - 1, -1, -1):
            if u[k] == (name, -e):
                path, w = [], u
                for p in range(l, k + 1, -1):
                    x = w[p - 1][0]
                    w = w[:p - 1] + (w[p], w[p - 1]) + w[p + 1:]
                    path.append((w, Move(COMMUTE_MOVE, tuple(sorted((name, x))))))
                w = w[:k] + w[k + 2:]
                path.append((w, Move(FREE_CANCEL)))
                return path
            if u[k][0] == name or catalog.relation(name, u[k][0]) != COMMUTE:
                break
    return None


def commute_reduce_path(u: TwistWord, v: TwistWord, catalog: CurveCatalog) -> RewriteChain | None:
    """Chain from u to v using only commutations and cancellations, found greedily.

    Both words are reduced by sliding letters onto their inverses; the chain
    exists when the two reductions end at the same word.
    """
    def reduce(w):
        trail = [(w, None)]
        while True:
            step = _commute_cancel_once(trail[-1][0], catalog)
            if step is None:
                return trail
            trail.extend(step)

    left, right = reduce(u.letters), reduce(v.letters)
    if left[-1][0] != right[-1][0]:
        return None
    steps = [w for w, _ in left]
    moves = [m for _, m in left[1:]]
    for k in range(len(right) - 1, 0, -1):
        moves.append(right[k][1])
        steps.append(right[k - 1][0])
    if len(steps) == 1:
        return RewriteChain((u, v), (Move(REGROUP),))
    return RewriteChain(tuple(TwistWord(w) for w in steps), tuple(moves))
