"""
Identity chains: sequences of equal twist words, indexed by genus and a
position parameter.

Lines and step words are templates such as ``c{2i+1}^2 b{2i}^-1``; names in
braces are evaluated for each instance ``(g, i)``.  Between consecutive lines
a chain may record elementary steps, each giving the move and the word it
produces.  A gap without steps is checked only in the symplectic
representation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from ..datafiles import data_path
from ..homology import Z
from .catalogs import CurveCatalog
from .rewrite import Move, RewriteChain, verify_identity_symplectic, verify_rewrite_chain
from .words import TwistWord, eval_index


@dataclass(frozen=True)
class Step:
    word: str
    move: str
    pair: tuple[str, str] | None = None


@dataclass(frozen=True)
class IdentityChain:
    name: str
    lines: tuple[str, ...]
    params: dict = field(default_factory=dict)
    g_min: int = 1
    steps: tuple[tuple[Step, ...] | None, ...] | None = None
    description: str = ""
    note: str = ""

    def instances(self, g: int) -> Iterator[dict]:
        """Every parameter binding valid at genus g (nothing when g < g_min)."""
        if g < self.g_min:
            return
        bindings = [{"g": g}]
        for p, (lo, hi) in self.params.items():
            nxt = []
            for b in bindings:
                lo_v = eval_index(str(lo), b)
                hi_v = eval_index(str(hi), b)
                nxt.extend({**b, p: v} for v in range(lo_v, hi_v + 1))
            bindings = nxt
        yield from bindings

    def words(self, binding: dict) -> list[TwistWord]:
        return [TwistWord.parse(t, binding) for t in self.lines]

    def rewrite_chain(self, gap: int, binding: dict) -> RewriteChain | None:
        if self.steps is None or self.steps[gap] is None:
            return None
        words = [TwistWord.parse(self.lines[gap], binding)]
        moves = []
        for s in self.steps[gap]:
            words.append(TwistWord.parse(s.word, binding))
            pair = None if s.pair is None else tuple(eval_from(p, binding) for p in s.pair)
            moves.append(Move(s.move, pair))
        return RewriteChain(tuple(words), tuple(moves), f"{self.name}[{gap}]")


def eval_from(template: str, binding: dict) -> str:
    return TwistWord.parse(template, binding).letters[0][0]


def identity_from_dict(d: dict) -> IdentityChain:
    steps = d.get("steps")
    if steps is not None:
        if len(steps) != len(d["lines"]) - 1:
            raise ValueError(f"{d['name']}: steps must have one entry per gap between lines")
        steps = tuple(
            None if gap is None else tuple(Step(s["word"], s["move"], tuple(s["pair"]) if "pair" in s else None)
                                           for s in gap)
            for gap in steps
        )
    return IdentityChain(
        name=d["name"],
        lines=tuple(d["lines"]),
        params={k: tuple(v) for k, v in d.get("params", {}).items()},
        g_min=int(d.get("g_min", 1)),
        steps=steps,
        description=d.get("description", ""),
        note=d.get("note", ""),
    )


@dataclass(frozen=True)
class ChainFile:
    catalog: str
    identities: tuple[IdentityChain, ...]
    notes: tuple[str, ...] = ()


def load_chain_file(path: str | Path | None = None) -> ChainFile:
    from ..schemas import validate_document

    path = Path(path) if path is not None else data_path("chains", "spin_generators.json")
    with open(path) as fh:
        data = json.load(fh)
    validate_document(data, "chain")
    return ChainFile(data["catalog"], tuple(identity_from_dict(d) for d in data["identities"]),
                     tuple(data.get("notes", ())))


@dataclass
class IdentityReport:
    name: str
    instances: int = 0
    symplectic: str = "pass"
    moves: str = "pass"
    messages: list[str] = field(default_factory=list)

    def as_record(self) -> dict:
        rec = {"identity": self.name, "instances": self.instances,
               "symplectic": self.symplectic, "moves": self.moves}
        if self.messages:
            rec["messages"] = list(self.messages)
        return rec


_RANK = {"pass": 0, "unverifiable": 1, "fail": 2}


def _worse(a: str, b: str) -> str:
    return a if _RANK[a] >= _RANK[b] else b


def verify_identity(ident: IdentityChain, g: int, catalog: CurveCatalog, ring: str = Z) -> IdentityReport:
    """Symplectic equality of all lines, and the recorded moves, for every instance at genus g."""
    rep = IdentityReport(ident.name)
    for binding in ident.instances(g):
        rep.instances += 1
        words = ident.words(binding)
        for k in range(1, len(words)):
            if not verify_identity_symplectic(words[0], words[k], catalog, ring):
                rep.symplectic = "fail"
                rep.messages.append(f"{binding}: line {k + 1} differs from line 1 in the symplectic representation")
        for gap in range(len(words) - 1):
            chain = ident.rewrite_chain(gap, binding)
            if chain is None:
                rep.moves = _worse(rep.moves, "unverifiable")
                continue
            if chain.steps[-1].letters != words[gap + 1].letters:
                rep.moves = "fail"
                rep.messages.append(f"{binding}: steps after line {gap + 1} do not end at line {gap + 2}")
                continue
            r = verify_rewrite_chain(chain, catalog)
            rep.moves = _worse(rep.moves, r.status)
            rep.messages.extend(f"{binding}: line {gap + 1}: {m}" for m in r.messages)
    if rep.instances == 0:
        rep.symplectic = rep.moves = "unverifiable"
        rep.messages.append(f"no instances at g = {g}")
    # keep reports short: the first few messages carry the evidence
    del rep.messages[8:]
    return rep
