"""
Twist words and their text syntax.

A word is written left to right in composition order, so ``"c2 c1 c2^-1"``
means tau_{c2} o tau_{c1} o tau_{c2}^{-1}.  Letters are curve names,
optionally raised to an integer power; parentheses group and may be powered
as a whole: ``"(b4 c5 b6)^2 b4^-2"``.  Names may contain index templates in
braces, ``"c{2*i+1}"``, which are evaluated against integer parameters.
"""

from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

Letter = tuple[str, int]


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class TwistWord:
    """A sequence of Dehn twist letters with exponents +1 or -1."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        expanded: list[Letter] = []
        for name, exp in self.letters:
            exp = int(exp)
            if exp == 0:
                continue
            s = 1 if exp > 0 else -1
            expanded.extend([(name, s)] * abs(exp))
        object.__setattr__(self, "letters", tuple(expanded))

    @classmethod
    def parse(cls, text: str, params: Mapping[str, int] | None = None,
              names: Mapping[str, str] | None = None) -> "TwistWord":
        return cls(tuple(parse_letters(text, params or {}, names or {})))

    @classmethod
    def twist(cls, name: str, power: int = 1) -> "TwistWord":
        return cls(((name, power),))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "TwistWord":
        if k >= 0:
            return TwistWord(self.letters * k)
        return self.inverse() ** (-k)

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple((n, -e) for n, e in reversed(self.letters)))

    def names(self) -> set[str]:
        return {n for n, _ in self.letters}

    def freely_reduced(self) -> "TwistWord":
        out: list[Letter] = []
        for letter in self.letters:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return TwistWord(tuple(out))

    def __str__(self):
        if not self.letters:
            return "1"
        # collapse runs for display
        runs: list[list] = []
        for n, e in self.letters:
            if runs and runs[-1][0] == n and (runs[-1][1] > 0) == (e > 0):
                runs[-1][1] += e
            else:
                runs.append([n, e])
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in runs)


# ---------- index templates

_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}


def eval_index(expr: str, params: Mapping[str, int]) -> int:
    """Evaluate a small integer expression such as ``2*i+1`` or ``2g``."""
    src = re.sub(r"(\d)([A-Za-z_])", r"\1*\2", expr.strip())
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise WordSyntaxError(f"bad index expression {expr!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in params:
                raise WordSyntaxError(f"unbound index parameter {node.id!r} in {expr!r}")
            return int(params[node.id])
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        raise WordSyntaxError(f"unsupported index expression {expr!r}")

    return ev(tree)


def expand_name(template: str, params: Mapping[str, int]) -> str:
    return re.sub(r"\{([^{}]*)\}", lambda m: str(eval_index(m.group(1), params)), template)


# ---------- word parser

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\^\s*-?\d+)|([A-Za-z_][A-Za-z0-9_']*(?:\{[^{}]*\}[A-Za-z0-9_']*)*))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.replace("∘", " ")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"cannot parse word at {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("(", ""))
        elif m.group(2):
            out.append((")", ""))
        elif m.group(3):
            out.append(("^", m.group(3)[1:].strip()))
        else:
            out.append(("name", m.group(4)))
    return out


def parse_letters(text: str, params: Mapping[str, int], names: Mapping[str, str]) -> list[Letter]:
    toks = _tokens(text)
    pos = 0

    def group() -> list[Letter]:
        nonlocal pos
        out: list[Letter] = []
        while pos < len(toks) and toks[pos][0] != ")":
            kind, val = toks[pos]
            pos += 1
            if kind == "(":
                inner = group()
                if pos >= len(toks) or toks[pos][0] != ")":
                    raise WordSyntaxError(f"unbalanced parentheses in {text!r}")
                pos += 1
                item = inner
            elif kind == "name":
                name = names.get(val, val)
                item = [(expand_name(name, params), 1)]
            else:
                raise WordSyntaxError(f"exponent without a base in {text!r}")
            if pos < len(toks) and toks[pos][0] == "^":
                k = int(toks[pos][1])
                pos += 1
                item = _power(item, k)
            out.extend(item)
        return out

    letters = group()
    if pos != len(toks):
        raise WordSyntaxError(f"unbalanced parentheses in {text!r}")
    return letters


def _power(letters: list[Letter], k: int) -> list[Letter]:
    if k >= 0:
        return letters * k
    inv = [(n, -e) for n, e in reversed(letters)]
    return inv * (-k)


def word(text: str, **params: int) -> TwistWord:
    return TwistWord.parse(text, params)


def product(words: Iterable[TwistWord]) -> TwistWord:
    letters: tuple[Letter, ...] = ()
    for w in words:
        letters += w.letters
    return TwistWord(letters)
