"""
Build the shipped identity chains for the spin generating set.

Each identity is transcribed line by line.  For every gap between lines a
bidirectional search looks for elementary moves (free cancellation,
commutation of disjoint curves, braid relations of curves meeting once) on
one concrete instance; the path found is written back as templates and then
re-checked on every instance for g = 3..6.  Gaps the search cannot bridge
are stored as null, so they are checked only in the symplectic
representation.

    python3 tools/make_chains.py
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from spinform.spinmcg.catalogs import catalog_hirose  # noqa: E402
from spinform.spinmcg.chains import identity_from_dict, verify_identity  # noqa: E402
from spinform.spinmcg.rewrite import commute_reduce_path, find_rewrite_path  # noqa: E402
from spinform.spinmcg.words import TwistWord, eval_index, expand_name  # noqa: E402

OUT = ROOT / "src" / "spinform" / "data" / "chains" / "spin_generators.json"

P = "(c{2j+1} b{2j} b{2j+2})"

IDENTITIES = [
    {
        "name": "D_odd",
        "description": "square of an odd chain twist from the triple products beta_i",
        "params": {"i": [2, "g-1"]},
        "lines": [
            "c{2i+1}^2",
            "c{2i+1}^2 (b{2i} b{2i+2} b{2i+2}^-1 b{2i}^-1)^2",
            "(b{2i} c{2i+1} b{2i+2})^2 b{2i}^-2 b{2i+2}^-2",
        ],
    },
    {
        "name": "D_3",
        "description": "square of c_3 from beta_1 and the squares of c_1, b_4",
        "lines": ["c3^2", "(c1 c3 b4)^2 c1^-2 b4^-2"],
    },
    {
        "name": "D_last",
        "description": "square of c_{2g+1} from beta_g",
        "lines": [
            "c{2g+1}^2",
            "c{2g+1}^2 (b{2g-2} c{2g-1})^2 (b{2g-2} c{2g-1})^-2",
            "(b{2g-2} c{2g-1} c{2g+1})^2 c{2g-1}^-2 b{2g-2}^-2",
        ],
    },
    {
        "name": "Y_even",
        "description": "the conjugate c_{2j} b_{2j} c_{2j}^-1 as a conjugate of alpha_j",
        "params": {"j": [2, "g-1"]},
        "lines": [
            "c{2j} b{2j} c{2j}^-1",
            f"{P}^-1 {P} (c{{2j}} b{{2j}} c{{2j}}^-1) {P}^-1 {P}",
            f"{P}^-1 b{{2j+2}} c{{2j+1}} (b{{2j}} c{{2j}} b{{2j}} c{{2j}}^-1 b{{2j}}^-1) c{{2j+1}}^-1 b{{2j+2}}^-1 {P}",
            f"{P}^-1 b{{2j+2}} c{{2j+1}} c{{2j}} c{{2j+1}}^-1 b{{2j+2}}^-1 {P}",
            f"{P}^-1 (c{{2j+1}} c{{2j}} c{{2j+1}}^-1) {P}",
        ],
    },
    {
        "name": "b_conjugation",
        "description": "b_{2i} equals its conjugate by c_{2i} b_{2i}",
        "params": {"i": [2, "g-1"]},
        "lines": ["b{2i}", "c{2i} b{2i} c{2i} b{2i}^-1 c{2i}^-1"],
    },
    {
        "name": "b_conjugation_consequence",
        "description": "b_{2i} c_{2i} rewritten with c_{2i}^-1 in front",
        "params": {"i": [2, "g-1"]},
        "lines": ["b{2i} c{2i}", "c{2i}^-1 b{2i} c{2i} b{2i}"],
    },
    {
        "name": "c_inv_b_c",
        "description": "c_{2i}^-1 b_{2i} c_{2i} through the braid relation",
        "params": {"i": [2, "g-1"]},
        "lines": [
            "c{2i}^-1 b{2i} c{2i}",
            "c{2i}^-1 c{2i}^-1 b{2i} c{2i} b{2i}",
            "c{2i}^-2 (b{2i} c{2i} b{2i})",
            "c{2i}^-2 (b{2i} c{2i} b{2i}^-1) b{2i}^2",
        ],
    },
    {
        "name": "c_square_split",
        "description": "c_{2i}^2 as a conjugate of b_{2i}^2",
        "params": {"i": [2, "g-1"]},
        "lines": ["c{2i}^2", "(b{2i} c{2i} b{2i}^-1) b{2i}^2 (c{2i}^-1 b{2i}^-1 c{2i})"],
    },
    {
        "name": "conjugate_inverse",
        "description": "c_{2i}^-1 b_{2i}^-1 c_{2i} is the inverse of b_{2i} c_{2i} b_{2i}^-1",
        "params": {"i": [2, "g-1"]},
        "lines": [
            "c{2i}^-1 b{2i}^-1 c{2i}",
            "b{2i} c{2i}^-1 b{2i}^-1",
            "(b{2i} c{2i} b{2i}^-1)^-1",
        ],
    },
    {
        "name": "b_c_b_inv",
        "description": "b_{2i} c_{2i} b_{2i}^-1 as a conjugate of alpha_i by beta_i",
        "params": {"i": [2, "g-1"]},
        "lines": [
            "b{2i} c{2i} b{2i}^-1",
            "b{2i} (b{2i+2} c{2i+1}^-1 c{2i+1}) c{2i} (c{2i+1}^-1 c{2i+1} b{2i+2}^-1) b{2i}^-1",
            "b{2i} b{2i+2} c{2i+1}^-1 (c{2i+1} c{2i} c{2i+1}^-1) c{2i+1} b{2i+2}^-1 b{2i}^-1",
            "(b{2i} b{2i+2} c{2i+1}) c{2i+1}^-2 (c{2i+1} c{2i} c{2i+1}^-1) c{2i+1}^2 (c{2i+1}^-1 b{2i+2}^-1 b{2i}^-1)",
        ],
    },
    {
        "name": "D_2",
        "description": "square of c_2 as a conjugate of c_1^2",
        "g_min": 3,
        "lines": [
            "c2^2",
            "c2 (c1 c2 c2^-1 c1^-1) c2",
            "(c2 c1 c2)(c2^-1 c1^-1) c2",
            "(c1 c2 c1)(c2^-1 c1^-1) c2",
            "(c1 c2 c1^-1) c1^2 (c2^-1 c1^-1 c2)",
            "(c1 c2 c1^-1) c1^2 (c1 c2 c1^-1)^-1",
        ],
    },
    {
        "name": "c1_c2_conjugate",
        "description": "c_1 c_2 c_1^-1 as a conjugate of alpha_1 by beta_1",
        "g_min": 3,
        "lines": [
            "c1 c2 c1^-1",
            "(c1 c3 b4) c3^-2 (c3 c2 c3^-1) (c1^-1 c3^-1 b4^-1) c3^2",
        ],
    },
    {
        "name": "D_2g",
        "description": "square of c_{2g} as a conjugate of c_{2g+1}^2",
        "lines": [
            "c{2g}^2",
            "c{2g}^2 (c{2g+1} c{2g}) (c{2g+1} c{2g})^-1",
            "c{2g} (c{2g} c{2g+1} c{2g}) (c{2g+1} c{2g})^-1",
            "c{2g} (c{2g+1} c{2g} c{2g+1}) (c{2g+1} c{2g})^-1",
            "c{2g} c{2g+1} c{2g} c{2g+1} c{2g}^-1 c{2g+1}^-1",
            "(c{2g+1} c{2g} c{2g+1}) c{2g+1} c{2g}^-1 c{2g+1}^-1",
            "(c{2g+1} c{2g} c{2g+1}^-1) c{2g+1}^2 (c{2g+1} c{2g}^-1 c{2g+1}^-1)",
        ],
    },
    {
        "name": "even_odd_conjugate",
        "description": "c_{2i} c_{2i-1} c_{2i}^-1 through b_{2i} and c_{2i}",
        "params": {"i": [1, "g"]},
        "lines": [
            "c{2i} c{2i-1} c{2i}^-1",
            "b{2i} c{2i} b{2i} c{2i}^-1 b{2i}^-1 c{2i-1} c{2i}^-1",
            "(b{2i} c{2i} b{2i}) c{2i}^-1 c{2i-1} b{2i}^-1 c{2i}^-1",
            "(c{2i} b{2i} c{2i}) c{2i}^-1 c{2i-1} b{2i}^-1 c{2i}^-1",
            "(c{2i} b{2i} c{2i}^-1) c{2i} c{2i-1} b{2i}^-1 c{2i}^-1",
            "(c{2i} b{2i} c{2i}^-1) c{2i} (c{2i} c{2i-1} c{2i} c{2i-1}^-1 c{2i}^-1) b{2i}^-1 c{2i}^-1",
            "(c{2i} b{2i} c{2i}^-1) c{2i}^2 (c{2i-1} c{2i} c{2i-1}^-1) (c{2i}^-1 b{2i}^-1 c{2i}^-1)",
            "(c{2i} b{2i} c{2i}^-1) c{2i}^2 (c{2i-1} c{2i} c{2i-1}^-1) c{2i}^-2 (c{2i} b{2i}^-1 c{2i}^-1)",
        ],
    },
    {
        "name": "odd_even_conjugate",
        "description": "c_{2i-1} c_{2i} c_{2i-1}^-1 as a conjugate of b_{2i} c_{2i} b_{2i}^-1",
        "params": {"i": [2, "g"]},
        "lines": [
            "c{2i-1} c{2i} c{2i-1}^-1",
            "c{2i-1} (b{2i-2} b{2i}^-1 b{2i}) c{2i} (b{2i}^-1 b{2i} b{2i-2}^-1) c{2i-1}^-1",
            "(c{2i-1} b{2i-2} b{2i}) b{2i}^-2 (b{2i} c{2i} b{2i}^-1) b{2i}^2 (b{2i-2}^-1 c{2i-1}^-1 b{2i}^-1)",
            "(c{2i-1} b{2i-2} b{2i}) b{2i}^-2 (b{2i} c{2i} b{2i}^-1) b{2i}^2 (c{2i-1} b{2i-2} b{2i})^-1",
        ],
    },
]

NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*(?:\{[^{}]*\}[A-Za-z0-9_']*)*")


def templates_in(ident: dict) -> set[str]:
    out = set()
    for line in ident["lines"]:
        out.update(NAME.findall(line))
    return out


def search_binding(ident) -> dict:
    g = max(ident.g_min, 5)
    b = {"g": g}
    for p, (lo, hi) in ident.params.items():
        lo_v, hi_v = eval_index(str(lo), b), eval_index(str(hi), b)
        b[p] = lo_v + 1 if lo_v + 1 <= hi_v else lo_v
    return b


def to_template(word: TwistWord, back: dict) -> str:
    parts = []
    for n, e in word.letters:
        t = back[n]
        parts.append(t if e == 1 else f"{t}^-1")
    return " ".join(parts) if parts else "1"


def author(raw: dict, slack: int = 2) -> dict:
    ident = identity_from_dict(raw)
    binding = search_binding(ident)
    g = binding["g"]
    cat = catalog_hirose(g)
    back = {}
    for t in templates_in(raw):
        c = expand_name(t, binding)
        if c in back and back[c] != t:
            raise SystemExit(f"{raw['name']}: {t} and {back[c]} coincide at {binding}")
        back[c] = t
    words = ident.words(binding)
    steps = []
    for k in range(len(words) - 1):
        path = find_rewrite_path(words[k], words[k + 1], cat, slack=slack)
        if path is None:
            path = commute_reduce_path(words[k], words[k + 1], cat)
        if path is None:
            print(f"  {raw['name']} gap {k + 1}: no elementary path", file=sys.stderr)
            steps.append(None)
            continue
        gap = []
        for w, mv in zip(path.steps[1:], path.moves):
            entry = {"word": to_template(w, back), "move": mv.kind}
            if mv.pair:
                entry["pair"] = [back[mv.pair[0]], back[mv.pair[1]]]
            gap.append(entry)
        steps.append(gap)
    out = {"name": raw["name"], "description": raw["description"]}
    if "g_min" in raw:
        out["g_min"] = raw["g_min"]
    if "params" in raw:
        out["params"] = raw["params"]
    out["lines"] = raw["lines"]
    out["steps"] = steps
    return out


def main() -> None:
    authored = []
    for raw in IDENTITIES:
        rec = author(raw)
        ident = identity_from_dict(rec)
        # a path found on one instance must hold on all of them
        for g in range(3, 7):
            rep = verify_identity(ident, g, catalog_hirose(g))
            if rep.symplectic != "pass":
                raise SystemExit(f"{rec['name']} g={g}: symplectic {rep.messages}")
            if rep.moves == "fail":
                raise SystemExit(f"{rec['name']} g={g}: moves {rep.messages}")
        print(f"{rec['name']}: {sum(s is not None for s in rec['steps'])}/{len(rec['steps'])} gaps with moves")
        authored.append(rec)
    doc = {
        "catalog": "hirose",
        "notes": [
            "Each identity expresses a Hirose generator through the 3g spin generator words; "
            "consecutive lines are claimed equal.",
            "steps were found by breadth-first search over elementary moves (or, failing that, by "
            "sliding letters onto their inverses through commuting letters) on one instance and "
            "re-checked on every instance with 3 <= g <= 6.",
            "A null gap has no elementary path within the search bound; it is checked only in the "
            "symplectic representation.",
        ],
        "identities": authored,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main()
