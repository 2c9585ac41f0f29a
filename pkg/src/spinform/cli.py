"""
Command-line front end.  Every subcommand writes one JSON report
(deterministic key order, no timestamps) to stdout or ``--out``.

Exit codes: 0 success, 1 verification failure, 2 inconsistent input,
3 guard or range refusal, 4 schema or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .extendibility import (
    ContradictionError,
    InapplicableObstructionError,
    InconsistentFactsError,
    Status,
    flexibility_verdict,
    obstruct_essential,
    parity_flexibility,
    slice_obstruction,
    thm3_propagate,
)
from .homology import HomologyClass, SurfaceSignature, Z, Z2
from .openbook import VariationData, bareiss_det, is_homotopy_sphere, universality_obstruction, variation_from_monodromy
from .plumbing import (
    AMBIENTS,
    HOMOLOGY_BALL,
    DescriptorError,
    InconsistentDescriptorError,
    load_descriptor,
    rokhlin_form,
    traversal_framing,
)
from .quadform import MAX_ENUMERATION_RANK, UndefinedArfError, arf, arf_census, enumerate_forms
from .schemas import SchemaError, validate_document

EXIT_OK, EXIT_FAIL, EXIT_INCONSISTENT, EXIT_GUARD, EXIT_SCHEMA = 0, 1, 2, 3, 4

GENERATOR_SETS = ("thm5", "hirose", "humphreys", "odd", "even")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------- inputs


class Inputs:
    """Collects every file read so the report digest covers them."""

    def __init__(self):
        self.files: list[tuple[str, bytes]] = []

    def read(self, path: str) -> bytes:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise CliError(EXIT_SCHEMA, f"{path}: cannot read ({exc.strerror})") from exc
        self.files.append((p.name, data))
        return data

    def json(self, path: str):
        raw = self.read(path)
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_SCHEMA, f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc

    def digest(self, command: list[str]) -> str:
        h = hashlib.sha256()
        h.update(json.dumps(command).encode())
        for name, data in self.files:
            h.update(b"\0" + name.encode() + b"\0")
            h.update(hashlib.sha256(data).digest())
        return h.hexdigest()


def _descriptor(inputs: Inputs, path: str):
    from .plumbing import descriptor_from_dict

    data = inputs.json(path)
    try:
        validate_document(data, "descriptor")
    except SchemaError as exc:
        raise CliError(EXIT_SCHEMA, f"{path}: {exc}") from exc
    try:
        return descriptor_from_dict(data)
    except InconsistentDescriptorError as exc:
        raise CliError(EXIT_INCONSISTENT, f"{path}: {exc}") from exc
    except (DescriptorError, KeyError, ValueError) as exc:
        raise CliError(EXIT_INCONSISTENT, f"{path}: {exc}") from exc


def _class_from_spec(descriptor, spec: str) -> HomologyClass:
    """A node label, a traversal curve name, or a sum of basis labels such as ``x1+d1``."""
    if spec in descriptor.basis_assignment:
        return descriptor.basis_assignment[spec]
    for c in descriptor.curves:
        if c.name == spec and c.homology is not None:
            return c.homology
    terms: dict[str, int] = {}
    for t in spec.replace(" ", "").split("+"):
        terms[t] = terms.get(t, 0) + 1
    try:
        return HomologyClass.from_labels(descriptor.surface, terms, spec)
    except (KeyError, ValueError) as exc:
        raise CliError(EXIT_INCONSISTENT, f"unknown curve {spec!r}") from exc


def _q(descriptor):
    try:
        return rokhlin_form(descriptor)
    except DescriptorError as exc:
        raise CliError(EXIT_INCONSISTENT, str(exc)) from exc


# ---------- subcommands; each returns (verdicts, status, notes)


def cmd_qform(args, inputs):
    d = _descriptor(inputs, args.descriptor)
    q = _q(d)
    values = {lbl: v for lbl, v in zip(q.form.labels, q.basis_values)}
    verdict = {"kind": "rokhlin_form", "values": values}
    try:
        verdict["arf"] = arf(q)
    except UndefinedArfError:
        verdict["arf"] = None
    verdict["cores"] = {n.label: q(d.basis_assignment[n.label]) for n in d.nodes if n.label in d.basis_assignment}
    verdicts = [verdict]
    status = "pass"
    for c in d.curves:
        fr = traversal_framing(c, d)
        rec = {"kind": "traversal_framing", "curve": c.name, "framing": fr}
        if c.homology is not None:
            rec["q"] = q(c.homology)
            rec["parity_consistent"] = (fr % 2) == rec["q"]
        if c.expected_framing is not None:
            rec["expected"] = c.expected_framing
            rec["matches"] = fr == c.expected_framing
            if not rec["matches"]:
                status = "fail"
        verdicts.append(rec)
    return verdicts, status, []


def cmd_obstruct(args, inputs):
    d = _descriptor(inputs, args.descriptor)
    q = _q(d)
    try:
        store = thm3_propagate(d)
    except (InconsistentFactsError, ContradictionError) as exc:
        raise CliError(EXIT_INCONSISTENT, str(exc)) from exc
    verdicts = []
    for spec in args.curves:
        cls = _class_from_spec(d, spec)
        if store.is_extendible(spec):
            fact = store.positive[spec]
        else:
            try:
                fact = obstruct_essential(q, cls, name=spec)
            except ValueError as exc:
                raise CliError(EXIT_INCONSISTENT, f"{spec}: {exc}") from exc
        if fact.status is Status.NOT_EXTENDIBLE and store.is_extendible(spec):
            raise CliError(EXIT_INCONSISTENT, f"{spec}: derived Extendible but q = 0")
        verdicts.append(fact.as_record())
    return verdicts, "pass", []


def cmd_propagate(args, inputs):
    d = _descriptor(inputs, args.descriptor)
    _q(d)  # rejects core twists inconsistent with the form
    try:
        store = thm3_propagate(d)
    except (InconsistentFactsError, ContradictionError) as exc:
        raise CliError(EXIT_INCONSISTENT, str(exc)) from exc
    facts = sorted(store.facts(), key=lambda f: f.curve)
    unresolved = [n.label for n in d.nodes if store.status(n.label) is Status.UNKNOWN]
    notes = [f"iterations: {store.iterations}"]
    if unresolved:
        notes.append("no rule decides: " + ", ".join(unresolved))
    return [f.as_record() for f in facts], "pass", notes


def cmd_flexibility(args, inputs):
    if args.descriptor:
        d = _descriptor(inputs, args.descriptor)
        if len(d.nodes) == 1:
            v = parity_flexibility(d)
            return [{"surface": [d.surface.genus, d.surface.boundary], **v.as_record()}], "pass", []
        cases = [(d.surface.genus, d.surface.boundary, d.ambient)]
    elif args.g is not None and args.b is not None:
        cases = [(args.g, args.b, args.ambient)]
    else:
        cases = [(g, b, args.ambient) for g in range(args.max_g + 1) for b in range(args.max_b + 1)]
    out = []
    for g, b, amb in cases:
        try:
            v = flexibility_verdict(SurfaceSignature(g, b), amb)
        except ValueError as exc:
            raise CliError(EXIT_INCONSISTENT, str(exc)) from exc
        out.append({"surface": [g, b], "ambient": amb, **v.as_record()})
    return out, "pass", []


def cmd_slice(args, inputs):
    from .spinmcg.catalogs import CatalogError, load_catalog

    d = _descriptor(inputs, args.descriptor)
    try:
        cat = load_catalog(args.catalog or "humphreys", d.surface.genus, d.surface.boundary)
    except CatalogError as exc:
        raise CliError(EXIT_GUARD, str(exc)) from exc
    try:
        store = thm3_propagate(d)
        v = slice_obstruction(d, store, cat)
    except (InconsistentFactsError, ContradictionError) as exc:
        raise CliError(EXIT_INCONSISTENT, str(exc)) from exc
    except InapplicableObstructionError as exc:
        raise CliError(EXIT_GUARD, str(exc)) from exc
    except ValueError as exc:
        raise CliError(EXIT_INCONSISTENT, str(exc)) from exc
    return [{"descriptor": d.name, "catalog": cat.name, **v.as_record()}], "pass", []


def _generator_set(name: str, g: int):
    from .plumbing import rokhlin_form as rf
    from .quadform import q_standard
    from .spinmcg.catalogs import load_catalog
    from .spinmcg.generators import hirose_generators, thm5_generators, twist_generators

    if name == "thm5":
        cat = load_catalog("hg", g)
        return thm5_generators(g), cat, q_standard(cat.surface)
    if name == "hirose":
        cat = load_catalog("hg", g)
        return hirose_generators(g), cat, q_standard(cat.surface)
    if name == "humphreys":
        cat = load_catalog("humphreys", g, 1)
        return twist_generators(cat), cat, q_standard(cat.surface)
    from .datafiles import data_path

    cat = load_catalog(name, g)
    d = load_descriptor(data_path("descriptors", f"hammenstadt_{name}_g{g}.json"))
    return twist_generators(cat), cat, rf(d)


def cmd_generate_check(args, inputs):
    from .spinmcg.bfs import GuardError, MAX_ORACLE_GENUS, generated_subgroup_order, stabilizer_order_oracle
    from .spinmcg.bfs import symplectic_group_order
    from .spinmcg.catalogs import CatalogError
    from .spinmcg.generators import GeneratorRangeError
    from .quadform import preserves_q
    from .spinmcg.bfs import generator_matrices

    if args.g is None:
        raise CliError(EXIT_GUARD, "generate-check needs --g")
    try:
        words, cat, q = _generator_set(args.set, args.g)
        order, _ = generated_subgroup_order(words, cat)
    except (GeneratorRangeError, GuardError, CatalogError) as exc:
        raise CliError(EXIT_GUARD, str(exc)) from exc
    mats = generator_matrices(words, cat)
    preserves = {name: preserves_q(M, q) for name, M in zip(words, mats)}
    rec = {"set": args.set, "g": args.g, "catalog": cat.name, "generators": len(words), "order": order,
           "preserves_q": preserves, "all_preserve_q": all(preserves.values()),
           "q_basis_values": q.as_record()["basis_values"]}
    notes = []
    if args.g <= MAX_ORACLE_GENUS:
        rec["oracle_order"] = stabilizer_order_oracle(q, args.g)
        rec["sp_order"] = symplectic_group_order(args.g)
        target = rec["sp_order"] if args.set == "humphreys" else rec["oracle_order"]
        rec["matches_oracle"] = order == target
        ok = rec["matches_oracle"] and (args.set == "humphreys" or rec["all_preserve_q"])
    else:
        notes.append(f"oracle enumeration skipped above genus {MAX_ORACLE_GENUS}")
        ok = args.set == "humphreys" or rec["all_preserve_q"]
    return [rec], "pass" if ok else "fail", notes


def cmd_verify_identities(args, inputs):
    from .spinmcg.catalogs import CatalogError, load_catalog
    from .spinmcg.chains import ChainFile, identity_from_dict, verify_identity
    from .datafiles import data_path

    path = args.chains or str(data_path("chains", "spin_generators.json"))
    data = inputs.json(path)
    try:
        validate_document(data, "chain")
        cf = ChainFile(data["catalog"], tuple(identity_from_dict(d) for d in data["identities"]))
    except (SchemaError, ValueError) as exc:
        raise CliError(EXIT_SCHEMA, f"{path}: {exc}") from exc
    gs = [args.g] if args.g is not None else [3, 4, 5]
    ring = Z2 if args.ring == "z2" else Z
    out = []
    status = "pass"
    for g in gs:
        try:
            cat = load_catalog(args.catalog or cf.catalog, g)
        except CatalogError as exc:
            raise CliError(EXIT_GUARD, str(exc)) from exc
        for ident in cf.identities:
            rep = verify_identity(ident, g, cat, ring)
            out.append({"g": g, **rep.as_record()})
            if "fail" in (rep.symplectic, rep.moves):
                status = "fail"
            elif status == "pass" and "unverifiable" in (rep.symplectic, rep.moves):
                status = "unverifiable"
    notes = ["symplectic equality is a necessary condition only; it does not decide equality in the mapping class group"]
    return out, status, notes


def cmd_openbook(args, inputs):
    data = inputs.json(args.input)
    try:
        if "delta" in data:
            v = VariationData(tuple(map(tuple, data["delta"])), data.get("identification", "identity"))
        elif "monodromy" in data:
            v = variation_from_monodromy(data["monodromy"], data.get("identify"))
        else:
            v = None
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_INCONSISTENT, f"{args.input}: {exc}") from exc
    page_spin = bool(data.get("page_spin", False))
    simple = bool(data.get("simple", False))
    kernel = bool(data.get("class_in_kernel_case", False))
    rec = {"page_spin": page_spin, "simple": simple, "class_in_kernel_case": kernel}
    if v is not None:
        rec.update({"delta": [list(r) for r in v.delta], "identification": v.identification,
                    "det": bareiss_det(v.delta), "homotopy_sphere": is_homotopy_sphere(v)})
    rec.update(universality_obstruction(page_spin, simple, v, kernel).as_record())
    return [rec], "pass", ["relative and absolute middle homology identified through the stated basis"]


def cmd_enumerate_forms(args, inputs):
    if args.g is None:
        raise CliError(EXIT_GUARD, "enumerate-forms needs --g")
    s = SurfaceSignature(args.g, args.b or 0)
    if s.rank > MAX_ENUMERATION_RANK:
        raise CliError(EXIT_GUARD, f"rank {s.rank} exceeds the enumeration guard {MAX_ENUMERATION_RANK}")
    rec = {"surface": [s.genus, s.boundary], "rank": s.rank}
    try:
        census = arf_census(s)
        rec["arf_census"] = {str(k): v for k, v in sorted(census.items())}
    except UndefinedArfError:
        rec["arf_census"] = None
    rec["forms"] = 1 << s.rank
    verdicts = [rec]
    if args.list:
        if s.rank > 12:
            raise CliError(EXIT_GUARD, "--list is limited to rank 12")
        for q in enumerate_forms(s):
            r = q.as_record()
            try:
                r["arf"] = arf(q)
            except UndefinedArfError:
                r["arf"] = None
            verdicts.append(r)
    return verdicts, "pass", []


# ---------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", choices=("z2", "z"), default="z", help="coefficient ring for word matrices")
    common.add_argument("--g", type=int, help="genus")
    common.add_argument("--catalog", help="curve catalog name (hg, humphreys, odd, even) or a .json path")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="spinform", description="Quadratic forms, spin mapping classes and "
                                "extendibility of twists on embedded surfaces.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("qform", parents=[common], help="Rokhlin form values and Arf invariant of a descriptor")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_qform)

    s = sub.add_parser("obstruct", parents=[common], help="extendibility facts for named curves")
    s.add_argument("descriptor")
    s.add_argument("curves", nargs="*", help="node labels, traversal curves or sums of basis labels")
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("propagate", parents=[common], help="local tricks and plumbing rules to a fixed point")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_propagate)

    s = sub.add_parser("flexibility", parents=[common], help="which surfaces admit flexible embeddings")
    s.add_argument("descriptor", nargs="?")
    s.add_argument("--b", type=int, help="number of boundary components")
    s.add_argument("--ambient", default=HOMOLOGY_BALL, help="one of: " + ", ".join(AMBIENTS))
    s.add_argument("--max-g", type=int, default=5)
    s.add_argument("--max-b", type=int, default=5)
    s.set_defaults(func=cmd_flexibility)

    s = sub.add_parser("slice-obstruction", parents=[common], help="non-sliceness from extendible Humphreys twists")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_slice)

    s = sub.add_parser("generate-check", parents=[common], help="BFS order of generator images against the oracle")
    s.add_argument("--set", choices=GENERATOR_SETS, default="thm5")
    s.set_defaults(func=cmd_generate_check)

    s = sub.add_parser("verify-identities", parents=[common], help="check identity chains (default: shipped file)")
    s.add_argument("chains", nargs="?")
    s.set_defaults(func=cmd_verify_identities)

    s = sub.add_parser("openbook", parents=[common], help="variation map and universality verdict")
    s.add_argument("input", help="JSON with delta or monodromy, page_spin, simple, class_in_kernel_case")
    s.set_defaults(func=cmd_openbook)

    s = sub.add_parser("enumerate-forms", parents=[common], help="all quadratic forms on a surface")
    s.add_argument("--b", type=int, default=0)
    s.add_argument("--list", action="store_true", help="also list every form")
    s.set_defaults(func=cmd_enumerate_forms)
    return p


def _command_echo(argv: list[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--out":
            skip = True
            continue
        if a.startswith("--out="):
            continue
        out.append(a)
    return out


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    inputs = Inputs()
    try:
        verdicts, status, notes = args.func(args, inputs)
    except CliError as exc:
        print(f"spinform: {exc}", file=sys.stderr)
        return exc.code
    command = _command_echo(argv)
    report = {
        "command": command,
        "inputs_digest": inputs.digest(command),
        "version": __version__,
        "status": status,
        "verdicts": verdicts,
    }
    if notes:
        report["notes"] = notes
    validate_document(report, "report")
    text = render(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_FAIL if status == "fail" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
