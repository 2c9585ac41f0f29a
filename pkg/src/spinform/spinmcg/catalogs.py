"""
Curve catalogs: named simple closed curves with homology classes and the
geometric intersection data that licenses braid and commute relations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from ..datafiles import data_path
from ..homology import HomologyClass, SurfaceSignature, intersect
from ..plumbing import class_record, parse_class

COMMUTE = "commute"
BRAID = "braid"


class CatalogError(ValueError):
    pass


class MissingCatalogError(CatalogError, FileNotFoundError):
    pass


def _pair(a: str, b: str) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class CurveCatalog:
    name: str
    surface: SurfaceSignature
    curves: Mapping[str, HomologyClass]
    # pairs absent from the table have unknown geometric intersection
    geometric_intersections: Mapping[frozenset, int] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __contains__(self, name: str) -> bool:
        return name in self.curves

    def __getitem__(self, name: str) -> HomologyClass:
        return self.curves[name]

    def __len__(self):
        return len(self.curves)

    @property
    def names(self) -> list[str]:
        return list(self.curves)

    def geometric(self, a: str, b: str) -> int | None:
        if a == b:
            return 0
        return self.geometric_intersections.get(_pair(a, b))

    def relation(self, a: str, b: str) -> str | None:
        n = self.geometric(a, b)
        if n == 0:
            return COMMUTE
        if n == 1:
            return BRAID
        return None

    @property
    def relation_table(self) -> dict[tuple[str, str], str]:
        out = {}
        names = self.names
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                rel = self.relation(a, b)
                if rel is not None:
                    out[(a, b)] = rel
        return out

    def validity_errors(self) -> list[str]:
        errors = []
        for pair, n in self.geometric_intersections.items():
            a, b = sorted(pair)
            for nm in (a, b):
                if nm not in self.curves:
                    errors.append(f"intersection entry names unknown curve {nm!r}")
            if a in self.curves and b in self.curves:
                if n < 0:
                    errors.append(f"negative geometric intersection for ({a}, {b})")
                if n % 2 != intersect(self.curves[a], self.curves[b]):
                    errors.append(
                        f"({a}, {b}): geometric intersection {n} disagrees with homology pairing mod 2"
                    )
        return errors

    def validate(self) -> None:
        errors = self.validity_errors()
        if errors:
            raise CatalogError("; ".join(errors))

    def as_record(self) -> dict:
        inters = sorted(
            [*sorted(p), n] for p, n in self.geometric_intersections.items() if n
        )
        return {
            "name": self.name,
            "surface": {"g": self.surface.genus, "b": self.surface.boundary},
            "curves": {k: class_record(v) for k, v in self.curves.items()},
            "geometric_intersections": inters,
        }


def catalog_from_dict(data: dict) -> CurveCatalog:
    surface = SurfaceSignature(int(data["surface"]["g"]), int(data["surface"]["b"]))
    curves = {name: parse_class(spec, surface, name) for name, spec in data["curves"].items()}
    table: dict[frozenset, int] = {}
    default = data.get("default_intersection")
    if default is not None:
        names = list(curves)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                table[_pair(a, b)] = int(default)
    for a, b, n in data.get("geometric_intersections", ()):
        if a == b:
            raise CatalogError(f"self-intersection entry for {a!r}")
        table[_pair(a, b)] = int(n)
    for a, b in data.get("unknown_intersections", ()):
        table.pop(_pair(a, b), None)
    cat = CurveCatalog(
        name=data.get("name", ""),
        surface=surface,
        curves=curves,
        geometric_intersections=table,
        notes=tuple(data.get("notes", ())),
    )
    cat.validate()
    return cat


def load_catalog_file(path: str | Path) -> CurveCatalog:
    from ..schemas import validate_document

    path = Path(path)
    if not path.exists():
        raise MissingCatalogError(f"catalog file {path} not found")
    with open(path) as fh:
        data = json.load(fh)
    validate_document(data, "catalog")
    return catalog_from_dict(data)


def _shipped(kind: str, stem: str) -> CurveCatalog:
    path = data_path("catalogs", kind, f"{stem}.json")
    if not path.exists():
        raise MissingCatalogError(f"no shipped {kind} catalog {stem!r} (looked for {path})")
    return load_catalog_file(path)


def catalog_hirose(g: int) -> CurveCatalog:
    """Chain c_1..c_{2g+1} with the b_{2j} curves on the closed surface."""
    return _shipped("hirose", f"g{g}")


def catalog_humphreys(g: int, b: int = 1) -> CurveCatalog:
    return _shipped("humphreys", f"g{g}_b{b}")


def catalog_hammenstadt_odd(g: int) -> CurveCatalog:
    if g < 3:
        raise CatalogError("the odd Hammenstadt set is defined for g >= 3")
    return _shipped("hammenstadt_odd", f"g{g}")


def catalog_hammenstadt_even(g: int) -> CurveCatalog:
    if g < 4:
        raise CatalogError("the even Hammenstadt set is defined for g >= 4")
    return _shipped("hammenstadt_even", f"g{g}")


def load_catalog(name: str, g: int, b: int | None = None) -> CurveCatalog:
    name = name.lower()
    if name in ("hirose", "hg"):
        return catalog_hirose(g)
    if name == "humphreys":
        return catalog_humphreys(g, 1 if b is None else b)
    if name in ("hammenstadt_odd", "odd"):
        return catalog_hammenstadt_odd(g)
    if name in ("hammenstadt_even", "even"):
        return catalog_hammenstadt_even(g)
    path = Path(name)
    if path.suffix == ".json":
        return load_catalog_file(path)
    raise MissingCatalogError(f"unknown catalog {name!r}")
