"""
Plumbing descriptors for Seifert-type embeddings.

A descriptor is a graph of twisted annuli (ribbons R(K, n)) whose cores meet
once along every edge.  Surface framings of the cores are the twist integers;
mod 2 they are the values of the Rokhlin form on the core classes.

Framings of curves that wander through several annuli cannot be read off the
plumbing graph alone: they depend on where the twisted region of each annulus
sits.  A `TraversalCurve` therefore records, per pass, whether the pass runs
through the twisted region, plus a single declared integer for the plumbing
crossings.  Both are transcribed by hand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .homology import (
    HomologyClass,
    SurfaceSignature,
    intersect,
    standard_form,
)
from .quadform import QuadraticForm

HOMOLOGY_BALL = "homology_ball_with_S3_boundary"
HOMOLOGY_SPHERE = "homology_sphere"
S2XS2_MINUS_BALL = "S2xS2_minus_ball"
CP2_MINUS_BALL = "CP2_minus_ball"
AMBIENTS = (HOMOLOGY_BALL, HOMOLOGY_SPHERE, S2XS2_MINUS_BALL, CP2_MINUS_BALL)
CHARACTERISTIC_AMBIENTS = (HOMOLOGY_BALL, HOMOLOGY_SPHERE)


class DescriptorError(ValueError):
    pass


class IncompleteBasisError(DescriptorError):
    pass


class InconsistentDescriptorError(DescriptorError):
    pass


class NotCharacteristicError(DescriptorError):
    pass


def check_ambient(ambient: str) -> str:
    if ambient in AMBIENTS or (ambient.startswith("other:") and len(ambient) > 6):
        return ambient
    raise DescriptorError(f"unknown ambient {ambient!r}")


@dataclass(frozen=True)
class AnnulusNode:
    label: str
    twist: int
    core_unknotted: bool = True
    core_slice: bool = False
    bounds_handle: int | None = None


@dataclass(frozen=True)
class PlumbingEdge:
    a: str
    b: str
    sign: int = 1
    # labels X such that the image of X's core under the twist along the
    # other endpoint is unknotted
    unknotted_images: frozenset[str] = frozenset()

    def other(self, label: str) -> str:
        return self.b if label == self.a else self.a

    def image_unknotted(self, moved: str) -> bool:
        return moved in self.unknotted_images


@dataclass(frozen=True)
class Pass:
    node: str
    multiplicity: int = 1
    crosses_twist: bool = True

    def __post_init__(self):
        if self.multiplicity <= 0:
            raise DescriptorError("pass multiplicities must be positive")


@dataclass(frozen=True)
class TraversalCurve:
    name: str
    passes: tuple[Pass, ...]
    declared_crossing_sum: int = 0
    homology: HomologyClass | None = None
    expected_framing: int | None = None


@dataclass(frozen=True)
class PlumbingDescriptor:
    surface: SurfaceSignature
    ambient: str
    nodes: tuple[AnnulusNode, ...]
    edges: tuple[PlumbingEdge, ...] = ()
    curves: tuple[TraversalCurve, ...] = ()
    basis_assignment: Mapping[str, HomologyClass] = field(default_factory=dict)
    name: str = ""
    characteristic: bool | None = None

    def __post_init__(self):
        check_ambient(self.ambient)
        labels = [n.label for n in self.nodes]
        if len(set(labels)) != len(labels):
            raise DescriptorError("node labels must be unique")

    def node(self, label: str) -> AnnulusNode:
        for n in self.nodes:
            if n.label == label:
                return n
        raise DescriptorError(f"unknown node {label!r}")

    def curve(self, name: str) -> TraversalCurve:
        for c in self.curves:
            if c.name == name:
                return c
        raise DescriptorError(f"unknown curve {name!r}")

    def core_class(self, label: str) -> HomologyClass:
        try:
            return self.basis_assignment[label]
        except KeyError:
            raise DescriptorError(f"no homology class assigned to {label!r}") from None

    def edge(self, a: str, b: str) -> PlumbingEdge | None:
        for e in self.edges:
            if {e.a, e.b} == {a, b}:
                return e
        return None

    def neighbours(self, label: str) -> list[str]:
        return [e.other(label) for e in self.edges if label in (e.a, e.b)]

    @property
    def is_characteristic(self) -> bool:
        if self.characteristic is not None:
            return self.characteristic
        return self.ambient in CHARACTERISTIC_AMBIENTS

    def validate(self) -> None:
        """Connectedness and the intersection pattern of the cores."""
        labels = [n.label for n in self.nodes]
        for e in self.edges:
            for lbl in (e.a, e.b):
                if lbl not in labels:
                    raise DescriptorError(f"edge endpoint {lbl!r} is not a node")
        if labels:
            seen = {labels[0]}
            stack = [labels[0]]
            while stack:
                for nb in self.neighbours(stack.pop()):
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            if len(seen) != len(labels):
                raise DescriptorError("plumbing graph is not connected")
        assigned = [lbl for lbl in labels if lbl in self.basis_assignment]
        for i, a in enumerate(assigned):
            for b in assigned[i + 1:]:
                k = intersect(self.basis_assignment[a], self.basis_assignment[b])
                adjacent = self.edge(a, b) is not None
                if k != int(adjacent):
                    raise InconsistentDescriptorError(
                        f"cores {a} and {b}: mod 2 intersection {k} but adjacency {adjacent}"
                    )
        for c in self.curves:
            for p in c.passes:
                self.node(p.node)


# ---------- framing calculus


def rokhlin_value(node: AnnulusNode) -> int:
    return node.twist % 2


def framing_after_twist(n_target: int, n_twister: int, handedness: int) -> int:
    """Surface framing of the twisted image of a curve meeting the twister once.

    ``handedness=+1`` is the left-handed twist tau, ``-1`` its inverse.
    """
    if handedness not in (1, -1):
        raise ValueError("handedness must be +1 or -1")
    return n_target + n_twister + handedness


def iterate_framing(n_target: int, n_twister: int, handedness: int, times: int) -> int:
    n = n_target
    for _ in range(times):
        n = framing_after_twist(n, n_twister, handedness)
    return n


def traversal_framing(curve: TraversalCurve, descriptor: PlumbingDescriptor) -> int:
    total = curve.declared_crossing_sum
    for p in curve.passes:
        node = descriptor.node(p.node)
        if p.crosses_twist:
            total += p.multiplicity ** 2 * node.twist
    return total


# ---------- Rokhlin form of a descriptor


def _solve_mod2(P: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve P @ lam = b over GF(2) for invertible P."""
    n = P.shape[0]
    A = np.concatenate([P % 2, (b % 2).reshape(n, -1)], axis=1).astype(np.uint8)
    for col in range(n):
        pivot = next(r for r in range(col, n) if A[r, col])
        A[[col, pivot]] = A[[pivot, col]]
        for r in range(n):
            if r != col and A[r, col]:
                A[r] ^= A[col]
    return A[:, n:]


def _spanning_subset(classes: list[HomologyClass], rank: int) -> list[int]:
    chosen, pivots = [], []
    reduced: list[int] = []
    for idx, c in enumerate(classes):
        v = c.bits
        for r, p in zip(reduced, pivots):
            if v >> p & 1:
                v ^= r
        if v:
            p = v.bit_length() - 1
            reduced.append(v)
            pivots.append(p)
            chosen.append(idx)
            if len(chosen) == rank:
                break
    return chosen


def form_from_values(classes: list[HomologyClass], values: list[int], surface: SurfaceSignature) -> QuadraticForm:
    """The quadratic refinement taking the given values on a basis of H_1."""
    form = standard_form(surface)
    n = surface.rank
    P = np.array([c.coords for c in classes], dtype=np.int64).T % 2
    lam = _solve_mod2(P, np.eye(n, dtype=np.int64))
    gram = np.array([[intersect(a, b) for b in classes] for a in classes], dtype=np.int64)
    upper = np.triu(gram, 1)
    basis_values = []
    for i in range(n):
        l = lam[:, i].astype(np.int64)
        v = int(l @ np.asarray(values, dtype=np.int64) + l @ upper @ l) % 2
        basis_values.append(v)
    return QuadraticForm(tuple(basis_values), form, surface)


def rokhlin_form(descriptor: PlumbingDescriptor, *, assert_characteristic: bool = False) -> QuadraticForm:
    if not (descriptor.is_characteristic or assert_characteristic):
        raise NotCharacteristicError(
            f"ambient {descriptor.ambient!r} does not make the embedding characteristic"
        )
    surface = descriptor.surface
    cores = [n for n in descriptor.nodes if n.label in descriptor.basis_assignment]
    classes = [descriptor.core_class(n.label) for n in cores]
    chosen = _spanning_subset(classes, surface.rank)
    if len(chosen) < surface.rank:
        raise IncompleteBasisError(
            f"core classes span rank {len(chosen)} of {surface.rank}"
        )
    q = form_from_values(
        [classes[i] for i in chosen], [rokhlin_value(cores[i]) for i in chosen], surface
    )
    for node, cls in zip(cores, classes):
        if q(cls) != rokhlin_value(node):
            raise InconsistentDescriptorError(
                f"core {node.label}: twist {node.twist} is not q({cls}) = {q(cls)} mod 2"
            )
    return q


# ---------- JSON loading


def parse_class(spec, surface: SurfaceSignature, name: str | None = None) -> HomologyClass:
    if isinstance(spec, Mapping):
        return HomologyClass.from_labels(surface, {k: int(v) for k, v in spec.items()}, name)
    return HomologyClass(tuple(spec), surface, name)


def class_record(c: HomologyClass) -> dict:
    return {lbl: v for lbl, v in zip(c.surface.labels, c.coords) if v}


def descriptor_from_dict(data: dict) -> PlumbingDescriptor:
    surface = SurfaceSignature(int(data["surface"]["g"]), int(data["surface"]["b"]))
    nodes = tuple(
        AnnulusNode(
            label=n["label"],
            twist=int(n["twist"]),
            core_unknotted=bool(n.get("core_unknotted", True)),
            core_slice=bool(n.get("core_slice", False)),
            bounds_handle=n.get("bounds_handle"),
        )
        for n in data["nodes"]
    )
    edges = tuple(
        PlumbingEdge(
            e["a"], e["b"], int(e.get("sign", 1)), frozenset(e.get("unknotted_images", ()))
        )
        for e in data.get("edges", ())
    )
    curves = tuple(
        TraversalCurve(
            name=c["name"],
            passes=tuple(
                Pass(p["node"], int(p.get("multiplicity", 1)), bool(p.get("crosses_twist", True)))
                for p in c.get("passes", ())
            ),
            declared_crossing_sum=int(c.get("declared_crossing_sum", 0)),
            homology=parse_class(c["homology"], surface, c["name"]) if "homology" in c else None,
            expected_framing=c.get("expected_framing"),
        )
        for c in data.get("curves", ())
    )
    assignment = {
        lbl: parse_class(spec, surface, lbl) for lbl, spec in data.get("basis_assignment", {}).items()
    }
    d = PlumbingDescriptor(
        surface=surface,
        ambient=data["ambient"],
        nodes=nodes,
        edges=edges,
        curves=curves,
        basis_assignment=assignment,
        name=data.get("name", ""),
        characteristic=data.get("characteristic"),
    )
    d.validate()
    return d


def load_descriptor(path: str | Path) -> PlumbingDescriptor:
    from .schemas import validate_document

    with open(path) as fh:
        data = json.load(fh)
    validate_document(data, "descriptor")
    return descriptor_from_dict(data)


def chain_descriptor(
    twists: Iterable[int],
    surface: SurfaceSignature,
    ambient: str = HOMOLOGY_BALL,
    labels: Iterable[str] | None = None,
    unknotted_images: bool = True,
) -> PlumbingDescriptor:
    """Linear plumbing of unknotted annuli with cores x1, y1, x1+x2, y2, ... in order."""
    twists = list(twists)
    labels = list(labels) if labels is not None else [f"c{i + 1}" for i in range(len(twists))]
    classes = chain_classes(surface, len(twists))
    nodes = tuple(AnnulusNode(lbl, t) for lbl, t in zip(labels, twists))
    edges = tuple(
        PlumbingEdge(labels[i], labels[i + 1], 1,
                     frozenset(labels[i:i + 2]) if unknotted_images else frozenset())
        for i in range(len(labels) - 1)
    )
    return PlumbingDescriptor(
        surface, ambient, nodes, edges, (), dict(zip(labels, classes)), name="chain"
    )


def chain_classes(surface: SurfaceSignature, length: int) -> list[HomologyClass]:
    """Classes of a chain of curves: x1, y1, x1+x2, y2, ..., y_g, then x_g (+ d1).

    The closing curve of an odd chain is x_g + d1 when a second boundary
    component exists, which makes the chain span H_1(Sigma_{g,2}).
    """
    g = surface.genus
    if length > 2 * g + 1:
        raise DescriptorError(f"a chain of {length} curves does not fit on {surface}")
    out: list[HomologyClass] = []
    for k in range(length):
        if k == 0:
            terms = {"x1": 1}
        elif k % 2 == 1:
            terms = {f"y{(k + 1) // 2}": 1}
        elif k < 2 * g:
            terms = {f"x{k // 2}": 1, f"x{k // 2 + 1}": 1}
        else:
            terms = {f"x{g}": 1, "d1": 1} if surface.boundary >= 2 else {f"x{g}": 1}
        out.append(HomologyClass.from_labels(surface, terms))
    return out
