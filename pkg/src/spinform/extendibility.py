"""
Extendibility facts for Dehn twists on embedded surfaces.

Obstructions come from the Rokhlin form: for a characteristic embedding a
twist along a curve on which q vanishes cannot extend.  Positive facts come
from local constructions (Hopf annulus, tube and 2-handle tricks) and from
propagation along plumbing edges.  The status lattice is one-directional:

    Unknown < SquareExtendible < Extendible,     Unknown < NotExtendible

and a curve holding both Extendible and NotExtendible is an error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .homology import HomologyClass, SurfaceSignature
from .plumbing import (
    CHARACTERISTIC_AMBIENTS,
    HOMOLOGY_BALL,
    HOMOLOGY_SPHERE,
    AnnulusNode,
    PlumbingDescriptor,
    check_ambient,
)
from .quadform import QuadraticForm, arf


class Status(str, enum.Enum):
    EXTENDIBLE = "Extendible"
    NOT_EXTENDIBLE = "NotExtendible"
    SQUARE_EXTENDIBLE = "SquareExtendible"
    UNKNOWN = "Unknown"


class Rationale(str, enum.Enum):
    HOPF = "HopfTrick"
    TUBE = "TubeTrick"
    HANDLE = "HandleTrick"
    THM3A = "Thm3a"
    THM3B = "Thm3b"
    THM3C = "Thm3c"
    Q_ZERO = "QZeroObstruction"
    BOUNDARY_PARALLEL = "BoundaryParallelObstruction"
    CLOSURE = "Closure"
    INPUT = "Input"
    NONE = "None"


class InapplicableObstructionError(ValueError):
    pass


class ContradictionError(ValueError):
    pass


class InconsistentFactsError(ValueError):
    """A curve was derived both Extendible and NotExtendible."""


@dataclass(frozen=True)
class ExtendibilityFact:
    curve: str
    status: Status
    rationale: Rationale
    homology: HomologyClass | None = None
    note: str = ""

    def as_record(self) -> dict:
        rec = {"curve": self.curve, "status": self.status.value, "rationale": self.rationale.value}
        if self.homology is not None:
            rec["class"] = str(self.homology)
        if self.note:
            rec["note"] = self.note
        return rec


_RANK = {Status.UNKNOWN: 0, Status.SQUARE_EXTENDIBLE: 1, Status.EXTENDIBLE: 2}


@dataclass
class FactStore:
    """Per-curve best positive fact plus any obstruction."""

    positive: dict[str, ExtendibilityFact] = field(default_factory=dict)
    negative: dict[str, ExtendibilityFact] = field(default_factory=dict)
    iterations: int = 0

    def add(self, fact: ExtendibilityFact) -> bool:
        """Record a fact; True if it changed the store."""
        name = fact.curve
        if fact.status is Status.NOT_EXTENDIBLE:
            if name in self.positive and self.positive[name].status is Status.EXTENDIBLE:
                raise InconsistentFactsError(f"{name} is both Extendible and NotExtendible")
            if name in self.negative:
                return False
            self.negative[name] = fact
            return True
        if fact.status is Status.UNKNOWN:
            return False
        if fact.status is Status.EXTENDIBLE and name in self.negative:
            raise InconsistentFactsError(f"{name} is both Extendible and NotExtendible")
        old = self.positive.get(name)
        if old is not None and _RANK[old.status] >= _RANK[fact.status]:
            return False
        self.positive[name] = fact
        return True

    def extend(self, facts: Iterable[ExtendibilityFact]) -> None:
        for f in facts:
            self.add(f)

    def status(self, name: str) -> Status:
        if name in self.negative:
            return Status.NOT_EXTENDIBLE
        if name in self.positive:
            return self.positive[name].status
        return Status.UNKNOWN

    def is_extendible(self, name: str) -> bool:
        return self.status(name) is Status.EXTENDIBLE

    def facts(self) -> list[ExtendibilityFact]:
        out = list(self.positive.values()) + list(self.negative.values())
        return sorted(out, key=lambda f: (f.curve, f.status.value))

    def copy(self) -> "FactStore":
        return FactStore(dict(self.positive), dict(self.negative), self.iterations)


# ---------- obstructions from the quadratic form


def obstruct_essential(q: QuadraticForm, gamma: HomologyClass, essential: bool = True,
                       name: str | None = None) -> ExtendibilityFact:
    if gamma.is_zero():
        raise ValueError("the zero class is not represented by an essential curve")
    if not essential:
        raise InapplicableObstructionError("the essential-curve obstruction needs an essential curve")
    label = name or gamma.name or str(gamma)
    if q(gamma) == 0:
        return ExtendibilityFact(label, Status.NOT_EXTENDIBLE, Rationale.Q_ZERO, gamma)
    return ExtendibilityFact(label, Status.UNKNOWN, Rationale.NONE, gamma, "q = 1 gives no obstruction")


def is_boundary_parallel_class(gamma: HomologyClass) -> bool:
    g = gamma.surface.genus
    return not any(c % 2 for c in gamma.coords[: 2 * g]) and not gamma.is_zero()


def obstruct_boundary_parallel(
    q: QuadraticForm,
    gamma: HomologyClass,
    ambient: str,
    *,
    boundary_homology_sphere: bool | None = None,
    characteristic: bool | None = None,
    name: str | None = None,
) -> ExtendibilityFact:
    """Obstruction for a curve parallel to a boundary component.

    Needs a characteristic embedding in a manifold whose boundary is an
    integral homology sphere.  The homology ball ambient carries both; other
    ambients need both flags asserted by the caller.
    """
    check_ambient(ambient)
    if ambient == HOMOLOGY_BALL:
        ok = True
    else:
        ok = bool(boundary_homology_sphere) and bool(characteristic)
    if not ok:
        raise InapplicableObstructionError(
            f"ambient {ambient!r}: boundary homology sphere and characteristic embedding not established"
        )
    if not is_boundary_parallel_class(gamma):
        raise ValueError("class is not a nonzero combination of boundary classes")
    label = name or gamma.name or str(gamma)
    if q(gamma) == 0:
        return ExtendibilityFact(label, Status.NOT_EXTENDIBLE, Rationale.BOUNDARY_PARALLEL, gamma)
    return ExtendibilityFact(label, Status.UNKNOWN, Rationale.NONE, gamma, "q = 1 gives no obstruction")


WITNESS_EXCLUDED = ((1, 1), (0, 2), (1, 0))


def witness_families(surface: SurfaceSignature) -> tuple[str, list[tuple[str, HomologyClass]]]:
    """The three-curve family x = y + z used to find a curve with q = 0."""
    g, b = surface.genus, surface.boundary
    H = lambda terms, nm: HomologyClass.from_labels(surface, terms, nm)  # noqa: E731
    if (g, b) in WITNESS_EXCLUDED:
        raise InapplicableObstructionError(f"no witness family for Sigma_{{{g},{b}}}")
    if g >= 2:
        return "Case1", [
            ("b1", H({"x1": 1}, "b1")),
            ("c1", H({"x1": 1, "x2": 1}, "c1")),
            ("b2", H({"x2": 1}, "b2")),
        ]
    if g == 0 and b >= 3:
        return "Case2", [
            ("gamma", H({"d1": 1, "d2": 1}, "gamma")),
            ("gamma1", H({"d1": 1}, "gamma1")),
            ("gamma2", H({"d2": 1}, "gamma2")),
        ]
    if g == 1 and b >= 2:
        return "Case3", [
            ("a", H({"x1": 1, "d1": 1}, "a")),
            ("b", H({"x1": 1}, "b")),
            ("c", H({"d1": 1}, "c")),
        ]
    # Sigma_{0,0} and Sigma_{0,1}: every curve bounds a disk
    raise InapplicableObstructionError(f"Sigma_{{{g},{b}}} carries no essential or boundary-parallel class")


def witness_q_zero(surface: SurfaceSignature, q: QuadraticForm) -> tuple[HomologyClass, str]:
    family, members = witness_families(surface)
    for _, cls in members:
        if q(cls) == 0:
            return cls, family
    # unreachable: q(x) = q(y) + q(z) when y . z = 0
    raise AssertionError("witness family without a q = 0 member")


def torus_case(q: QuadraticForm, ambient: str = HOMOLOGY_SPHERE) -> ExtendibilityFact:
    if q.surface is not None and (q.surface.genus, q.surface.boundary) != (1, 0):
        raise ValueError("torus case expects a form on the closed torus")
    if ambient != HOMOLOGY_SPHERE:
        raise InapplicableObstructionError("the torus case is for characteristic tori in homology 4-spheres")
    if arf(q) == 1:
        raise ContradictionError("a characteristic torus in a homology 4-sphere has Arf invariant 0")
    surface = q.surface or SurfaceSignature(1, 0)
    for label, name in (("x1", "m"), ("y1", "l")):
        cls = HomologyClass.basis(surface, label)
        if q(cls) == 0:
            return ExtendibilityFact(name, Status.NOT_EXTENDIBLE, Rationale.Q_ZERO,
                                     HomologyClass(cls.coords, surface, name))
    raise AssertionError("Arf 0 form on the torus without a q = 0 basis curve")


def rokhlin_arf(sigma: int, self_intersection: int) -> int:
    d = sigma - self_intersection
    if d % 8:
        raise ValueError(f"signature minus self-intersection ({d}) is not divisible by 8")
    return (d // 8) % 2


# ---------- local tricks


def _fact(node: AnnulusNode, status: Status, why: Rationale, descriptor=None, note="") -> ExtendibilityFact:
    cls = None
    if descriptor is not None:
        cls = descriptor.basis_assignment.get(node.label)
    return ExtendibilityFact(node.label, status, why, cls, note)


def hopf_trick(node: AnnulusNode, descriptor=None) -> ExtendibilityFact | None:
    if node.twist in (1, -1) and node.core_unknotted:
        return _fact(node, Status.EXTENDIBLE, Rationale.HOPF, descriptor)
    return None


def tube_trick(node: AnnulusNode, descriptor=None) -> ExtendibilityFact | None:
    if node.twist == 0 and node.core_unknotted:
        return _fact(node, Status.SQUARE_EXTENDIBLE, Rationale.TUBE, descriptor)
    return None


def handle_trick(node: AnnulusNode, descriptor=None) -> ExtendibilityFact | None:
    h = node.bounds_handle
    if h is not None and node.twist in (h - 1, h + 1):
        return _fact(node, Status.EXTENDIBLE, Rationale.HANDLE, descriptor, f"2-handle framing {h}")
    return None


def local_facts(descriptor: PlumbingDescriptor) -> list[ExtendibilityFact]:
    out = []
    for node in descriptor.nodes:
        for trick in (hopf_trick, handle_trick, tube_trick):
            f = trick(node, descriptor)
            if f is not None:
                out.append(f)
    return out


# ---------- propagation along plumbing edges


def _rule_a(s: int, t: int) -> bool:
    return s % 2 == 1 and t == 0


def _rule_b(s: int, t: int) -> bool:
    # s = 2n + 1 and t = -k(2n + 1) with k odd
    return s % 2 == 1 and t % s == 0 and (t // s) % 2 == 1


def _rule_c(s: int, t: int) -> bool:
    # (2n + 1, -(2n + 3)); mirroring the surface negates both framings
    return s % 2 == 1 and (t == -(s + 2) or t == 2 - s)


def thm3_propagate(descriptor: PlumbingDescriptor, facts: FactStore | Iterable[ExtendibilityFact] | None = None,
                   *, seed_local: bool = True) -> FactStore:
    """Close a fact set under the three propagation rules along plumbing edges."""
    store = facts.copy() if isinstance(facts, FactStore) else FactStore()
    if facts is not None and not isinstance(facts, FactStore):
        store.extend(facts)
    if seed_local:
        store.extend(local_facts(descriptor))
    cls = descriptor.basis_assignment.get
    bound = 3 * max(len(descriptor.nodes), 1)
    iterations = 0
    changed = True
    while changed:
        changed = False
        iterations += 1
        if iterations > bound + 1:
            raise RuntimeError("propagation failed to reach a fixed point")
        for e in descriptor.edges:
            for a_lbl, b_lbl in ((e.a, e.b), (e.b, e.a)):
                alpha, beta = descriptor.node(a_lbl), descriptor.node(b_lbl)
                if not (alpha.core_unknotted and beta.core_unknotted):
                    continue
                s, t = alpha.twist, beta.twist
                # (a): tau_beta(alpha) unknotted gives alpha
                if _rule_a(s, t) and e.image_unknotted(a_lbl):
                    changed |= store.add(ExtendibilityFact(a_lbl, Status.EXTENDIBLE, Rationale.THM3A, cls(a_lbl)))
                # (b): alpha extendible and tau_alpha(beta) unknotted gives beta
                if _rule_b(s, t) and store.is_extendible(a_lbl) and e.image_unknotted(b_lbl):
                    changed |= store.add(ExtendibilityFact(b_lbl, Status.EXTENDIBLE, Rationale.THM3B, cls(b_lbl)))
                # (c): alpha extendible and tau_alpha(beta) unknotted gives beta;
                # the reverse direction is the same test with the roles swapped
                if _rule_c(s, t) and store.is_extendible(a_lbl) and e.image_unknotted(b_lbl):
                    changed |= store.add(ExtendibilityFact(b_lbl, Status.EXTENDIBLE, Rationale.THM3C, cls(b_lbl)))
    store.iterations = iterations
    return store


# ---------- surface-level verdicts


class Flexibility(str, enum.Enum):
    FLEXIBLE = "Flexible"
    NOT_FLEXIBLE = "NotFlexible"
    UNKNOWN = "Unknown"
    NONE_EXISTS = "NoFlexibleEmbeddingExists"
    EXCEPTION = "Exception"
    OUT_OF_SCOPE = "OutOfScope"


@dataclass(frozen=True)
class Verdict:
    verdict: str
    rationale: str
    witnesses: tuple = ()

    def as_record(self) -> dict:
        rec = {"verdict": self.verdict, "rationale": self.rationale}
        if self.witnesses:
            rec["witnesses"] = [str(w) for w in self.witnesses]
        return rec


def parity_flexibility(descriptor: PlumbingDescriptor) -> Verdict:
    """Flexibility of a single ribbon annulus R(K, n) in a manifold bounded by S^3."""
    if len(descriptor.nodes) != 1:
        raise ValueError("parity_flexibility expects a single annulus")
    if descriptor.ambient == HOMOLOGY_SPHERE:
        return Verdict(Flexibility.UNKNOWN.value, "ambient has no S3 boundary")
    node = descriptor.nodes[0]
    if node.twist % 2 == 0:
        return Verdict(Flexibility.NOT_FLEXIBLE.value, "even framing: plumbing two copies has q = 0 on a core")
    if node.twist in (1, -1) and node.core_slice:
        return Verdict(Flexibility.FLEXIBLE.value, "slice core with framing +-1: 2-handle trick")
    return Verdict(Flexibility.UNKNOWN.value, "no rule applies")


def flexibility_verdict(surface: SurfaceSignature, ambient: str) -> Verdict:
    check_ambient(ambient)
    g, b = surface.genus, surface.boundary
    if ambient not in CHARACTERISTIC_AMBIENTS:
        return Verdict(Flexibility.OUT_OF_SCOPE.value, "ambient is neither a homology ball nor a homology sphere")
    if (g, b) in ((1, 1), (0, 2)):
        return Verdict(Flexibility.EXCEPTION.value, "flexible embeddings exist (Hopf annulus, plumbed Hopf annuli)")
    if (g, b) in ((0, 0), (0, 1)):
        return Verdict(Flexibility.EXCEPTION.value, "sphere or disk: mapping class group is trivial")
    if g >= 1 and b != 1:
        if (g, b) == (1, 0):
            return Verdict(Flexibility.NONE_EXISTS.value, "closed torus: Rokhlin's theorem gives Arf 0, so q vanishes on m or l")
        return Verdict(Flexibility.NONE_EXISTS.value, "essential curve with q = 0 (witness family)")
    if g == 0 and b >= 3:
        return Verdict(Flexibility.NONE_EXISTS.value, "boundary-parallel curve with q = 0")
    # g >= 2, b = 1: the witness family still applies
    return Verdict(Flexibility.NONE_EXISTS.value, "essential curve with q = 0 (b1, c1, b2 family)")


def slice_obstruction(descriptor: PlumbingDescriptor, facts: FactStore, catalog) -> Verdict:
    """A link bounding a surface on which every Humphreys twist extends is not slice."""
    if descriptor.ambient != HOMOLOGY_BALL:
        raise InapplicableObstructionError("the slice obstruction needs a homology ball bounded by a homology sphere")
    if catalog.surface != descriptor.surface:
        raise ValueError(f"catalog on {catalog.surface} but descriptor on {descriptor.surface}")
    by_class: dict[int, list[str]] = {}
    for lbl, c in descriptor.basis_assignment.items():
        by_class.setdefault(c.bits, []).append(lbl)
    missing = []
    for name, cls in catalog.curves.items():
        candidates = [name] if name in descriptor.basis_assignment else []
        candidates += by_class.get(cls.bits, [])
        if not any(facts.is_extendible(c) for c in candidates):
            missing.append(name)
    if missing:
        return Verdict("Inconclusive", "twists without an Extendible fact: " + ", ".join(missing))
    return Verdict("NotSliceInAnyHomologyBall", "every Humphreys twist is extendible, so a slice disk would give a flexible closed surface")


# ---------- closure under the subgroup structure


def closure(facts: FactStore, words: Mapping[str, object] | None = None,
            conjugates: Mapping[str, tuple[object, str]] | None = None) -> FactStore:
    """Mark words in Extendible letters (and squares of SquareExtendible letters) as Extendible.

    ``words`` maps a label to a TwistWord.  ``conjugates`` maps a curve name
    gamma' to ``(w, gamma)`` meaning gamma' = w(gamma), so tau_{gamma'} = w tau_gamma w^-1.
    """
    out = facts.copy()
    words = dict(words or {})
    conjugates = dict(conjugates or {})

    def usable(word) -> bool:
        letters = list(getattr(word, "letters", word))
        i = 0
        while i < len(letters):
            name, e = letters[i]
            st = out.status(name)
            if st is Status.EXTENDIBLE:
                i += 1
                continue
            if st is Status.SQUARE_EXTENDIBLE:
                # count the run of equal letters
                j = i
                while j < len(letters) and letters[j] == (name, e):
                    j += 1
                if (j - i) % 2:
                    return False
                i = j
                continue
            return False
        return True

    changed = True
    while changed:
        changed = False
        for label, w in words.items():
            if out.status(label) not in (Status.EXTENDIBLE,) and usable(w):
                changed |= out.add(ExtendibilityFact(label, Status.EXTENDIBLE, Rationale.CLOSURE))
        for label, (w, base) in conjugates.items():
            if out.is_extendible(base) and usable(w) and not out.is_extendible(label):
                changed |= out.add(ExtendibilityFact(label, Status.EXTENDIBLE, Rationale.CLOSURE,
                                                     note=f"conjugate of {base}"))
    return out
