from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spinform.datafiles import data_path
from spinform.extendibility import (
    ExtendibilityFact,
    FactStore,
    Flexibility,
    Rationale,
    Status,
    flexibility_verdict,
    obstruct_essential,
    thm3_propagate,
    witness_q_zero,
)
from spinform.homology import (
    HomologyClass,
    SurfaceSignature,
    Z,
    Z2,
    array_from_columns,
    intersect,
    is_symplectic,
    standard_form,
    transvect,
    transvection_matrix,
    twist_word_matrix,
)
from spinform.openbook import VariationData, bareiss_det, is_homotopy_sphere, universality_obstruction, variation_from_monodromy
from spinform.plumbing import (
    AnnulusNode,
    chain_descriptor,
    framing_after_twist,
    load_descriptor,
    rokhlin_form,
    rokhlin_value,
)
from spinform.quadform import QuadraticForm, arf, enumerate_forms, preserves_q, pullback
from spinform.spinmcg.bfs import symplectic_bases
from spinform.spinmcg.catalogs import catalog_hirose
from spinform.spinmcg.words import TwistWord

SURFACES = [SurfaceSignature(g, b) for g in range(4) for b in range(5)
            if 1 <= SurfaceSignature(g, b).rank <= 8]


@st.composite
def surface_form(draw, surfaces=SURFACES):
    s = draw(st.sampled_from(surfaces))
    q = QuadraticForm.from_bits(draw(st.integers(0, (1 << s.rank) - 1)), standard_form(s), s)
    return s, q


def classes(s, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=s.rank, max_size=s.rank).map(
        lambda c: HomologyClass(tuple(c), s))


@st.composite
def form_and_classes(draw, n=2, surfaces=SURFACES):
    s, q = draw(surface_form(surfaces))
    return (q,) + tuple(draw(classes(s)) for _ in range(n))


# ---------- homology


@given(form_and_classes())
def test_transvect_is_an_involution_mod_2(data):
    _, gamma, x = data
    assert transvect(gamma, transvect(gamma, x)).bits == x.bits


@given(form_and_classes(n=1), st.sampled_from([1, -1]))
def test_transvection_matrices_are_symplectic(data, sign):
    q, gamma = data
    assert is_symplectic(transvection_matrix(gamma, sign, Z), q.form, Z)
    assert is_symplectic(transvection_matrix(gamma, sign, Z2), q.form, Z2)


HG = catalog_hirose(3)
PAIRS = [(a, b) for a in HG.names for b in HG.names if a < b]


@given(st.sampled_from(PAIRS))
def test_braid_and_commute_at_homology_level(pair):
    a, b = pair
    m = lambda w: twist_word_matrix(TwistWord.parse(w), HG, Z)  # noqa: E731
    p = intersect(HG[a], HG[b], Z)
    if abs(p) == 1:
        assert np.array_equal(m(f"{a} {b} {a}"), m(f"{b} {a} {b}"))
    elif p == 0:
        assert np.array_equal(m(f"{a} {b}"), m(f"{b} {a}"))


LETTERS = st.tuples(st.sampled_from(HG.names), st.sampled_from([1, -1]))
WORDS = st.lists(LETTERS, max_size=6).map(lambda ls: TwistWord(tuple(ls)))


@given(WORDS, WORDS, st.sampled_from([Z, Z2]))
def test_word_matrix_of_concatenation(u, v, ring):
    M = twist_word_matrix(u + v, HG, ring)
    P = twist_word_matrix(u, HG, ring) @ twist_word_matrix(v, HG, ring)
    if ring == Z2:
        P %= 2
    assert np.array_equal(M, P)


# ---------- quadratic forms


@given(form_and_classes())
def test_quadratic_relation(data):
    q, x, y = data
    assert q(x + y) == (q(x) + q(y) + intersect(x, y)) % 2


@pytest.mark.parametrize("g", [1, 2])
def test_arf_invariant_under_every_symplectic_matrix(g):
    s = SurfaceSignature(g, 0)
    forms = list(enumerate_forms(s))
    for row in symplectic_bases(g):
        M = array_from_columns([int(c) for c in row], 2 * g)
        for q in forms:
            assert arf(pullback(q, M)) == arf(q)


def random_symplectic(draw, s):
    M = np.eye(s.rank, dtype=np.int64)
    for _ in range(draw(st.integers(0, 6))):
        gamma = HomologyClass.from_bits(draw(st.integers(1, (1 << s.rank) - 1)), s)
        M = M @ transvection_matrix(gamma, 1, Z2) % 2
    return M


CLOSED = [SurfaceSignature(g, 0) for g in (1, 2, 3)]


@given(st.data())
def test_arf_invariant_under_random_products(data):
    s, q = data.draw(surface_form(CLOSED))
    assert arf(pullback(q, random_symplectic(data.draw, s))) == arf(q)


@given(st.data())
def test_stabilizer_is_closed_under_products(data):
    s, q = data.draw(surface_form(CLOSED))
    A = random_symplectic(data.draw, s)
    B = random_symplectic(data.draw, s)
    if preserves_q(A, q) and preserves_q(B, q):
        assert preserves_q(A @ B % 2, q)


# ---------- plumbing


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([1, -1]))
def test_framing_difference(n, m, s):
    assert framing_after_twist(n, m, s) - n == m + s


@given(st.integers(-20, 20), st.integers(-5, 5))
def test_rokhlin_value_parity(t, k):
    assert rokhlin_value(AnnulusNode("a", t)) == rokhlin_value(AnnulusNode("a", t + 2 * k))


@given(st.integers(1, 3), st.data())
def test_even_twist_changes_leave_the_form(g, data):
    s = SurfaceSignature(g, 2)
    n = 2 * g + 1
    twists = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    shifts = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    a = rokhlin_form(chain_descriptor(twists, s))
    b = rokhlin_form(chain_descriptor([t + 2 * k for t, k in zip(twists, shifts)], s))
    assert a.basis_values == b.basis_values


@given(st.integers(1, 3), st.data())
def test_rokhlin_form_is_quadratic_with_redundant_core(g, data):
    # 2g + 1 cores on Sigma_{g,1}: the last is forced, so pick its twist to match
    s = SurfaceSignature(g, 1)
    twists = data.draw(st.lists(st.integers(-9, 9), min_size=2 * g, max_size=2 * g))
    base = rokhlin_form(chain_descriptor(twists, s))
    last = chain_descriptor(twists + [0], s)
    forced = base(last.basis_assignment[last.nodes[-1].label])
    q = rokhlin_form(chain_descriptor(twists + [forced + 2 * data.draw(st.integers(-3, 3))], s))
    x, y = data.draw(classes(s)), data.draw(classes(s))
    assert q(x + y) == (q(x) + q(y) + intersect(x, y)) % 2


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_trivial_chain_meridian_plus_longitude(g):
    s = SurfaceSignature(g, 1)
    q = rokhlin_form(chain_descriptor([0] * (2 * g), s))
    for i in range(1, g + 1):
        assert q(HomologyClass.from_labels(s, [f"x{i}", f"y{i}"])) == 1


# ---------- extendibility

WITNESS_RANGE = ([SurfaceSignature(0, b) for b in range(3, 7)]
                 + [SurfaceSignature(1, b) for b in range(2, 5)]
                 + [SurfaceSignature(g, b) for g in (2, 3) for b in range(5)])


@given(surface_form(WITNESS_RANGE))
def test_witness_has_q_zero(data):
    s, q = data
    cls, _ = witness_q_zero(s, q)
    assert q(cls) == 0


@given(form_and_classes())
def test_orthogonal_sum_contains_a_zero(data):
    q, y, z = data
    if intersect(y, z) == 0:
        assert 0 in {q(y + z), q(y), q(z)}


@settings(max_examples=60)
@given(st.integers(1, 3), st.data())
def test_propagation_terminates_and_is_monotone(g, data):
    s = SurfaceSignature(g, 2)
    n = 2 * g + 1
    twists = data.draw(st.lists(st.sampled_from([-5, -3, -1, 0, 1, 2, 3, 5, 9]), min_size=n, max_size=n))
    d = chain_descriptor(twists, s)
    store = thm3_propagate(d)
    assert store.iterations <= 3 * len(d.nodes)
    extra = data.draw(st.sets(st.sampled_from([nd.label for nd in d.nodes])))
    seeded = FactStore()
    for lbl in extra:
        seeded.add(ExtendibilityFact(lbl, Status.EXTENDIBLE, Rationale.HOPF))
    bigger = thm3_propagate(d, seeded)
    for lbl in (nd.label for nd in d.nodes):
        if store.is_extendible(lbl):
            assert bigger.is_extendible(lbl)
    assert bigger.iterations <= 3 * len(d.nodes)


DESCRIPTORS = sorted(p.stem for p in data_path("descriptors").glob("*.json"))


@pytest.mark.parametrize("name", DESCRIPTORS)
def test_no_curve_both_extendible_and_obstructed(name):
    d = load_descriptor(data_path("descriptors", f"{name}.json"))
    q = rokhlin_form(d)
    store = thm3_propagate(d)
    for lbl, cls in d.basis_assignment.items():
        store.add(obstruct_essential(q, cls, name=lbl))
    assert not set(store.negative) & {k for k, f in store.positive.items() if f.status is Status.EXTENDIBLE}


@pytest.mark.parametrize("s", [s for s in SURFACES if (s.genus, s.boundary) != (1, 0)])
def test_no_flexible_embedding_implies_witness(s):
    v = flexibility_verdict(s, "homology_ball_with_S3_boundary")
    if v.verdict == Flexibility.NONE_EXISTS.value:
        for q in enumerate_forms(s):
            assert q(witness_q_zero(s, q)[0]) == 0


# ---------- open books


def fraction_det(M):
    A = [[Fraction(v) for v in row] for row in M]
    n, det = len(A), Fraction(1)
    for k in range(n):
        p = next((r for r in range(k, n) if A[r][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        det *= A[k][k]
        for r in range(k + 1, n):
            f = A[r][k] / A[k][k]
            A[r] = [a - f * b for a, b in zip(A[r], A[k])]
    return int(det)


@given(st.integers(0, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_is_exact(M):
    assert bareiss_det(M) == fraction_det(M)


@given(st.integers(0, 6))
def test_identity_monodromy_is_never_a_sphere(n):
    v = variation_from_monodromy(np.eye(n, dtype=int))
    assert is_homotopy_sphere(v) == (n == 0)


@given(st.booleans(), st.booleans(), st.booleans(), st.sampled_from([None, ((1, 0), (0, 1)), ((0, 0), (0, 0))]))
def test_not_universal_needs_spin_and_simple(spin, simple, kernel, delta):
    v = None if delta is None else VariationData(delta)
    r = universality_obstruction(spin, simple, v, kernel)
    if not (spin and simple):
        assert r.verdict != "NotUniversal"
