import json

import pytest

from spinform.datafiles import data_path
from spinform.homology import SurfaceSignature
from spinform.plumbing import (
    AnnulusNode,
    DescriptorError,
    IncompleteBasisError,
    InconsistentDescriptorError,
    NotCharacteristicError,
    Pass,
    PlumbingDescriptor,
    PlumbingEdge,
    TraversalCurve,
    chain_descriptor,
    descriptor_from_dict,
    framing_after_twist,
    iterate_framing,
    load_descriptor,
    rokhlin_form,
    rokhlin_value,
    traversal_framing,
)
from spinform.quadform import arf, q_standard
from spinform.schemas import SchemaError

from conftest import cls


def shipped(name):
    return load_descriptor(data_path("descriptors", f"{name}.json"))


@pytest.mark.parametrize("twist,value", [(1, 1), (0, 0), (-3, 1), (4, 0)])
def test_rokhlin_value(twist, value):
    assert rokhlin_value(AnnulusNode("k", twist)) == value


def test_trefoil_form():
    q = rokhlin_form(shipped("trefoil"))
    assert q.basis_values == (1, 1)
    assert arf(q) == 1


def test_figure_eight_form():
    q = rokhlin_form(shipped("figure_eight"))
    assert q.basis_values == (1, 1)
    assert arf(q) == 1


@pytest.mark.parametrize("g", [1, 2, 3])
def test_trivial_chain_is_standard(g):
    d = shipped(f"trivial_chain_g{g}")
    q = rokhlin_form(d)
    assert q.basis_values == q_standard(d.surface).basis_values
    for i in range(1, g + 1):
        assert q(cls(d.surface, f"x{i}", f"y{i}")) == 1


def test_redundant_cores_checked():
    # five cores on a rank-4 surface: the fifth core x2 = c3 + c1 is forced to q = 0
    s = SurfaceSignature(2, 1)
    d = chain_descriptor([1, -3, 5, -7, 2], s)
    q = rokhlin_form(d)
    assert all(q(d.basis_assignment[n.label]) == n.twist % 2 for n in d.nodes)
    bad = chain_descriptor([1, -3, 5, -7, 9], s)
    with pytest.raises(InconsistentDescriptorError):
        rokhlin_form(bad)


def test_even_twist_changes_do_not_change_the_form():
    s = SurfaceSignature(2, 2)
    a = rokhlin_form(chain_descriptor([1, -3, 5, -7, 9], s))
    b = rokhlin_form(chain_descriptor([3, -1, 1, 1, -1], s))
    assert a.basis_values == b.basis_values


def test_incomplete_basis():
    s = SurfaceSignature(2, 1)
    with pytest.raises(IncompleteBasisError):
        rokhlin_form(chain_descriptor([1, 1], s))


def test_non_characteristic_ambient_needs_assertion():
    d = chain_descriptor([1, 1], SurfaceSignature(1, 1), ambient="S2xS2_minus_ball")
    with pytest.raises(NotCharacteristicError):
        rokhlin_form(d)
    assert rokhlin_form(d, assert_characteristic=True).basis_values == (1, 1)


def test_adjacency_must_match_intersections():
    s = SurfaceSignature(1, 1)
    nodes = (AnnulusNode("m", 1), AnnulusNode("l", 1))
    with pytest.raises(DescriptorError):
        PlumbingDescriptor(s, "homology_ball_with_S3_boundary", nodes, (),
                           basis_assignment={"m": cls(s, "x1"), "l": cls(s, "y1")}).validate()
    d = PlumbingDescriptor(s, "homology_ball_with_S3_boundary", nodes, (PlumbingEdge("m", "l"),),
                           basis_assignment={"m": cls(s, "x1"), "l": cls(s, "x1")})
    with pytest.raises(InconsistentDescriptorError):
        d.validate()


def test_duplicate_labels_rejected():
    with pytest.raises(DescriptorError):
        PlumbingDescriptor(SurfaceSignature(1, 1), "homology_sphere", (AnnulusNode("m", 1), AnnulusNode("m", 0)))


def test_nonpositive_multiplicity_rejected():
    with pytest.raises(DescriptorError):
        Pass("A1", 0)


@pytest.mark.parametrize("n_t,n_tw,h,out", [(0, 1, 1, 2), (5, -3, -1, 1), (2, 2, -1, 3)])
def test_framing_after_twist(n_t, n_tw, h, out):
    assert framing_after_twist(n_t, n_tw, h) == out


@pytest.mark.parametrize("m", range(1, 11))
def test_iterated_right_twists_reach_one(m):
    assert iterate_framing(2 * m + 1, 0, -1, 2 * m) == 1


def test_traversal_framing_examples():
    s = SurfaceSignature(1, 1)
    d = chain_descriptor([3, 1], s, labels=["A", "C"])
    assert traversal_framing(TraversalCurve("t", (Pass("A"),)), d) == 3
    avoid = TraversalCurve("t", (Pass("A", 1, False), Pass("C", 2, False)), declared_crossing_sum=1)
    assert traversal_framing(avoid, d) == 1
    assert traversal_framing(TraversalCurve("t", (Pass("A", 2),)), d) == 12


def test_even_set_d1_framing_is_one():
    for g in range(4, 9):
        d = shipped(f"hammenstadt_even_g{g}")
        assert traversal_framing(d.curve("d1'"), d) == 1


@pytest.mark.parametrize("g", range(3, 9))
def test_odd_set_framings(g):
    d = shipped(f"hammenstadt_odd_g{g}")
    q = rokhlin_form(d)
    assert arf(q) == 1
    for c in d.curves:
        fr = traversal_framing(c, d)
        assert fr == c.expected_framing
        assert fr % 2 == q(c.homology)


@pytest.mark.parametrize("g", range(4, 9))
def test_even_set_framings(g):
    d = shipped(f"hammenstadt_even_g{g}")
    q = rokhlin_form(d)
    assert arf(q) == 0
    for c in d.curves:
        fr = traversal_framing(c, d)
        assert fr == c.expected_framing
        assert fr % 2 == q(c.homology)


def test_every_shipped_descriptor_loads():
    paths = sorted(data_path("descriptors").glob("*.json"))
    assert len(paths) >= 10
    for p in paths:
        d = load_descriptor(p)
        assert d.name
        data = json.loads(p.read_text())
        assert data.get("provenance")


def test_schema_rejects_malformed(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"surface": {"g": 1, "b": 1}, "ambient": "homology_sphere",
                             "nodes": [{"label": "m", "twist": "one"}]}))
    with pytest.raises(SchemaError, match="nodes/0/twist"):
        load_descriptor(p)


def test_unknown_ambient():
    with pytest.raises(ValueError):
        descriptor_from_dict({"surface": {"g": 1, "b": 1}, "ambient": "mars", "nodes": [{"label": "m", "twist": 1}]})


def test_other_ambient_allowed():
    d = descriptor_from_dict({"surface": {"g": 0, "b": 2}, "ambient": "other:K3", "nodes": [{"label": "k", "twist": 1}],
                              "basis_assignment": {"k": {"d1": 1}}})
    assert not d.is_characteristic
