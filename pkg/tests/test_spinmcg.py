import json

import pytest

from spinform.datafiles import data_path
from spinform.homology import HomologyClass, SurfaceSignature, Z2, columns_from_array, transvection_matrix, twist_word_matrix
from spinform.plumbing import load_descriptor, rokhlin_form
from spinform.quadform import QuadraticForm, arf, enumerate_forms, preserves_q, q_standard
from spinform.homology import standard_form
from spinform.spinmcg.bfs import (
    GuardError,
    closure_order,
    generated_subgroup_order,
    stabilizer_order_oracle,
    symplectic_bases,
    symplectic_group_order,
)
from spinform.spinmcg.catalogs import (
    BRAID,
    COMMUTE,
    CatalogError,
    MissingCatalogError,
    catalog_from_dict,
    catalog_hammenstadt_even,
    catalog_hammenstadt_odd,
    catalog_hirose,
    catalog_humphreys,
    load_catalog,
)
from spinform.spinmcg.chains import identity_from_dict, load_chain_file, verify_identity
from spinform.spinmcg.generators import GeneratorRangeError, hirose_generators, thm5_generators, twist_generators
from spinform.spinmcg.rewrite import (
    BRAID_MOVE,
    COMMUTE_MOVE,
    CONJUGATE,
    FREE_CANCEL,
    REGROUP,
    Move,
    RewriteChain,
    UnverifiableMoveError,
    braid_forms,
    commute_reduce_path,
    find_rewrite_path,
    resolve_curve,
    verify_identity_symplectic,
    verify_rewrite_chain,
)
from spinform.spinmcg.words import TwistWord, WordSyntaxError, eval_index, word

from conftest import cls


# ---------- words


def test_parse_powers_and_groups():
    w = TwistWord.parse("(a b)^2 c^-1")
    assert w.letters == (("a", 1), ("b", 1), ("a", 1), ("b", 1), ("c", -1))
    assert TwistWord.parse("(a b^-1)^-1").letters == (("b", 1), ("a", -1))


def test_parse_templates():
    assert word("c{2i+1} b{2i}^2", i=3).letters == (("c7", 1), ("b6", 1), ("b6", 1))
    assert word("c{2g+1}", g=4).letters == (("c9", 1),)
    assert eval_index("2g-1", {"g": 3}) == 5


def test_parse_composition_symbol():
    assert TwistWord.parse("a ∘ b").letters == (("a", 1), ("b", 1))


def test_parse_errors():
    with pytest.raises(WordSyntaxError):
        TwistWord.parse("(a b")
    with pytest.raises(WordSyntaxError):
        TwistWord.parse("^2")
    with pytest.raises(WordSyntaxError):
        word("c{2k}", i=1)


def test_word_algebra():
    w = TwistWord.parse("a b^-1")
    assert (w + w.inverse()).freely_reduced().letters == ()
    assert (w ** -1).letters == w.inverse().letters
    assert str(TwistWord.parse("a a b^-1")) == "a^2 b^-1"
    assert str(TwistWord()) == "1"


# ---------- catalogs


def all_catalogs():
    for g in range(2, 9):
        yield catalog_hirose(g)
    for g in range(1, 7):
        for b in range(4):
            yield catalog_humphreys(g, b)
    for g in range(3, 9):
        yield catalog_hammenstadt_odd(g)
    for g in range(4, 9):
        yield catalog_hammenstadt_even(g)


def test_every_shipped_catalog_is_valid():
    n = 0
    for cat in all_catalogs():
        assert cat.validity_errors() == []
        for (a, b), rel in cat.relation_table.items():
            assert rel == (COMMUTE if cat.geometric(a, b) == 0 else BRAID)
        n += 1
    assert n == 7 + 24 + 6 + 5


@pytest.mark.parametrize("g", range(3, 9))
def test_hammenstadt_sizes(g):
    assert len(catalog_hammenstadt_odd(g)) == 2 * g + 1
    if g >= 4:
        assert len(catalog_hammenstadt_even(g)) == 2 * g + 1


@pytest.mark.parametrize("g", range(2, 7))
def test_humphreys_size(g):
    assert len(catalog_humphreys(g, 1)) == 2 * g + 1


def test_hirose_curve_classes():
    cat = catalog_hirose(3)
    s = cat.surface
    assert cat["c1"] == cls(s, "x1") and cat["c4"] == cls(s, "y2")
    assert cat["c5"] == cls(s, "x2", "x3") and cat["c7"] == cls(s, "x3")
    assert cat["b4"] == cls(s, "x2")
    assert cat.relation("b4", "c4") == BRAID
    assert cat.relation("b4", "c5") == COMMUTE
    assert cat.relation("c3", "c4") == BRAID


def test_unknown_intersections_have_no_relation():
    cat = catalog_hammenstadt_odd(4)
    assert cat.relation("b1", "a2") is None
    assert cat.relation("a1", "c1") == BRAID


def test_invalid_catalog_rejected():
    data = {"surface": {"g": 1, "b": 0}, "curves": {"a": {"x1": 1}, "b": {"y1": 1}},
            "geometric_intersections": [["a", "b", 2]]}
    with pytest.raises(CatalogError):
        catalog_from_dict(data)


def test_missing_catalogs():
    with pytest.raises(MissingCatalogError):
        catalog_hirose(40)
    with pytest.raises(CatalogError):
        catalog_hammenstadt_even(3)
    with pytest.raises(MissingCatalogError):
        load_catalog("nonesuch", 3)
    assert load_catalog("hg", 3).name == "hirose_g3"


def test_data_dir_override(tmp_path, monkeypatch):
    d = tmp_path / "catalogs" / "hirose"
    d.mkdir(parents=True)
    src = json.loads(data_path("catalogs", "hirose", "g3.json").read_text())
    src["name"] = "override"
    (d / "g3.json").write_text(json.dumps(src))
    monkeypatch.setenv("SPINFORM_DATA_DIR", str(tmp_path))
    assert catalog_hirose(3).name == "override"


# ---------- generators


def test_hirose_generator_counts():
    gens = hirose_generators(3)
    assert sum(k.startswith("X") for k in gens) == 6
    assert sum(k.startswith("D") and not k.startswith("DB") for k in gens) == 7
    assert gens["Z2"].letters == (("b4", 1), ("c5", 1), ("c7", 1))
    assert len(gens) == 6 * 3 - 1
    with pytest.raises(GeneratorRangeError):
        hirose_generators(1)


def test_thm5_generators():
    gens = thm5_generators(3)
    assert len(gens) == 9
    assert gens["beta1"].letters == (("c1", 1), ("c3", 1), ("b4", 1))
    assert gens["gamma1"].letters == (("c1", 1), ("c1", 1))
    assert len(thm5_generators(5)) == 15
    with pytest.raises(GeneratorRangeError):
        thm5_generators(2)


@pytest.mark.parametrize("g", [3, 4, 5])
def test_spin_generators_preserve_standard_form(g):
    cat = catalog_hirose(g)
    q = q_standard(cat.surface)
    for gens in (hirose_generators(g), thm5_generators(g)):
        for name, w in gens.items():
            assert preserves_q(twist_word_matrix(w, cat, Z2), q), name


@pytest.mark.parametrize("g", [2, 3])
def test_humphreys_twists_break_standard_form(g):
    cat = catalog_humphreys(g, 1)
    q = q_standard(cat.surface)
    flags = [preserves_q(twist_word_matrix(w, cat, Z2), q) for w in twist_generators(cat).values()]
    assert not all(flags)


@pytest.mark.parametrize("g", range(3, 9))
def test_odd_set_preserves_its_form(g):
    cat = catalog_hammenstadt_odd(g)
    q = rokhlin_form(load_descriptor(data_path("descriptors", f"hammenstadt_odd_g{g}.json")))
    for name, w in twist_generators(cat).items():
        assert preserves_q(twist_word_matrix(w, cat, Z2), q), name


@pytest.mark.parametrize("g", range(4, 9))
def test_even_set_preserves_its_form(g):
    cat = catalog_hammenstadt_even(g)
    q = rokhlin_form(load_descriptor(data_path("descriptors", f"hammenstadt_even_g{g}.json")))
    for name, w in twist_generators(cat).items():
        assert preserves_q(twist_word_matrix(w, cat, Z2), q), name


# ---------- BFS and oracle


def test_all_transvections_generate_sp():
    for g, order in ((1, 6), (2, 720)):
        s = SurfaceSignature(g, 0)
        gens = []
        for bits in range(1, 1 << (2 * g)):
            gens.append(columns_from_array(transvection_matrix(HomologyClass.from_bits(bits, s), 1, Z2)))
        assert closure_order(gens, 2 * g) == order == symplectic_group_order(g)


def test_empty_generator_list():
    assert closure_order([], 4) == 1


def test_bfs_guard():
    with pytest.raises(GuardError):
        closure_order([tuple(1 << j for j in range(10))], 10)
    with pytest.raises(GuardError):
        generated_subgroup_order(hirose_generators(5), catalog_hirose(5))


def test_symplectic_bases_count():
    for g in (1, 2):
        assert len(symplectic_bases(g)) == symplectic_group_order(g)
    with pytest.raises(GuardError):
        symplectic_bases(4)


@pytest.mark.parametrize("g,arf0,arf1", [(1, 2, 6), (2, 72, 120)])
def test_oracle_orders(g, arf0, arf1):
    s = SurfaceSignature(g, 0)
    form = standard_form(s)
    assert stabilizer_order_oracle(q_standard(s), g) == arf0
    odd = QuadraticForm((1, 1) + (0,) * (2 * g - 2), form, s)
    assert stabilizer_order_oracle(odd, g) == arf1


def test_oracle_orbit_stabilizer_g2():
    s = SurfaceSignature(2, 0)
    for q in enumerate_forms(s):
        n = stabilizer_order_oracle(q, 2)
        assert n * (10 if arf(q) == 0 else 6) == 720


def test_generated_order_g2():
    cat = catalog_hirose(2)
    order, ok = generated_subgroup_order(hirose_generators(2), cat, q_standard(cat.surface))
    assert (order, ok) == (72, True)


# ---------- rewriting


def test_braid_forms_are_symplectic_identities():
    cat = catalog_hirose(3)
    for L, R in braid_forms("c3", "c4"):
        assert verify_identity_symplectic(TwistWord(L), TwistWord(R), cat)


def test_verify_identity_examples():
    cat = catalog_hirose(3)
    assert verify_identity_symplectic(word("c1 c2"), word("c1 c2"), cat)
    assert verify_identity_symplectic(word("c1 c2 c1"), word("c2 c1 c2"), cat)
    assert verify_identity_symplectic(word("c3^2"), word("(c1 c3 b4)^2 c1^-2 b4^-2"), cat)
    assert not verify_identity_symplectic(word("c1"), word("c2"), cat)


def test_free_cancel_chain():
    cat = catalog_hirose(3)
    chain = RewriteChain((word("c1 c2 c2^-1 c3"), word("c1 c3")), (Move(FREE_CANCEL),))
    assert verify_rewrite_chain(chain, cat).ok


def test_equation_chain_by_braid():
    # b = c b c b^-1 c^-1 since b c b = c b c
    cat = catalog_hirose(3)
    steps = (word("c4 b4 c4 b4^-1 c4^-1"), word("b4 c4 b4 b4^-1 c4^-1"), word("b4 c4 c4^-1"), word("b4"))
    moves = (Move(BRAID_MOVE, ("b4", "c4")), Move(FREE_CANCEL), Move(FREE_CANCEL))
    assert verify_rewrite_chain(RewriteChain(steps, moves), cat).ok


def test_commute_on_braid_pair_fails():
    cat = catalog_hirose(3)
    chain = RewriteChain((word("c1 c2"), word("c2 c1")), (Move(COMMUTE_MOVE, ("c1", "c2")),))
    rep = verify_rewrite_chain(chain, cat)
    assert rep.status == "fail"


def test_undeclared_pair_unverifiable():
    cat = catalog_hammenstadt_odd(4)
    chain = RewriteChain((word("b1 a2"), word("a2 b1")), (Move(COMMUTE_MOVE, ("a2", "b1")),))
    assert verify_rewrite_chain(chain, cat).status == "unverifiable"
    with pytest.raises(UnverifiableMoveError):
        verify_rewrite_chain(chain, cat, strict=True)


def test_conjugate_rewrite():
    cat = catalog_hirose(3)
    chain = RewriteChain((word("c4 c3 c4^-1"), TwistWord((("c4(c3)", 1),))), (Move(CONJUGATE),))
    assert verify_rewrite_chain(chain, cat).ok
    derived = resolve_curve("c4(c3)", cat)
    assert derived.mod2().bits == (cat["c3"].bits ^ cat["c4"].bits)
    assert verify_identity_symplectic(chain.steps[0], chain.steps[1], cat)


def test_regroup_and_length_check():
    cat = catalog_hirose(3)
    a = TwistWord.parse("(c1 c3) b4")
    b = TwistWord.parse("c1 (c3 b4)")
    assert verify_rewrite_chain(RewriteChain((a, b), (Move(REGROUP),)), cat).ok
    with pytest.raises(ValueError):
        RewriteChain((a, b), ())
    with pytest.raises(ValueError):
        Move(BRAID_MOVE)


def test_find_rewrite_path():
    cat = catalog_hirose(3)
    path = find_rewrite_path(word("c1 c2 c1"), word("c2 c1 c2"), cat)
    assert path is not None and verify_rewrite_chain(path, cat).ok
    assert find_rewrite_path(word("c1"), word("c2"), cat, max_states=2000) is None


def test_commute_reduce_path():
    cat = catalog_hirose(4)
    u, v = word("c3^2"), word("(c1 c3 b4)^2 c1^-2 b4^-2")
    path = commute_reduce_path(u, v, cat)
    assert path.steps[0].letters == u.letters and path.steps[-1].letters == v.letters
    assert verify_rewrite_chain(path, cat).ok


# ---------- shipped chains


def test_chain_file_loads():
    cf = load_chain_file()
    names = {i.name for i in cf.identities}
    assert {"D_odd", "D_3", "D_last", "Y_even", "b_conjugation", "D_2", "D_2g",
            "even_odd_conjugate", "odd_even_conjugate"} <= names


@pytest.mark.parametrize("g", [3, 4, 5, 6])
def test_shipped_chains_verify(g):
    cat = catalog_hirose(g)
    for ident in load_chain_file().identities:
        rep = verify_identity(ident, g, cat)
        assert rep.instances > 0
        assert (rep.symplectic, rep.moves) == ("pass", "pass"), (ident.name, rep.messages)


def test_chain_instances():
    ident = identity_from_dict({"name": "t", "params": {"i": [2, "g-1"]}, "lines": ["c{2i}", "c{2i}"]})
    assert [b["i"] for b in ident.instances(5)] == [2, 3, 4]
    assert list(identity_from_dict({"name": "t", "g_min": 4, "lines": ["c1", "c1"]}).instances(3)) == []


def test_chain_without_steps_is_unverifiable():
    ident = identity_from_dict({"name": "t", "lines": ["c3^2", "(c1 c3 b4)^2 c1^-2 b4^-2"]})
    rep = verify_identity(ident, 3, catalog_hirose(3))
    assert (rep.symplectic, rep.moves) == ("pass", "unverifiable")


def test_wrong_identity_fails_symplectic():
    ident = identity_from_dict({"name": "t", "lines": ["c1 c2", "c2 c1"]})
    assert verify_identity(ident, 3, catalog_hirose(3)).symplectic == "fail"


def test_steps_must_reach_next_line():
    ident = identity_from_dict({"name": "t", "lines": ["c1 c3", "c3 c1"],
                                "steps": [[{"word": "c1 c3", "move": "Regroup"}]]})
    assert verify_identity(ident, 3, catalog_hirose(3)).moves == "fail"
