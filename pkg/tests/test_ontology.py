import pytest
from hypothesis import given, settings
from oracles import brute_ancestors, brute_depth
from strategies import ontologies

from vgh_judge.errors import OntologyError, UnknownConceptError
from vgh_judge.ontology import (
    concepts_for_word,
    hypernym_closure,
    lcs,
    load_ontology,
    normalize_lemma,
    path_lengths,
)


def ids(concepts):
    return {c.id for c in concepts}


def test_vehicle_depths(vehicle):
    assert vehicle.root == "vehicle.n.01"
    assert vehicle.concept("car.n.01").depth == 2
    assert vehicle.concept("compact.n.03").depth == 3


def test_single_concept():
    o = load_ontology("C e1 n entity\n")
    assert o.root == "e1"
    assert o.concept("e1").depth == 0
    assert o.concept("e1").parents == ()


def test_lemma_normalization():
    assert normalize_lemma("  Compact_Car ") == "compact car"
    assert normalize_lemma("warm-blooded   animal") == "warm-blooded animal"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("C a n x\nH a b\n", "'b'"),
        ("C a n x\nC a n y\n", "duplicate concept id"),
        ("C a n x\nC b n y\nH a b\nH b a\n", "no root"),
        ("C r n r\nC a n x\nC b n y\nH a r\nH a b\nH b a\n", "cycle"),
        ("C a n x\nC b n y\n", "multiple root"),
        ("C a n\n", "concept line"),
        ("C a q x\n", "part of speech"),
        ("X a b\n", "record type"),
        ("C a n x\nH a a\n", "cycle"),
        ("# only comments\n\n", "no concepts"),
    ],
)
def test_validation_errors(text, fragment):
    with pytest.raises(OntologyError, match=fragment):
        load_ontology(text)


def test_error_carries_line_number():
    with pytest.raises(OntologyError) as info:
        load_ontology("C a n x\n\n# c\nC a n y\n")
    assert info.value.line == 4


def test_forward_references():
    o = load_ontology("H b a\nC b n child\nC a n root\n")
    assert o.concept("b").depth == 1


def test_concepts_for_word(vehicle, vertebrates):
    assert ids(concepts_for_word(vehicle, "car", "noun")) == {"car.n.01"}
    assert ids(concepts_for_word(vehicle, "automobile", "noun")) == {"car.n.01"}
    assert ids(concepts_for_word(vehicle, "Compact_Car", "n")) == {"compact.n.03"}
    assert concepts_for_word(vertebrates, "unicorn", "noun") == []
    assert concepts_for_word(vertebrates, "salmon", "verb") == []


def test_sense_order_follows_file(vertebrates):
    assert [c.id for c in concepts_for_word(vertebrates, "fish")] == ["fish.n.01", "fish.n.02"]


def test_hypernym_closure(vehicle, vertebrates):
    assert hypernym_closure(vehicle, "vehicle.n.01") == set()
    assert ids(hypernym_closure(vehicle, "compact.n.03")) == {"car.n.01", "wheeled_vehicle.n.01", "vehicle.n.01"}
    salmon = ids(hypernym_closure(vertebrates, "salmon.n.01"))
    assert {"fish.n.01", "vertebrate.n.01", "chordate.n.01", "animal.n.01", "entity.n.01"} <= salmon
    assert "poikilotherm.n.01" not in salmon


def test_unknown_concept(vehicle):
    with pytest.raises(UnknownConceptError):
        hypernym_closure(vehicle, "nope")
    with pytest.raises(UnknownConceptError):
        lcs(vehicle, "car.n.01", "nope")


def test_lcs(vehicle, vertebrates):
    assert lcs(vehicle, "car.n.01", "compact.n.03").id == "car.n.01"
    assert lcs(vehicle, "suv.n.01", "suv.n.01").id == "suv.n.01"
    # ectotherm is a sister term of chordate
    assert lcs(vertebrates, "salmon.n.01", "poikilotherm.n.01").id == "animal.n.01"
    common = (brute_ancestors(vertebrates, "salmon.n.01") | {"salmon.n.01"}) & (
        brute_ancestors(vertebrates, "poikilotherm.n.01") | {"poikilotherm.n.01"}
    )
    assert max(common, key=lambda c: brute_depth(vertebrates, c)) == "animal.n.01"


def test_lcs_tie_breaks_on_smallest_id():
    o = load_ontology(
        "C r n root\nC p n p\nC q n q\nC x n x\nC y n y\n"
        "H p r\nH q r\nH x p\nH x q\nH y p\nH y q\n"
    )
    assert lcs(o, "x", "y").id == "p"
    assert lcs(o, "y", "x").id == "p"


def test_depth_is_longest_path():
    o = load_ontology("C r n r\nC a n a\nC b n b\nC c n c\nH a r\nH b a\nH c r\nH c b\n")
    assert o.concept("c").depth == 3


def test_path_lengths(vehicle, vertebrates):
    assert path_lengths(vehicle, "car.n.01", "compact.n.03") == (0, 1, 2)
    assert path_lengths(vehicle, "suv.n.01", "suv.n.01") == (0, 0, 3)
    assert path_lengths(vertebrates, "salmon.n.01", "fish.n.01") == (2, 0, 12)


@settings(max_examples=60, deadline=None)
@given(ontologies(max_concepts=25, dag=True))
def test_depth_and_closure_match_brute_force(o):
    for cid, c in o.concepts.items():
        assert c.depth == brute_depth(o, cid)
        assert ids(hypernym_closure(o, cid)) == brute_ancestors(o, cid)
        for lemma in c.lemmas:
            assert c in concepts_for_word(o, lemma, c.pos)


@settings(max_examples=60, deadline=None)
@given(ontologies(max_concepts=20, dag=True))
def test_lcs_properties(o):
    cids = list(o.concepts)
    for a in cids:
        for b in cids:
            sub = lcs(o, a, b)
            assert sub == lcs(o, b, a)
            assert sub.id in (brute_ancestors(o, a) | {a}) & (brute_ancestors(o, b) | {b})
            if a in brute_ancestors(o, b):
                assert sub.id == a
            n1, n2, n3 = path_lengths(o, a, b)
            assert min(n1, n2, n3) >= 0
