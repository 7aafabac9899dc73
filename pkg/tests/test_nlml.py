from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from csiec.nlml import (
    NlmlDoc,
    NlmlError,
    NlmlNode,
    container,
    element,
    empty,
    normalized,
    parse_nlml,
    serialize,
    to_nlml,
)
from csiec.parser import parse_text

FIXTURES = Path(__file__).parent / "fixtures"


def table1_doc(grammar, lexicon):
    tree = parse_text("I give you a book today.", grammar, lexicon)[0]
    return to_nlml(tree)


def test_golden_table_markup(grammar, lexicon):
    got = normalized(serialize(table1_doc(grammar, lexicon)))
    want = normalized((FIXTURES / "table1_nlml.txt").read_text())
    assert got == want


def test_doc_shape(grammar, lexicon):
    doc = table1_doc(grammar, lexicon)
    assert [n.tag for n in doc.root] == ["mood", "complexity", "subject", "voc"]
    assert doc.root[0].text == "statement"
    voc = doc.root[3]
    assert [c.tag for c in voc.children[:5]] == \
        ["verb_type", "tense", "numb", "pers", "verb_word"]
    circums = voc.find_all("circum")
    assert len(circums) == 3
    assert not circums[0].children and not circums[1].children
    assert circums[2].children[0].tag == "adv"


def test_intransitive_doc(grammar, lexicon):
    tree = parse_text("I come today.", grammar, lexicon)[0]
    doc = to_nlml(tree)
    assert doc.mood() == "statement"
    assert doc.find("complexity").text == "simple"
    voc = doc.find("voc")
    assert voc.find("verb_type").text == "intransitive"
    filled = [c for c in voc.find_all("circum") if c.children]
    assert len(filled) == 1
    adv = filled[0].children[0]
    assert adv.find("word").text == "today"
    assert adv.find("type").text == "time"


def test_exclamation_doc(grammar, lexicon):
    tree = parse_text("What a rainy day!", grammar, lexicon)[0]
    doc = to_nlml(tree)
    assert doc.mood() == "exclamation"
    assert doc.find("word").text == "what"
    prems = doc.find("subject").find_all("prem")
    assert [(p.find("type").text, p.find("word").text) for p in prems] == \
        [("art", "a"), ("adj", "rainy")]


def test_serialize_empty_doc():
    assert serialize(NlmlDoc([])) == ""


def test_single_element_roundtrip():
    doc = parse_nlml("<mood>statement</mood>")
    assert len(doc.root) == 1
    assert doc.root[0].text == "statement"


def test_unbalanced_tag_error():
    with pytest.raises(NlmlError, match="never closed"):
        parse_nlml("<mood>statement")
    with pytest.raises(NlmlError, match="unbalanced"):
        parse_nlml("<mood>statement</voc>")


def test_unknown_tag_error():
    with pytest.raises(NlmlError, match="unknown tag"):
        parse_nlml("<blimp>x</blimp>")
    with pytest.raises(NlmlError, match="unknown NLML tag"):
        NlmlNode("blimp")


def test_forbidden_text_rejected():
    with pytest.raises(NlmlError, match="forbidden"):
        element("word", "a<b")


def test_top_level_count_for_golden(grammar, lexicon):
    text = (FIXTURES / "table1_nlml.txt").read_text()
    doc = parse_nlml(text)
    assert len(doc.root) == 4


# random documents over the closed tag set round-trip exactly

LEAF_TAGS = ["mood", "type", "word", "numb", "pers", "case", "tense",
             "verb_type", "verb_word", "conj", "complexity", "voice"]
BRANCH_TAGS = ["subject", "voc", "noun", "prem", "circum", "adv", "clause",
               "predicate", "indirect_object", "direct_object", "object"]

texts = st.text(alphabet="abyz'-_87 ", min_size=0, max_size=8).map(str.strip)


def nodes(depth=3):
    leaf = st.builds(
        lambda tag, txt: NlmlNode(tag, text=txt if txt else None),
        st.sampled_from(LEAF_TAGS), texts)
    if depth == 0:
        return leaf
    return st.one_of(
        leaf,
        st.builds(lambda tag, kids: NlmlNode(tag, children=kids),
                  st.sampled_from(BRANCH_TAGS),
                  st.lists(nodes(depth - 1), min_size=0, max_size=3)),
    )


@given(st.lists(nodes(), min_size=0, max_size=4))
def test_random_doc_roundtrip(tops):
    doc = NlmlDoc(tops)
    assert parse_nlml(serialize(doc)) == doc


def test_empty_container_stays_empty():
    doc = NlmlDoc([container("voc", [empty("circum"), empty("circum")])])
    again = parse_nlml(serialize(doc))
    assert again == doc
    assert not again.root[0].children[0].children
    assert again.root[0].children[0].text is None
