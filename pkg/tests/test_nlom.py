import pytest

from csiec.features import VerbType
from csiec.nlml import container, element, empty, parse_nlml, serialize, to_nlml
from csiec.nlom import (
    Adj,
    Circumstance,
    ComplexSentence,
    NlomError,
    Nounpart,
    PrepPhrase,
    SimpleSentence,
    classify_complexity,
    classify_mood,
    classify_voice,
    from_nlml,
    realize,
    unit_text,
    from_nlml as _,
)
from csiec.parser import parse_text, tokenize


def build(text, grammar, lexicon):
    tree = parse_text(text, grammar, lexicon)[0]
    return from_nlml(to_nlml(tree))


def test_table_sentence_objects(grammar, lexicon):
    s = build("I give you a book today.", grammar, lexicon)
    assert isinstance(s, SimpleSentence)
    assert len(s.basics) == 1
    basic = s.basics[0]
    assert basic.subject.kind == "pronoun"
    assert (basic.subject.word, basic.subject.numb,
            basic.subject.pers, basic.subject.case) == ("I", "sing", "first", "nom")
    voc = basic.voc
    assert voc.verb_type == VerbType.VERB_IO_DO
    assert voc.tense == "present"
    assert voc.verb_word == "give"
    assert voc.indirect_object.word == "you"
    assert unit_text(voc.direct_object) == "a book"
    trailing = voc.circ("trailing")
    assert len(trailing) == 1
    assert trailing[0].adv_type == "time"
    assert unit_text(trailing[0]) == "today"


def test_complex_sentence_objects(grammar, lexicon):
    s = build("If you come I will go.", grammar, lexicon)
    assert isinstance(s, ComplexSentence)
    assert s.subordinator == "if"
    assert s.subordinate.basics[0].voc.verb_word == "come"
    assert s.main.basics[0].voc.tense == "future"
    assert s.sub_first and not s.comma


def test_frame_violation_detected():
    doc = parse_nlml(
        "<mood>statement</mood><complexity>simple</complexity>"
        "<subject><noun><type>perspronoun</type><word>I</word>"
        "<numb>sing</numb><pers>first</pers><case>nom</case></noun></subject>"
        "<voc><verb_type>verb_IO_DO</verb_type><tense>present</tense>"
        "<numb>sing</numb><pers>first</pers><verb_word>give</verb_word>"
        "<circum></circum><circum></circum>"
        "<indirect_object><noun><type>perspronoun</type><word>you</word>"
        "<numb>NUMB</numb><pers>secnd</pers><case>dat</case></noun>"
        "</indirect_object></voc>")
    with pytest.raises(NlomError, match="lacks direct_object"):
        from_nlml(doc)


def test_unknown_verb_type_rejected():
    doc = parse_nlml("<mood>statement</mood><complexity>simple</complexity>"
                     "<subject><noun><word>book</word><numb>sing</numb>"
                     "<type>noun</type></noun></subject>"
                     "<voc><verb_type>verb_zap</verb_type>"
                     "<verb_word>zap</verb_word></voc>")
    with pytest.raises(NlomError, match="verb_zap"):
        from_nlml(doc)


@pytest.mark.parametrize("text,complexity", [
    ("If it rains today, you will not go, and I will not come.", "compound_complex"),
    ("Today you come, he goes, and I wait.", "compound"),
    ("Neither you come, nor do I go.", "compound"),
    ("If you come I will go.", "complex"),
    ("I come today.", "simple"),
    ("Both you and I come today.", "simple"),
    ("I come and do my job today.", "simple"),
    ("This is the book I will give you.", "simple"),
    ("What I don't know is how to do this homework.", "simple"),
])
def test_classify_complexity(grammar, lexicon, text, complexity):
    assert classify_complexity(build(text, grammar, lexicon)) == complexity


@pytest.mark.parametrize("text,mood", [
    ("If it rains today, you will not go, and I will not come.", "statement"),
    ("What will you do if it rains today?", "question"),
    ("Please do your homework if it rains today.", "order"),
    ("What a rainy day!", "exclamation"),
])
def test_classify_mood(grammar, lexicon, text, mood):
    assert classify_mood(build(text, grammar, lexicon)) == mood


@pytest.mark.parametrize("text,voice", [
    ("I have given him a book.", "active"),
    ("I saw him do his job quickly.", "active"),
    ("A book has been given to him.", "passive"),
    ("He was seen to do his job quickly.", "passive"),
    ("It is said that he will come today.", "passive"),
    ("What a rainy day!", "not_applicable"),
])
def test_classify_voice(grammar, lexicon, text, voice):
    assert classify_voice(build(text, grammar, lexicon)) == voice


def test_realize_table_sentence(grammar, lexicon):
    s = build("I give you a book today.", grammar, lexicon)
    assert realize(s, lexicon) == "I give you a book today."


@pytest.mark.parametrize("text", [
    "I give you a book today.",
    "If it rains today, you will not go, and I will not come.",
    "Neither you come, nor do I go.",
    "What I don't know is how to do this homework.",
    "Please do your homework if it rains today.",
    "Which book will you give me?",
    "A book has been given to him.",
    "It is said that he will come today.",
    "I am coming today.",
])
def test_realize_roundtrips_tokens(grammar, lexicon, text):
    s = build(text, grammar, lexicon)
    assert tokenize(realize(s, lexicon)) == tokenize(text)


def test_realized_output_reparses_with_agreement(grammar, lexicon):
    """Realize never emits number/person disagreement: its output parses."""
    for text in ["I give you a book today.", "He goes.",
                 "Both you and I come today.", "He is good at physics."]:
        s = build(text, grammar, lexicon)
        assert parse_text(realize(s, lexicon), grammar, lexicon)


def test_unit_text_examples(grammar, lexicon):
    assert unit_text(Nounpart(kind="common", word="book",
                              prems=[("art", "a")])) == "a book"
    adj = Adj("good", complement=PrepPhrase(["at"],
              Nounpart(kind="common", word="physics")))
    assert unit_text(adj) == "good at physics"
    voc = build("I come today.", grammar, lexicon).basics[0].voc
    assert [unit_text(c) for c in voc.circ("postverb")] == []


def test_every_frame_builds_consistent_voc(grammar, lexicon):
    frames = {
        "This is the book I will give you.": VerbType.BE_PREDICATE,
        "He becomes a teacher.": VerbType.COPULA_PREDICATE,
        "I give you a book today.": VerbType.VERB_IO_DO,
        "I do my job.": VerbType.VERB_DO,
        "I come today.": VerbType.INTRANSITIVE,
        "I catch up with him.": VerbType.VERB_PARTICLE_PREP,
        "I look at the book.": VerbType.VERB_PREP,
        "I saw him do his job quickly.": VerbType.VERB_NP_BARE_INF,
        "I want him to go.": VerbType.VERB_NP_TO_INF,
        "I remember him coming.": VerbType.VERB_NP_GERUND,
        "I see him coming.": VerbType.VERB_NP_PRES_PART,
        "I get my job done.": VerbType.VERB_NP_PAST_PART,
        "I make him happy.": VerbType.VERB_NP_PREDICATE,
        "I want to go.": VerbType.VERB_INF,
        "I give up.": VerbType.VERB_PART,
    }
    assert len(frames) == 15
    for text, want in frames.items():
        s = build(text, grammar, lexicon)
        voc = s.basics[0].voc
        assert voc.verb_type == want, text
        # realizing back proves the frame slots are filled consistently
        assert tokenize(realize(s, lexicon)) == tokenize(text)
