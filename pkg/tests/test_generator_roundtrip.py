"""Random-derivation oracle: generated sentences parse, their derivation
is in the forest, and the full pipeline reproduces the tokens."""

from csiec.generator import Generator, parse_skeleton
from csiec.nlml import parse_nlml, serialize, to_nlml
from csiec.nlom import from_nlml, realize
from csiec.parser import parse, tokenize


def lowered(tokens):
    return [t.lower() for t in tokens]


def test_generated_sentences_parse_and_contain_derivation(grammar, lexicon):
    gen = Generator(grammar, lexicon, seed=7)
    for _ in range(60):
        tokens, skeleton = gen.sentence()
        trees = parse(tokens, grammar, lexicon, max_parses=200)
        assert trees, f"no parse: {' '.join(tokens)}"
        skeletons = [parse_skeleton(t) for t in trees]
        assert skeleton in skeletons, f"derivation missing: {' '.join(tokens)}"


def test_pipeline_roundtrip_on_generated_corpus(grammar, lexicon):
    gen = Generator(grammar, lexicon, seed=11)
    for _ in range(120):
        tokens, _ = gen.sentence()
        tree = parse(tokens, grammar, lexicon)[0]
        doc = to_nlml(tree)
        assert parse_nlml(serialize(doc)) == doc
        back = realize(from_nlml(doc), lexicon)
        assert lowered(tokenize(back)) == lowered(tokens), \
            f"{' '.join(tokens)!r} -> {back!r}"


def test_generation_is_seed_deterministic(grammar, lexicon):
    a = Generator(grammar, lexicon, seed=3).corpus(20)
    b = Generator(grammar, lexicon, seed=3).corpus(20)
    assert a == b
