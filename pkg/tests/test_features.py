"""Unification of feature bundles against hand-frozen oracle tables."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from csiec.features import ANY, FeatureBundle, VerbType, unify, unify_value

# Frozen pairwise tables, written out by hand: value x value -> result,
# None = unification failure.  These are the independent oracle; the
# implementation is checked against them exhaustively.

NUMB_TABLE = {
    ("sing", "sing"): "sing", ("sing", "plur"): None, ("sing", ANY): "sing",
    ("plur", "sing"): None, ("plur", "plur"): "plur", ("plur", ANY): "plur",
    (ANY, "sing"): "sing", (ANY, "plur"): "plur", (ANY, ANY): ANY,
}

PERS_TABLE = {
    ("first", "first"): "first", ("first", "secnd"): None,
    ("first", "third"): None, ("first", ANY): "first",
    ("secnd", "first"): None, ("secnd", "secnd"): "secnd",
    ("secnd", "third"): None, ("secnd", ANY): "secnd",
    ("third", "first"): None, ("third", "secnd"): None,
    ("third", "third"): "third", ("third", ANY): "third",
    (ANY, "first"): "first", (ANY, "secnd"): "secnd",
    (ANY, "third"): "third", (ANY, ANY): ANY,
}

CASE_TABLE = {
    ("nom", "nom"): "nom", ("nom", "dat"): None, ("nom", ANY): "nom",
    ("dat", "nom"): None, ("dat", "dat"): "dat", ("dat", ANY): "dat",
    (ANY, "nom"): "nom", (ANY, "dat"): "dat", (ANY, ANY): ANY,
}


def oracle_unify(field, a, b, table):
    got = unify(FeatureBundle(**{field: a}), FeatureBundle(**{field: b}))
    want = table[(a, b)]
    if want is None:
        assert got is None, f"{field}: {a} u {b} should fail"
    else:
        assert got is not None and getattr(got, field) == want


@pytest.mark.parametrize("a,b", list(NUMB_TABLE))
def test_numb_pairs_match_oracle(a, b):
    oracle_unify("numb", a, b, NUMB_TABLE)


@pytest.mark.parametrize("a,b", list(PERS_TABLE))
def test_pers_pairs_match_oracle(a, b):
    oracle_unify("pers", a, b, PERS_TABLE)


@pytest.mark.parametrize("a,b", list(CASE_TABLE))
def test_case_pairs_match_oracle(a, b):
    oracle_unify("case", a, b, CASE_TABLE)


def test_numb_triples_exhaustive():
    """All 27 triples over the number domain: unify is associative and
    agrees with chaining the frozen pairwise table."""
    values = ("sing", "plur", ANY)
    for a, b, c in itertools.product(values, repeat=3):
        ab = NUMB_TABLE[(a, b)]
        want = None if ab is None else NUMB_TABLE[(ab, c)]
        left = unify(FeatureBundle(numb=a), FeatureBundle(numb=b))
        got = None if left is None else unify(left, FeatureBundle(numb=c))
        if want is None:
            assert got is None
        else:
            assert got is not None and got.numb == want
        # associativity: a u (b u c) gives the same outcome
        bc = unify(FeatureBundle(numb=b), FeatureBundle(numb=c))
        got2 = None if bc is None else unify(FeatureBundle(numb=a), bc)
        assert (got is None) == (got2 is None)
        if got is not None:
            assert got.numb == got2.numb


def bundles():
    return st.builds(
        FeatureBundle,
        numb=st.sampled_from(["sing", "plur", ANY]),
        pers=st.sampled_from(["first", "secnd", "third", ANY]),
        case=st.sampled_from(["nom", "dat", ANY]),
        tense_form=st.sampled_from(["base", "s_form", "past", ANY]),
        verb_type=st.sampled_from([None, VerbType.VERB_DO, VerbType.INTRANSITIVE]),
        adv_type=st.sampled_from(["time", "manner", "none"]),
        partprep=st.sampled_from(["none none", "none to", ANY]),
    )


@given(bundles(), bundles())
def test_unify_commutative(a, b):
    x, y = unify(a, b), unify(b, a)
    assert x == y


@given(bundles())
def test_all_any_is_identity(a):
    assert unify(a, FeatureBundle()) == a


@given(bundles(), bundles(), bundles())
def test_unify_associative(a, b, c):
    ab = unify(a, b)
    left = None if ab is None else unify(ab, c)
    bc = unify(b, c)
    right = None if bc is None else unify(a, bc)
    assert left == right


def test_value_level_identity_and_mismatch():
    assert unify_value("sing", ANY) == "sing"
    assert unify_value(ANY, "sing") == "sing"
    assert unify_value("first", "secnd") is None


def test_verb_type_mismatch_fails():
    a = FeatureBundle(verb_type=VerbType.VERB_DO)
    b = FeatureBundle(verb_type=VerbType.INTRANSITIVE)
    assert unify(a, b) is None
    assert unify(a, FeatureBundle()).verb_type == VerbType.VERB_DO
