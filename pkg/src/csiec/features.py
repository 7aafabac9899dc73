"""Morphosyntactic features and their unification.

Every lexical entry carries a feature bundle (number, person, case, verb
form, verb frame, adverb type, particle/preposition selection).  The value
``ANY`` unifies with everything; two distinct concrete values never unify.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

ANY = "ANY"

NUMB_VALUES = ("sing", "plur")
PERS_VALUES = ("first", "secnd", "third")
CASE_VALUES = ("nom", "dat")
FORM_VALUES = ("base", "s_form", "past", "past_participle", "present_participle")
ADV_TYPES = ("time", "place", "manner", "degree", "none")


class VerbType(enum.Enum):
    """The fifteen verb subcategorization frames.

    ``value`` is the stable serialized identifier (used in lexicon files and
    NLML output); ``affix`` is the short form printed in derivation traces.
    """

    BE_PREDICATE = ("be_predicate", "be")
    COPULA_PREDICATE = ("copula_predicate", "cop")
    VERB_IO_DO = ("verb_IO_DO", "ditr")
    VERB_DO = ("verb_DO", "tr")
    INTRANSITIVE = ("intransitive", "itr")
    VERB_PARTICLE_PREP = ("verb_particle_prep", "partprep")
    VERB_PREP = ("verb_prep", "prep")
    VERB_NP_BARE_INF = ("verb_NP_bare_inf", "npbareinf")
    VERB_NP_TO_INF = ("verb_NP_to_inf", "nptoinf")
    VERB_NP_GERUND = ("verb_NP_gerund", "npger")
    VERB_NP_PRES_PART = ("verb_NP_pres_part", "nppresp")
    VERB_NP_PAST_PART = ("verb_NP_past_part", "nppastp")
    VERB_NP_PREDICATE = ("verb_NP_predicate", "nppred")
    VERB_INF = ("verb_inf", "inf")
    VERB_PART = ("verb_part", "part")

    def __new__(cls, ident, affix):
        obj = object.__new__(cls)
        obj._value_ = ident
        obj.affix = affix
        return obj

    @classmethod
    def from_ident(cls, ident: str) -> "VerbType":
        return cls(ident)

    @classmethod
    def from_affix(cls, affix: str) -> "VerbType":
        return _VTYPE_BY_AFFIX[affix]


_VTYPE_BY_AFFIX = {vt.affix: vt for vt in VerbType}


@dataclass(frozen=True)
class FeatureBundle:
    """One entry's morphosyntactic features.

    ``partprep`` is the particle/preposition selection pair of a verb
    ("none to" for a ditransitive alternating with a to-phrase, "up with"
    for a particle verb); it rides along so the parser can thread it into
    the verb-group affixes.
    """

    numb: str = ANY
    pers: str = ANY
    case: str = ANY
    tense_form: str = ANY
    verb_type: VerbType | None = None
    adv_type: str = "none"
    partprep: str = ANY

    def replace(self, **kw) -> "FeatureBundle":
        return replace(self, **kw)


ALL_ANY = FeatureBundle()


def unify_value(a: str, b: str) -> str | None:
    """Unify two feature values; ``None`` signals failure."""
    if a == ANY:
        return b
    if b == ANY:
        return a
    if a == b:
        return a
    return None


def unify(a: FeatureBundle, b: FeatureBundle) -> FeatureBundle | None:
    """Field-wise unification of two bundles; ``None`` on any mismatch.

    Commutative and associative.  ``verb_type`` of ``None`` acts like ANY
    (non-verb entries are unconstrained); ``adv_type`` "none" likewise.
    """
    fields = {}
    for name in ("numb", "pers", "case", "tense_form", "partprep"):
        merged = unify_value(getattr(a, name), getattr(b, name))
        if merged is None:
            return None
        fields[name] = merged
    if a.verb_type is None:
        fields["verb_type"] = b.verb_type
    elif b.verb_type is None or a.verb_type == b.verb_type:
        fields["verb_type"] = a.verb_type
    else:
        return None
    if a.adv_type == "none":
        fields["adv_type"] = b.adv_type
    elif b.adv_type == "none" or a.adv_type == b.adv_type:
        fields["adv_type"] = a.adv_type
    else:
        return None
    return FeatureBundle(**fields)
