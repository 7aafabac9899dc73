"""Word inventory: pipe-delimited entries with categories and features.

File format, one entry per line::

    lemma|surface|CATEGORY|key=value,key=value,...

``#`` starts a comment line.  Absent feature keys default to ANY (or
"none" for adv_type).  Surfaces are lowercase-normalized on load; lemmas
keep their written form ("I" stays "I").
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .features import (
    ADV_TYPES,
    ANY,
    CASE_VALUES,
    FORM_VALUES,
    NUMB_VALUES,
    PERS_VALUES,
    FeatureBundle,
    VerbType,
)

CATEGORIES = (
    "NOUN",
    "VERBI",
    "PERSPRON",
    "ART",
    "ADVB",
    "ADJ",
    "PREP",
    "CONJ",
    "MODAL",
    "TIMEADV",
)

# Categories whose entries must carry a verb frame.
VERB_CATEGORIES = ("VERBI",)


class LexiconError(ValueError):
    """Malformed lexicon file; message names the line and field."""


@dataclass(frozen=True)
class LexEntry:
    lemma: str
    surface: str
    category: str
    features: FeatureBundle

    def __str__(self):
        return f"{self.lemma}|{self.surface}|{self.category}"


@dataclass
class Lexicon:
    """Immutable multimap from surface form to entries, in file order."""

    entries: list[LexEntry] = field(default_factory=list)

    def __post_init__(self):
        self._by_surface: dict[str, list[LexEntry]] = {}
        for e in self.entries:
            self._by_surface.setdefault(e.surface, []).append(e)

    def __len__(self):
        return len(self.entries)

    def lookup(self, token: str) -> list[LexEntry]:
        """All entries for the lowercase-normalized token; [] when unknown."""
        return list(self._by_surface.get(token.lower(), ()))

    def by_category(self, category: str) -> list[LexEntry]:
        return [e for e in self.entries if e.category == category]


def _parse_features(spec: str, category: str, lineno: int) -> FeatureBundle:
    kw = {}
    if spec:
        for item in spec.split(","):
            if "=" not in item:
                raise LexiconError(f"line {lineno}: feature '{item}' is not key=value")
            key, value = item.split("=", 1)
            key, value = key.strip(), value.strip()
            if key == "numb":
                _check(value, NUMB_VALUES, key, lineno)
                kw["numb"] = value
            elif key == "pers":
                _check(value, PERS_VALUES, key, lineno)
                kw["pers"] = value
            elif key == "case":
                _check(value, CASE_VALUES, key, lineno)
                kw["case"] = value
            elif key == "tense_form":
                _check(value, FORM_VALUES, key, lineno)
                kw["tense_form"] = value
            elif key == "verb_type":
                try:
                    kw["verb_type"] = VerbType.from_ident(value)
                except ValueError:
                    raise LexiconError(
                        f"line {lineno}: unknown verb_type '{value}'"
                    ) from None
            elif key == "adv_type":
                if value not in ADV_TYPES:
                    raise LexiconError(f"line {lineno}: unknown adv_type '{value}'")
                kw["adv_type"] = value
            elif key == "partprep":
                kw["partprep"] = value
            else:
                raise LexiconError(f"line {lineno}: unknown feature key '{key}'")
    bundle = FeatureBundle(**kw)
    if category in VERB_CATEGORIES and bundle.verb_type is None:
        raise LexiconError(f"line {lineno}: verb entry lacks verb_type")
    if category not in VERB_CATEGORIES and bundle.verb_type is not None:
        raise LexiconError(f"line {lineno}: non-verb entry carries verb_type")
    return bundle


def _check(value, domain, key, lineno):
    if value != ANY and value not in domain:
        raise LexiconError(f"line {lineno}: bad value '{value}' for {key}")


def load_lexicon(path) -> Lexicon:
    """Load a lexicon file; raises LexiconError naming the offending line."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("|")
            if len(parts) != 4:
                raise LexiconError(
                    f"line {lineno}: expected 4 pipe-delimited fields, got {len(parts)}"
                )
            lemma, surface, category, featspec = (p.strip() for p in parts)
            if not surface:
                raise LexiconError(f"line {lineno}: empty surface form")
            if category not in CATEGORIES:
                raise LexiconError(f"line {lineno}: unknown category '{category}'")
            features = _parse_features(featspec, category, lineno)
            entries.append(LexEntry(lemma, surface.lower(), category, features))
    return Lexicon(entries)


def save_lexicon(lex: Lexicon, path) -> None:
    """Write entries back out; load(save(lex)) preserves the entry multiset."""
    with open(path, "w", encoding="utf-8") as fh:
        for e in lex.entries:
            feats = []
            f = e.features
            if f.numb != ANY:
                feats.append(f"numb={f.numb}")
            if f.pers != ANY:
                feats.append(f"pers={f.pers}")
            if f.case != ANY:
                feats.append(f"case={f.case}")
            if f.tense_form != ANY:
                feats.append(f"tense_form={f.tense_form}")
            if f.verb_type is not None:
                feats.append(f"verb_type={f.verb_type.value}")
            if f.adv_type != "none":
                feats.append(f"adv_type={f.adv_type}")
            if f.partprep != ANY:
                feats.append(f"partprep={f.partprep}")
            fh.write(f"{e.lemma}|{e.surface}|{e.category}|{','.join(feats)}\n")


def lookup(lex: Lexicon, token: str) -> list[LexEntry]:
    return lex.lookup(token)
