"""Communicational response: idiom formulas plus dynamically generated
replies built from the parsed sentence, the dialog context, and the active
persona.

Non-idiom replies are derived from the input's object model: wh-questions
invert the speaker perspective and front a question word, gloss statements
define a noun from the semantic net, acknowledgments echo the inverted
sentence.  Strategy choice is a deterministic argmax over persona weights
with anti-repetition against the recent history window.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from .features import ANY
from .lexicon import Lexicon
from .nldb import NEXT_TURN, DialogStore, UtteranceRecord
from .nlml import serialize, to_nlml
from .nlom import (
    Adv,
    BasicSentence,
    Circumstance,
    Clause,
    Nounpart,
    Sentence,
    SimpleSentence,
    from_nlml,
    realize,
)
from .parser import parse, tokenize, unknown_tokens
from .worldmodel import SemanticNet

CONTEXT_WINDOW = 10

WH_TARGETS = ("reason", "which_object", "time", "place", "manner")
WH_WORDS = {"reason": "why", "time": "when", "place": "where", "manner": "how"}


class CrError(ValueError):
    pass


# --------------------------------------------------------------------------
# personas

@dataclass(frozen=True)
class Persona:
    name: str
    curiosity: float
    narrativity: float
    quietness: float

    def __post_init__(self):
        if min(self.curiosity, self.narrativity, self.quietness) < 0:
            raise CrError(f"persona {self.name}: negative weight")


def load_personas(path) -> dict[str, Persona]:
    personas: dict[str, Persona] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("|")
            if len(parts) != 4:
                raise CrError(f"personas line {lineno}: expected 4 fields")
            name, c, n, q = parts
            p = Persona(name.strip(), float(c), float(n), float(q))
            if abs(p.curiosity + p.narrativity + p.quietness - 1.0) > 1e-9:
                raise CrError(f"personas line {lineno}: weights must sum to 1")
            personas[p.name] = p
    if not personas:
        raise CrError("empty persona file")
    return personas


# --------------------------------------------------------------------------
# idioms

@dataclass(frozen=True)
class IdiomPattern:
    pattern: tuple[str, ...]  # normalized tokens, "*" matches one token
    responses: tuple[str, ...]


def load_idioms(path) -> list[IdiomPattern]:
    idioms = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("|")
            if len(parts) < 2:
                raise CrError(f"idioms line {lineno}: pattern needs a reply")
            pattern = tuple(_normalize(parts[0]))
            if not pattern:
                raise CrError(f"idioms line {lineno}: empty pattern")
            idioms.append(IdiomPattern(pattern, tuple(p.strip() for p in parts[1:])))
    return idioms


def _normalize(text: str) -> list[str]:
    return [t.lower() for t in tokenize(text) if t not in ".?!,"]


def match_idiom(idioms: list[IdiomPattern], text: str,
                rotation: int = 0) -> str | None:
    """First whole-utterance pattern match wins; the reply index rotates
    with the caller-supplied counter so repeats pick the next reply."""
    tokens = _normalize(text)
    if not tokens:
        return None
    for idiom in idioms:
        if len(idiom.pattern) != len(tokens):
            continue
        if all(p == "*" or p == t for p, t in zip(idiom.pattern, tokens)):
            return idiom.responses[rotation % len(idiom.responses)]
    return None


# --------------------------------------------------------------------------
# person inversion

SUBJECT_MAP = {"i": "you", "you": "I", "we": "you"}
OBJECT_MAP = {"me": "you", "you": "me", "us": "you"}
PREM_MAP = {"my": "your", "your": "my"}
POSS_MAP = {"mine": "yours", "yours": "mine"}

PRONOUN_FEATURES = {
    ("I", "nom"): ("sing", "first", "nom"),
    ("you", "nom"): (ANY, "secnd", "nom"),
    ("you", "dat"): (ANY, "secnd", "dat"),
    ("me", "dat"): ("sing", "first", "dat"),
}


def _swap_pronoun(np: Nounpart, mapping: dict[str, str], case: str):
    if np.kind == "pronoun":
        key = np.word.lower()
        if key in POSS_MAP:
            np.word = POSS_MAP[key]
        elif key in mapping:
            np.word = mapping[key]
            numb, pers, kase = PRONOUN_FEATURES.get(
                (np.word, case), (np.numb, np.pers, np.case))
            np.numb, np.pers, np.case = numb, pers, kase
    for i, (ptype, word) in enumerate(np.prems):
        if word.lower() in PREM_MAP:
            np.prems[i] = (ptype, PREM_MAP[word.lower()])
    for member in np.members:
        _swap_pronoun(member, mapping, case)
    if np.relative is not None:
        _invert_clause(np.relative)


def _invert_voc(voc):
    if voc is None:
        return
    for np in (voc.indirect_object, voc.direct_object):
        if np is not None:
            _swap_pronoun(np, OBJECT_MAP, "dat")
    if voc.prep_object is not None and voc.prep_object.obj is not None:
        _swap_pronoun(voc.prep_object.obj, OBJECT_MAP, "dat")
    if voc.predicate is not None:
        for unit in voc.predicate.units:
            if isinstance(unit, Nounpart):
                _swap_pronoun(unit, OBJECT_MAP, "dat")
    if voc.clause_complement is not None:
        _invert_clause(voc.clause_complement)
    for circ in voc.circumstances:
        unit = circ.unit
        if hasattr(unit, "obj") and unit.obj is not None:
            _swap_pronoun(unit.obj, OBJECT_MAP, "dat")


def _invert_clause(cl: Clause):
    if isinstance(cl.subject, Nounpart):
        _swap_pronoun(cl.subject, SUBJECT_MAP, "nom")
    elif isinstance(cl.subject, Clause):
        _invert_clause(cl.subject)
    for voc in cl.vocs:
        _invert_voc(voc)
        _refresh_agreement(cl.subject, voc)


def _refresh_agreement(subject, voc):
    if voc is None or not isinstance(subject, Nounpart):
        return
    voc.numb, voc.pers = subject.numb, subject.pers


def invert_person(s: Sentence) -> Sentence:
    """Swap speaker perspective (I<->you and friends) throughout; verb
    agreement is re-derived from the new subjects.  An involution."""
    out = copy.deepcopy(s)
    for basic in out.basic_sentences():
        if isinstance(basic.subject, Nounpart):
            _swap_pronoun(basic.subject, SUBJECT_MAP, "nom")
        elif isinstance(basic.subject, Clause):
            _invert_clause(basic.subject)
        _invert_voc(basic.voc)
        _refresh_agreement(basic.subject, basic.voc)
    return out


# --------------------------------------------------------------------------
# response planning

@dataclass(frozen=True)
class ResponsePlan:
    strategy: str  # IDIOM | WH_QUESTION | GLOSS_STATEMENT | ACK | CLARIFY
    wh_target: str | None = None
    gloss_lemma: str | None = None
    clarify_word: str | None = None

    def __post_init__(self):
        if self.strategy == "WH_QUESTION" and self.wh_target not in WH_TARGETS:
            raise CrError(f"WH_QUESTION needs a target, got {self.wh_target!r}")
        if self.strategy == "GLOSS_STATEMENT" and not self.gloss_lemma:
            raise CrError("GLOSS_STATEMENT needs a lemma")


def _first_basic(s: Sentence) -> BasicSentence:
    basics = s.basic_sentences()
    if not basics:
        raise CrError("sentence without basic sentences")
    return basics[0]


def _nouns_in(s: Sentence) -> list[str]:
    out = []
    for np in s.all_nounparts():
        head = np.head_noun()
        if head and head not in out:
            out.append(head)
    return out


def _question_base(s: Sentence) -> SimpleSentence | None:
    """The invertible simple core a wh question is built from."""
    basic = _first_basic(s)
    if basic.voc is None or basic.subject is None:
        return None
    if basic.voc.voice == "passive":
        return None
    core = SimpleSentence(mood="question", basics=[basic])
    inverted = invert_person(core)
    voc = inverted.basics[0].voc
    voc.circumstances = [c for c in voc.circumstances]
    return inverted


def question_transform(s: Sentence, wh_target: str) -> SimpleSentence:
    """Person-inverted wh question about the sentence; circumstances are
    dropped to keep the question minimal."""
    inverted = _question_base(s)
    if inverted is None:
        raise CrError("sentence has no questionable core")
    voc = inverted.basics[0].voc
    voc.circumstances = []
    voc.negation = None
    if wh_target == "which_object":
        if voc.direct_object is None or voc.direct_object.kind != "common":
            raise CrError("which_object needs a common direct object")
        voc.direct_object.prems = [("art", "which")]
        voc.tense = "future"
    else:
        word = WH_WORDS[wh_target]
        voc.circumstances.append(
            Circumstance(Adv(word, wh_target), slot="trailing"))
    return inverted


def applicable_wh_targets(s: Sentence) -> list[str]:
    """Targets the sentence supports, in rotation order: reason always,
    which_object when a common direct object exists, and each adjunct
    target when that circumstance slot is still open."""
    basic = _first_basic(s)
    voc = basic.voc
    if voc is None or basic.subject is None or voc.voice == "passive":
        return []
    targets = ["reason"]
    if voc.direct_object is not None and voc.direct_object.kind == "common":
        targets.append("which_object")
    present = {c.adv_type for c in voc.circumstances}
    for target in ("time", "place", "manner"):
        if target not in present:
            targets.append(target)
    return targets


def render_gloss(lemma: str, net: SemanticNet) -> str | None:
    text = net.gloss(lemma, "noun")
    if text is None:
        return None
    article = "An" if lemma[0].lower() in "aeiou" else "A"
    return f"{article} {lemma} is {text}."


def _glossable_nouns(s: Sentence, net: SemanticNet,
                     window_texts: list[str]) -> list[str]:
    out = []
    for lemma in _nouns_in(s):
        statement = render_gloss(lemma, net)
        if statement is not None and statement not in window_texts:
            out.append(lemma)
    return out


def plan_response(s: Sentence | None, context: list[UtteranceRecord],
                  persona: Persona, net: SemanticNet,
                  turn_index: int = 0,
                  unknown_word: str | None = None) -> ResponsePlan:
    """Deterministic strategy choice.

    Parse failures clarify.  Otherwise WH_QUESTION scores the persona's
    curiosity, GLOSS_STATEMENT its narrativity (zeroed when every noun in
    the sentence was already glossed within the window), ACK its quietness;
    ties break in that order.  Replies already given in the window are
    rotated past rather than repeated."""
    if s is None:
        return ResponsePlan("CLARIFY", clarify_word=unknown_word)
    window_texts = [r.raw for r in context if r.speaker == "system"]

    candidates = [(t, reply) for t in applicable_wh_targets(s)
                  if (reply := _safe_reply(s, t)) is not None]
    fresh = [t for t, reply in candidates if reply not in window_texts]
    glossable = _glossable_nouns(s, net, window_texts)

    scores = {
        "WH_QUESTION": persona.curiosity if candidates else 0.0,
        "GLOSS_STATEMENT": persona.narrativity if glossable else 0.0,
        "ACK": persona.quietness,
    }
    order = ("WH_QUESTION", "GLOSS_STATEMENT", "ACK")
    strategy = max(order, key=lambda name: (scores[name], -order.index(name)))
    if strategy == "WH_QUESTION":
        if fresh:
            target = fresh[0]
        else:
            target = candidates[turn_index % len(candidates)][0]
        return ResponsePlan("WH_QUESTION", wh_target=target)
    if strategy == "GLOSS_STATEMENT":
        return ResponsePlan("GLOSS_STATEMENT", gloss_lemma=glossable[0])
    return ResponsePlan("ACK")


def _safe_reply(s: Sentence, target: str) -> str | None:
    try:
        return realize(question_transform(s, target))
    except (CrError, ValueError):
        return None


def render_response(plan: ResponsePlan, s: Sentence | None,
                    net: SemanticNet) -> str:
    if plan.strategy == "WH_QUESTION":
        return realize(question_transform(s, plan.wh_target))
    if plan.strategy == "GLOSS_STATEMENT":
        text = render_gloss(plan.gloss_lemma, net)
        if text is None:
            raise CrError(f"no gloss for {plan.gloss_lemma!r}")
        return text
    if plan.strategy == "ACK":
        try:
            echo = realize(invert_person(s))
        except ValueError:
            return "I see."
        return f"I see. {echo}"
    if plan.strategy == "CLARIFY":
        if plan.clarify_word:
            return (f"I do not know the word \"{plan.clarify_word}\". "
                    "Could you say it in another way?")
        return "I do not understand. Could you say it in another way?"
    raise CrError(f"cannot render {plan.strategy}")


# --------------------------------------------------------------------------
# the full pipeline

@dataclass
class CrDeps:
    grammar: object
    lexicon: Lexicon
    net: SemanticNet
    idioms: list[IdiomPattern]
    store: DialogStore


def respond(text: str, session_id: str, persona: Persona, deps: CrDeps) -> str:
    """One dialog turn: idiom check, parse, markup, object model, plan,
    render; user and system turns are each persisted exactly once."""
    user_turns = sum(1 for r in deps.store.history(session_id, 10 ** 6)
                     if r.speaker == "user")

    reply = match_idiom(deps.idioms, text, rotation=user_turns)
    nlml_text = None
    plan = None
    sentence = None
    if reply is None:
        tokens = tokenize(text)
        unknown = unknown_tokens(tokens, deps.grammar, deps.lexicon)
        trees = [] if unknown else parse(tokens, deps.grammar, deps.lexicon)
        if trees:
            doc = to_nlml(trees[0])
            nlml_text = serialize(doc)
            sentence = from_nlml(doc)

    deps.store.store_turn(UtteranceRecord(session_id, NEXT_TURN, "user",
                                          text, nlml_text))
    if reply is None:
        context = deps.store.history(session_id, CONTEXT_WINDOW)
        plan = plan_response(sentence, context, persona, deps.net,
                             turn_index=user_turns,
                             unknown_word=(unknown[0] if sentence is None and unknown
                                           else None))
        reply = render_response(plan, sentence, deps.net)
    deps.store.store_turn(UtteranceRecord(session_id, NEXT_TURN, "system",
                                          reply, None))
    return reply
