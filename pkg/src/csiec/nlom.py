"""The grammatical object model: typed sentence objects built from NLML,
classification by complexity/mood/voice, and surface realization.

Sentence variants (compound-complex, compound, complex, simple) share the
``Sentence`` base; clause types are restricted simple-sentence shapes.
Every unit answers ``text()`` (the shared get_text contract).  ``realize``
reproduces the exact token sequence the markup encodes: connective commas
are stored as connectives, negation keeps its surface ("don't" vs
"will not"), and circumstances stay in their recorded slots and order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .features import ANY, VerbType
from .lexicon import Lexicon
from .nlml import NlmlDoc, NlmlNode, WH_ADV


class NlomError(ValueError):
    """Schema-invalid NLML or a verb-frame violation."""


# --------------------------------------------------------------------------
# sentence units

@dataclass
class Adv:
    word: str
    adv_type: str = "none"

    def tokens(self) -> list[str]:
        return [self.word]

    def text(self) -> str:
        return self.word


@dataclass
class Adj:
    word: str
    degree: Adv | None = None
    complement: "PrepPhrase | None" = None

    def tokens(self) -> list[str]:
        out = []
        if self.degree:
            out.append(self.degree.word)
        out.append(self.word)
        if self.complement:
            out.extend(self.complement.tokens())
        return out

    def text(self) -> str:
        return " ".join(self.tokens())


@dataclass
class Nounpart:
    kind: str = "common"  # common | pronoun | wh | coordination
    word: str = ""
    numb: str = ANY
    pers: str = "third"
    case: str = ANY
    prems: list[tuple[str, str]] = field(default_factory=list)  # (type, word)
    relative: "Clause | None" = None
    members: list["Nounpart"] = field(default_factory=list)
    coordinators: list[str] = field(default_factory=list)  # e.g. ["both", "and"]

    def tokens(self, lexicon=None) -> list[str]:
        if self.kind == "coordination":
            out = []
            pre = [c for c in self.coordinators if c == "both"]
            mids = [c for c in self.coordinators if c != "both"]
            out.extend(pre)
            for i, m in enumerate(self.members):
                if i:
                    out.append(mids[i - 1] if i - 1 < len(mids) else "and")
                out.extend(m.tokens(lexicon))
            return out
        out = [w for _, w in self.prems]
        word = self.word
        if self.kind == "common" and self.numb == "plur":
            word = _noun_surface(self.word, "plur", lexicon)
        out.append(word)
        if self.relative is not None:
            out.extend(self.relative.tokens(lexicon))
        return out

    def text(self) -> str:
        return " ".join(self.tokens())

    def head_noun(self) -> str | None:
        """Lemma of the head common noun, if any (used by gloss replies)."""
        if self.kind == "common":
            return self.word
        if self.kind == "coordination":
            for m in self.members:
                head = m.head_noun()
                if head:
                    return head
        return None


@dataclass
class PrepPhrase:
    words: list[str]  # particle and/or preposition tokens
    obj: Nounpart | None = None

    def tokens(self, lexicon=None) -> list[str]:
        out = list(self.words)
        if self.obj is not None:
            out.extend(self.obj.tokens(lexicon))
        return out

    def text(self) -> str:
        return " ".join(self.tokens())


@dataclass
class Circumstance:
    unit: Adv | PrepPhrase
    slot: str = "trailing"  # initial | postverb | trailing

    def tokens(self, lexicon=None) -> list[str]:
        return (self.unit.tokens(lexicon) if isinstance(self.unit, PrepPhrase)
                else [self.unit.word])

    def text(self) -> str:
        return " ".join(self.tokens())

    @property
    def adv_type(self) -> str:
        return self.unit.adv_type if isinstance(self.unit, Adv) else "none"


@dataclass
class Predicate:
    units: list = field(default_factory=list)  # Nounpart/Adj/Adv/PrepPhrase/Clause

    def tokens(self, lexicon=None) -> list[str]:
        out = []
        for u in self.units:
            try:
                out.extend(u.tokens(lexicon))
            except TypeError:
                out.extend(u.tokens())
        return out

    def text(self) -> str:
        return " ".join(self.tokens())


# --------------------------------------------------------------------------
# clauses and VOC parts

CLAUSE_KINDS = (
    "relative", "free_relative", "that", "subordinate", "inverted",
    "bare_infinitive", "to_infinitive", "participle", "gerund",
    "past_participle", "wh_infinitive",
)


@dataclass
class Clause:
    kind: str
    linker: str | None = None
    subject: "Nounpart | Clause | None" = None
    vocs: list["VocPart"] = field(default_factory=list)
    connectives: list[str] = field(default_factory=list)

    @property
    def voc(self) -> "VocPart | None":
        return self.vocs[0] if self.vocs else None

    def tokens(self, lexicon=None) -> list[str]:
        out = []
        if self.kind == "wh_infinitive":
            out.append(self.linker or "how")
            out.append("to")
        elif self.kind == "to_infinitive":
            out.append("to")
        elif self.linker:
            out.append(self.linker)
        if self.kind == "inverted" and self.voc is not None:
            out.append(_aux_token(self.voc))
        if self.voc is not None:
            for c in self.voc.circ("initial"):
                out.extend(c.tokens(lexicon))
        if self.subject is not None:
            out.extend(self.subject.tokens(lexicon))
        nonfinite = {"inverted": "base", "bare_infinitive": "base",
                     "to_infinitive": "base", "wh_infinitive": "base",
                     "participle": "present_participle",
                     "gerund": "present_participle",
                     "past_participle": "past_participle"}
        for i, voc in enumerate(self.vocs):
            if i:
                out.append(self.connectives[i - 1] if i - 1 < len(self.connectives)
                           else "and")
            out.extend(voc_tokens(voc, form=nonfinite.get(self.kind),
                                  lexicon=lexicon))
        return out

    def text(self) -> str:
        return " ".join(self.tokens())


@dataclass
class VocPart:
    verb_type: VerbType
    verb_word: str
    tense: str | None = "present"
    numb: str = ANY
    pers: str = ANY
    modal: str | None = None
    negation: str | None = None  # surface: "not", "don't", ...
    voice: str = "active"
    indirect_object: Nounpart | None = None
    direct_object: Nounpart | None = None
    prep_object: PrepPhrase | None = None
    particle: str | None = None
    predicate: Predicate | None = None
    clause_complement: Clause | None = None
    circumstances: list[Circumstance] = field(default_factory=list)
    gapped: bool = False

    def circ(self, slot: str) -> list[Circumstance]:
        return [c for c in self.circumstances if c.slot == slot]

    def text(self) -> str:
        return " ".join(voc_tokens(self))


@dataclass
class BasicSentence:
    subject: Nounpart | Clause | None
    voc: VocPart | None


# --------------------------------------------------------------------------
# sentence variants

@dataclass
class Sentence:
    mood: str = "statement"

    @property
    def voice(self) -> str:
        if self.mood == "exclamation":
            return "not_applicable"
        for voc in self.main_vocs():
            if voc is not None and voc.voice == "passive":
                return "passive"
        return "active"

    def main_vocs(self) -> list[VocPart | None]:
        return []

    def all_nounparts(self) -> list[Nounpart]:
        found: list[Nounpart] = []

        def from_np(np):
            if np is None:
                return
            if isinstance(np, Nounpart):
                found.append(np)
                for m in np.members:
                    found.append(m)
                if np.relative is not None:
                    from_clause(np.relative)
            elif isinstance(np, Clause):
                from_clause(np)

        def from_voc(voc):
            if voc is None:
                return
            from_np(voc.indirect_object)
            from_np(voc.direct_object)
            if voc.prep_object and voc.prep_object.obj:
                from_np(voc.prep_object.obj)
            if voc.predicate:
                for u in voc.predicate.units:
                    if isinstance(u, Nounpart):
                        from_np(u)
            if voc.clause_complement:
                from_clause(voc.clause_complement)
            for c in voc.circumstances:
                if isinstance(c.unit, PrepPhrase) and c.unit.obj:
                    from_np(c.unit.obj)

        def from_clause(cl):
            from_np(cl.subject)
            from_voc(cl.voc)

        for b in self.basic_sentences():
            from_np(b.subject)
            from_voc(b.voc)
        return found

    def basic_sentences(self) -> list[BasicSentence]:
        return []


@dataclass
class SimpleSentence(Sentence):
    basics: list[BasicSentence] = field(default_factory=list)
    connectives: list[str] = field(default_factory=list)
    inverted: bool = False
    please: bool = False
    excl_what: bool = False

    def main_vocs(self):
        return [b.voc for b in self.basics]

    def basic_sentences(self):
        return list(self.basics)


@dataclass
class ComplexSentence(Sentence):
    subordinator: str = "if"
    subordinate: SimpleSentence = None
    main: SimpleSentence = None
    sub_first: bool = True
    comma: bool = False

    def main_vocs(self):
        return self.main.main_vocs()

    def basic_sentences(self):
        return self.subordinate.basic_sentences() + self.main.basic_sentences()


@dataclass
class CompoundSentence(Sentence):
    members: list[SimpleSentence] = field(default_factory=list)
    connectives: list[tuple[str, ...]] = field(default_factory=list)
    pre_conj: str | None = None

    def main_vocs(self):
        return [v for m in self.members for v in m.main_vocs()]

    def basic_sentences(self):
        return [b for m in self.members for b in m.basic_sentences()]


@dataclass
class CompoundComplexSentence(Sentence):
    subordinator: str = "if"
    subordinate: SimpleSentence = None
    members: list[SimpleSentence] = field(default_factory=list)
    connectives: list[tuple[str, ...]] = field(default_factory=list)

    def main_vocs(self):
        return [v for m in self.members for v in m.main_vocs()]

    def basic_sentences(self):
        return self.subordinate.basic_sentences() + [
            b for m in self.members for b in m.basic_sentences()]


def classify_complexity(s: Sentence) -> str:
    if isinstance(s, CompoundComplexSentence):
        return "compound_complex"
    if isinstance(s, CompoundSentence):
        return "compound"
    if isinstance(s, ComplexSentence):
        return "complex"
    return "simple"


def classify_mood(s: Sentence) -> str:
    return s.mood


def classify_voice(s: Sentence) -> str:
    return s.voice


def unit_text(u) -> str:
    return u.text()


# --------------------------------------------------------------------------
# NLML -> objects

FRAME_DEMANDS: dict[VerbType, tuple[str, ...]] = {
    VerbType.BE_PREDICATE: ("predicate",),
    VerbType.COPULA_PREDICATE: ("predicate",),
    VerbType.VERB_IO_DO: ("indirect_object", "direct_object"),
    VerbType.VERB_DO: ("direct_object",),
    VerbType.INTRANSITIVE: (),
    VerbType.VERB_PARTICLE_PREP: ("particle", "prep_object"),
    VerbType.VERB_PREP: ("prep_object",),
    VerbType.VERB_NP_BARE_INF: ("direct_object", "clause_complement"),
    VerbType.VERB_NP_TO_INF: ("direct_object", "clause_complement"),
    VerbType.VERB_NP_GERUND: ("direct_object", "clause_complement"),
    VerbType.VERB_NP_PRES_PART: ("direct_object", "clause_complement"),
    VerbType.VERB_NP_PAST_PART: ("direct_object", "clause_complement"),
    VerbType.VERB_NP_PREDICATE: ("direct_object", "predicate"),
    VerbType.VERB_INF: ("clause_complement",),
    VerbType.VERB_PART: ("particle",),
}


def _norm_affix(text: str) -> str:
    return ANY if text in ("NUMB", "PERS", "CASE", "ANY", "") else text


def _nounpart_from(nodes: list[NlmlNode]) -> Nounpart:
    """One noun part from a prem*/noun/clause element run."""
    prems: list[tuple[str, str]] = []
    np: Nounpart | None = None
    for node in nodes:
        if node.tag == "prem":
            prems.append((node.find("type").text if node.find("type") else "art",
                          node.find("word").text))
        elif node.tag == "noun":
            kind_node = node.find("type")
            kind = kind_node.text if kind_node else "noun"
            word = node.find("word").text
            numb = _norm_affix(node.find("numb").text) if node.find("numb") else ANY
            if kind == "perspronoun":
                pers = _norm_affix(node.find("pers").text) if node.find("pers") else "third"
                case = _norm_affix(node.find("case").text) if node.find("case") else ANY
                np = Nounpart(kind="pronoun", word=word, numb=numb, pers=pers, case=case)
            elif kind == "whpronoun":
                np = Nounpart(kind="wh", word=word, numb=numb)
            else:
                np = Nounpart(kind="common", word=word, numb=numb, prems=prems)
                prems = []
        elif node.tag == "clause":
            if np is None:
                raise NlomError("relative clause with no head noun")
            np.relative = _clause_from(node)
        else:
            raise NlomError(f"unexpected <{node.tag}> in noun part")
    if np is None:
        raise NlomError("noun part without a <noun> element")
    return np


def _noun_phrase_from(nodes: list[NlmlNode]) -> Nounpart:
    """A full (possibly coordinated) noun phrase from sibling elements."""
    if not any(n.tag == "conj" for n in nodes):
        return _nounpart_from(nodes)
    members: list[Nounpart] = []
    coordinators: list[str] = []
    run: list[NlmlNode] = []
    for node in nodes:
        if node.tag == "conj":
            if run:
                members.append(_nounpart_from(run))
                run = []
            coordinators.append(node.text)
        else:
            run.append(node)
    if run:
        members.append(_nounpart_from(run))
    return Nounpart(kind="coordination", numb="plur", pers=ANY,
                    members=members, coordinators=coordinators)


def _circ_units_from(circum: NlmlNode, slot: str) -> list[Circumstance]:
    out = []
    for node in circum.children:
        if node.tag == "adv":
            out.append(Circumstance(Adv(node.find("word").text,
                                        node.find("type").text), slot))
        elif node.tag == "object":
            words = [c.text for c in node.children if c.tag == "word"]
            rest = [c for c in node.children if c.tag != "word"]
            obj = _noun_phrase_from(rest) if rest else None
            out.append(Circumstance(PrepPhrase(words, obj), slot))
        else:
            raise NlomError(f"unexpected <{node.tag}> in circumstance")
    return out


def _predicate_from(node: NlmlNode) -> Predicate:
    units = []
    pending_degree: Adv | None = None
    noun_run: list[NlmlNode] = []

    def flush_nouns():
        nonlocal noun_run
        if noun_run:
            units.append(_noun_phrase_from(noun_run))
            noun_run = []

    for i, child in enumerate(node.children):
        noun_follows = any(later.tag == "noun" for later in node.children[i + 1:])
        if child.tag == "adv":
            pending_degree = Adv(child.find("word").text, child.find("type").text)
        elif (child.tag == "prem" and not noun_follows
              and child.find("type") and child.find("type").text == "adj"):
            # a predicate adjective, not a premodifier of a following noun
            flush_nouns()
            units.append(Adj(child.find("word").text, degree=pending_degree))
            pending_degree = None
        elif child.tag in ("prem", "noun"):
            noun_run.append(child)
        elif child.tag == "object":
            flush_nouns()
            words = [c.text for c in child.children if c.tag == "word"]
            rest = [c for c in child.children if c.tag != "word"]
            pp = PrepPhrase(words, _noun_phrase_from(rest) if rest else None)
            if units and isinstance(units[-1], Adj) and units[-1].complement is None:
                units[-1].complement = pp
            else:
                units.append(pp)
        elif child.tag == "clause":
            flush_nouns()
            units.append(_clause_from(child))
        elif child.tag == "conj":
            noun_run.append(child)
        else:
            raise NlomError(f"unexpected <{child.tag}> in predicate")
    flush_nouns()
    return Predicate(units)


def _voc_from(node: NlmlNode, gapped: bool = False) -> VocPart:
    vt_node = node.find("verb_type")
    if vt_node is None:
        raise NlomError("voc without verb_type")
    try:
        vtype = VerbType.from_ident(vt_node.text)
    except ValueError:
        raise NlomError(f"unknown verb_type '{vt_node.text}'") from None
    voc = VocPart(verb_type=vtype, verb_word="", gapped=gapped)
    voc.tense = node.find("tense").text if node.find("tense") else None
    voc.numb = _norm_affix(node.find("numb").text) if node.find("numb") else ANY
    voc.pers = _norm_affix(node.find("pers").text) if node.find("pers") else ANY
    if node.find("voice"):
        voc.voice = node.find("voice").text
    circ_seen = 0
    for child in node.children:
        if child.tag in ("verb_type", "tense", "numb", "pers", "voice"):
            continue
        if child.tag == "adv":
            voc.negation = child.find("word").text
        elif child.tag == "verb_word":
            voc.verb_word = child.text
        elif child.tag == "circum":
            slot = ("initial", "postverb")[circ_seen] if circ_seen < 2 else "trailing"
            circ_seen += 1
            voc.circumstances.extend(_circ_units_from(child, slot))
        elif child.tag == "indirect_object":
            voc.indirect_object = _noun_phrase_from(child.children)
        elif child.tag == "direct_object":
            voc.direct_object = _noun_phrase_from(child.children)
        elif child.tag == "object":
            words = [c.text for c in child.children if c.tag == "word"]
            rest = [c for c in child.children if c.tag != "word"]
            pp = PrepPhrase(words, _noun_phrase_from(rest) if rest else None)
            if vtype == VerbType.VERB_PART:
                voc.particle = words[0]
            elif vtype == VerbType.VERB_PARTICLE_PREP and len(words) >= 2:
                voc.particle = words[0]
                voc.prep_object = PrepPhrase(words[1:], pp.obj)
            else:
                voc.prep_object = pp
        elif child.tag == "predicate":
            voc.predicate = _predicate_from(child)
        elif child.tag == "clause":
            voc.clause_complement = _clause_from(child)
        else:
            raise NlomError(f"unexpected <{child.tag}> in voc")
    if not voc.verb_word:
        raise NlomError("voc without verb_word")
    _check_frame(voc)
    return voc


def _check_frame(voc: VocPart):
    """Object/predicate/complement slots must match the verb frame."""
    if voc.gapped or voc.voice == "passive":
        return
    for slot in FRAME_DEMANDS[voc.verb_type]:
        if getattr(voc, slot) is None:
            raise NlomError(
                f"frame violation: {voc.verb_type.value} '{voc.verb_word}' "
                f"lacks {slot}")
    if voc.verb_type == VerbType.INTRANSITIVE:
        for slot in ("indirect_object", "direct_object", "predicate"):
            if getattr(voc, slot) is not None:
                raise NlomError(f"frame violation: intransitive with {slot}")


def _subject_from(children: list[NlmlNode]):
    if len(children) == 1 and children[0].tag == "clause":
        return _clause_from(children[0])
    return _noun_phrase_from(children)


def _clause_from(node: NlmlNode) -> Clause:
    kind_node = node.find("type")
    subject_node = node.find("subject")
    voc_node = node.find("voc")
    if kind_node is not None and kind_node.text in (
            "bare_infinitive", "to_infinitive", "participle", "gerund",
            "past_participle", "wh_infinitive"):
        conj = node.find("conj")
        voc = _voc_from(voc_node, gapped=True) if voc_node else None
        return Clause(kind_node.text, linker=conj.text if conj else None,
                      vocs=[voc] if voc else [])
    if kind_node is not None and kind_node.text == "inverted":
        return Clause("inverted", subject=_subject_from(subject_node.children),
                      vocs=[_voc_from(voc_node, gapped=True)])
    linker = node.children[0].text if node.children and node.children[0].tag == "conj" else None
    gapped = linker in (None, "that", "what")
    if linker in ("if", "when", "because"):
        kind, gapped = "subordinate", False
    elif linker == "what":
        kind = "free_relative"
    elif linker == "that":
        # a that-clause complement has a full (ungapped) inner sentence;
        # a that-relative is gapped.  Both carry subject+voc, so decide by
        # trying the strict frame check first.
        kind = "that"
    else:
        kind = "relative"
    subject = _subject_from(subject_node.children) if subject_node else None
    vocs: list[VocPart] = []
    connectives: list[str] = []
    start = 1 if linker else 0
    for child in node.children[start:]:
        if child.tag == "voc":
            vocs.append(_voc_from(child, gapped=gapped))
        elif child.tag == "conj":
            connectives.append(child.text)
    if kind == "that" and vocs and not _voc_is_complete(vocs[0]):
        kind = "relative"
    return Clause(kind, linker=linker, subject=subject, vocs=vocs,
                  connectives=connectives)


def _voc_is_complete(voc: VocPart) -> bool:
    if voc.voice == "passive":
        return True
    return all(getattr(voc, slot) is not None
               for slot in FRAME_DEMANDS[voc.verb_type])


def _simple_from_elems(elems: list[NlmlNode], mood: str) -> SimpleSentence:
    """subject/voc/conj run -> one SimpleSentence (shared subject across
    coordinated VOCs)."""
    subject: Nounpart | Clause | None = None
    vocs: list[VocPart] = []
    connectives: list[str] = []
    inverted = False
    i = 0
    while i < len(elems):
        node = elems[i]
        if node.tag == "type" and node.text == "inverted":
            inverted = True
        elif node.tag == "subject":
            subject = _subject_from(node.children)
        elif node.tag == "voc":
            vocs.append(_voc_from(node, gapped=(mood == "question")))
        elif node.tag == "conj":
            connectives.append(node.text)
        else:
            raise NlomError(f"unexpected <{node.tag}> in clause")
        i += 1
    if not vocs:
        raise NlomError("clause without voc")
    basics = [BasicSentence(subject, voc) for voc in vocs]
    return SimpleSentence(mood=mood, basics=basics, connectives=connectives,
                          inverted=inverted)


def _that_clause_to_simple(cl: Clause, mood: str = "statement") -> SimpleSentence:
    basics = [BasicSentence(cl.subject, voc) for voc in cl.vocs]
    return SimpleSentence(mood=mood, basics=basics,
                          connectives=list(cl.connectives),
                          inverted=cl.kind == "inverted")


def from_nlml(doc: NlmlDoc) -> Sentence:
    """Build the full sentence object; every element is consumed."""
    if not doc.root or doc.root[0].tag != "mood":
        raise NlomError("first NLML element must be <mood>")
    mood = doc.root[0].text
    if mood not in ("statement", "question", "order", "exclamation"):
        raise NlomError(f"unknown mood '{mood}'")
    rest = doc.root[1:]
    complexity = "simple"
    if rest and rest[0].tag == "complexity":
        complexity = rest[0].text
        rest = rest[1:]

    if mood == "exclamation":
        excl_what = bool(rest and rest[0].tag == "word")
        if excl_what:
            rest = rest[1:]
        subject = _noun_phrase_from(rest[0].children)
        return SimpleSentence(mood=mood, basics=[BasicSentence(subject, None)],
                              excl_what=excl_what)

    if mood == "order":
        please = bool(rest and rest[0].tag == "word" and rest[0].text == "please")
        if please:
            rest = rest[1:]
        voc = _voc_from(rest[0], gapped=True)
        main = SimpleSentence(mood=mood, basics=[BasicSentence(None, voc)],
                              please=please)
        if len(rest) > 1 and rest[1].tag == "clause":
            sub_cl = _clause_from(rest[1])
            return ComplexSentence(mood=mood, subordinator=sub_cl.linker,
                                   subordinate=_that_clause_to_simple(sub_cl),
                                   main=main, sub_first=False, comma=False)
        return main

    if mood == "question":
        flat = [n for n in rest if n.tag in ("subject", "voc", "conj", "type")]
        main = _simple_from_elems(flat, mood)
        clauses = [n for n in rest if n.tag == "clause"]
        if clauses:
            sub_cl = _clause_from(clauses[0])
            return ComplexSentence(mood=mood, subordinator=sub_cl.linker,
                                   subordinate=_that_clause_to_simple(sub_cl),
                                   main=main, sub_first=False, comma=False)
        return main

    # statements
    if complexity == "simple":
        return _simple_from_elems(rest, mood)
    # clause/conj sequence
    items: list = []
    for node in rest:
        if node.tag == "clause":
            cl = _clause_from(node)
            items.append(cl)
        elif node.tag == "conj":
            items.append(node.text)
        else:
            raise NlomError(f"unexpected <{node.tag}> at statement level")

    def to_simple(cl: Clause) -> SimpleSentence:
        return _that_clause_to_simple(cl, mood)

    if complexity == "complex":
        subs = [it for it in items if isinstance(it, Clause) and it.kind == "subordinate"]
        mains = [it for it in items if isinstance(it, Clause) and it.kind != "subordinate"]
        if len(subs) != 1 or len(mains) != 1:
            raise NlomError("complex statement needs one subordinate and one main clause")
        sub_first = items.index(subs[0]) < items.index(mains[0])
        comma = any(isinstance(it, str) and it == "," for it in items)
        return ComplexSentence(mood=mood, subordinator=subs[0].linker,
                               subordinate=_that_clause_to_simple(subs[0]),
                               main=to_simple(mains[0]),
                               sub_first=sub_first, comma=comma)
    if complexity == "compound":
        pre = None
        members: list[SimpleSentence] = []
        connectives: list[tuple[str, ...]] = []
        pending: list[str] = []
        for it in items:
            if isinstance(it, str):
                if not members:
                    pre = it
                else:
                    pending.append(it)
            else:
                if members:
                    connectives.append(tuple(pending))
                pending = []
                members.append(to_simple(it))
        return CompoundSentence(mood=mood, members=members,
                                connectives=connectives, pre_conj=pre)
    if complexity == "compound_complex":
        sub = None
        members = []
        connectives = []
        pending = []
        for it in items:
            if isinstance(it, str):
                if sub is not None and members:
                    pending.append(it)
                elif sub is not None and it == ",":
                    continue
                else:
                    pending.append(it)
            elif it.kind == "subordinate":
                sub = it
            else:
                if members:
                    connectives.append(tuple(pending))
                pending = []
                members.append(to_simple(it))
        if sub is None:
            raise NlomError("compound_complex without subordinate clause")
        return CompoundComplexSentence(mood=mood, subordinator=sub.linker,
                                       subordinate=_that_clause_to_simple(sub),
                                       members=members, connectives=connectives)
    raise NlomError(f"unknown complexity '{complexity}'")


# --------------------------------------------------------------------------
# realization

_DEFAULT_LEXICON: Lexicon | None = None
_INFLECTIONS: dict[tuple[str, str], str] = {}


def _default_lexicon() -> Lexicon:
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        from .lexicon import load_lexicon
        from .resources import data_path
        _DEFAULT_LEXICON = load_lexicon(data_path("lexicon.txt"))
    return _DEFAULT_LEXICON


def _inflections(lexicon: Lexicon) -> dict[tuple[str, str], str]:
    key = id(lexicon)
    cache = _INFLECTIONS.setdefault(key, {})  # type: ignore[arg-type]
    if not cache:
        for e in lexicon.entries:
            if e.category == "VERBI":
                cache.setdefault((e.lemma.lower(), e.features.tense_form), e.surface)
    return cache


class RealizeError(ValueError):
    """The object net lacks a mandatory slot for its frame."""


_NOUN_FORMS: dict[int, dict[tuple[str, str], str]] = {}


def _noun_surface(lemma: str, numb: str, lexicon=None) -> str:
    lexicon = lexicon or _default_lexicon()
    cache = _NOUN_FORMS.setdefault(id(lexicon), {})
    if not cache:
        for e in lexicon.entries:
            if e.category == "NOUN":
                cache.setdefault((e.lemma.lower(), e.features.numb), e.surface)
    return cache.get((lemma.lower(), numb), lemma)


def _is_3sg(numb: str, pers: str) -> bool:
    return numb != "plur" and pers == "third"


def _be_form(tense: str, numb: str, pers: str) -> str:
    if tense == "past":
        return "were" if (numb == "plur" or pers == "secnd") else "was"
    if numb == "plur" or pers == "secnd":
        return "are"
    if pers == "first":
        return "am"
    return "is"


def _do_form(tense: str, numb: str, pers: str) -> str:
    if tense == "past":
        return "did"
    return "does" if _is_3sg(numb, pers) else "do"


def _have_form(tense: str, numb: str, pers: str) -> str:
    if tense == "past":
        return "had"
    return "has" if _is_3sg(numb, pers) else "have"


def _inflect(lemma: str, form: str, lexicon: Lexicon) -> str:
    surface = _inflections(lexicon).get((lemma.lower(), form))
    if surface is None:
        raise RealizeError(f"no {form} form of '{lemma}' in the lexicon")
    return surface


def _aux_token(voc: VocPart) -> str:
    tense = voc.tense or "present"
    if tense == "future":
        return "will"
    if tense == "past_future":
        return "would"
    return _do_form(tense, voc.numb, voc.pers)


def _finite_verb_tokens(voc: VocPart, lexicon: Lexicon) -> list[str]:
    """The verb complex of a finite voc, negation and voice included."""
    tense = voc.tense or "present"
    numb, pers = voc.numb, voc.pers
    lemma = voc.verb_word
    neg = voc.negation

    if voc.voice == "passive":
        part = _inflect(lemma, "past_participle", lexicon)
        if tense == "present" or tense == "past":
            out = [_be_form(tense, numb, pers)]
            if neg:
                out.append(neg)
            return out + [part]
        if tense in ("present_perfect", "past_perfect"):
            aux = _have_form("present" if tense == "present_perfect" else "past",
                             numb, pers)
            return [aux, "been", part]
        if tense in ("future", "past_future"):
            out = ["will" if tense == "future" else "would"]
            if neg:
                out.append(neg)
            return out + ["be", part]
        raise RealizeError(f"passive with unsupported tense {tense}")

    if lemma == "be":
        if tense in ("present", "past"):
            out = [_be_form(tense, numb, pers)]
            if neg:
                out.append(neg)
            return out
        if tense in ("future", "past_future"):
            out = ["will" if tense == "future" else "would"]
            if neg:
                out.append(neg)
            return out + ["be"]
        raise RealizeError(f"be with unsupported tense {tense}")

    if tense in ("present", "past"):
        if neg:
            # fused do-support ("don't know"), or stored surface as-is
            if neg in ("don't", "doesn't", "didn't"):
                return [neg, _inflect(lemma, "base", lexicon)]
            return [_do_form(tense, numb, pers), neg, _inflect(lemma, "base", lexicon)]
        if tense == "present":
            form = "s_form" if _is_3sg(numb, pers) else "base"
        else:
            form = "past"
        return [_inflect(lemma, form, lexicon)]
    if tense in ("future", "past_future"):
        out = ["will" if tense == "future" else "would"]
        if neg:
            out.append(neg)
        return out + [_inflect(lemma, "base", lexicon)]
    if tense in ("present_perfect", "past_perfect"):
        aux = _have_form("present" if tense == "present_perfect" else "past",
                         numb, pers)
        out = [aux]
        if neg:
            out.append(neg)
        return out + [_inflect(lemma, "past_participle", lexicon)]
    if tense in ("present_continuous", "past_continuous"):
        aux = _be_form("present" if tense == "present_continuous" else "past",
                       numb, pers)
        out = [aux]
        if neg:
            out.append(neg)
        return out + [_inflect(lemma, "present_participle", lexicon)]
    if tense in ("present_perfect_continuous", "past_perfect_continuous"):
        aux = _have_form("present" if tense.startswith("present") else "past",
                         numb, pers)
        return [aux, "been", _inflect(lemma, "present_participle", lexicon)]
    raise RealizeError(f"unsupported tense {tense}")


def voc_tokens(voc: VocPart, form: str | None = None,
               lexicon: Lexicon | None = None,
               drop_direct_object: bool = False) -> list[str]:
    """Tokens of one VOC part: verb complex, objects, complements,
    circumstances in their slots."""
    lexicon = lexicon or _default_lexicon()
    out: list[str] = []
    if form is None:
        out.extend(_finite_verb_tokens(voc, lexicon))
    else:
        if voc.verb_word == "be" and form == "base":
            verb = ["be"]
        else:
            verb = [_inflect(voc.verb_word, form, lexicon)]
        if voc.negation and form == "base" and voc.negation == "not":
            verb = ["not"] + verb
        out.extend(verb)
    for c in voc.circ("postverb"):
        out.extend(c.tokens(lexicon))
    if voc.particle:
        out.append(voc.particle)
    if voc.indirect_object is not None:
        out.extend(voc.indirect_object.tokens(lexicon))
    if voc.direct_object is not None and not drop_direct_object:
        if voc.direct_object.kind != "wh":
            out.extend(voc.direct_object.tokens(lexicon))
    if voc.prep_object is not None:
        out.extend(voc.prep_object.tokens(lexicon))
    if voc.predicate is not None:
        out.extend(voc.predicate.tokens(lexicon))
    if voc.clause_complement is not None:
        out.extend(voc.clause_complement.tokens(lexicon))
    for c in voc.circ("trailing"):
        out.extend(c.tokens(lexicon))
    return out


def _simple_tokens(s: SimpleSentence, lexicon: Lexicon) -> list[str]:
    out: list[str] = []
    if s.mood == "exclamation":
        if s.excl_what:
            out.append("what")
        out.extend(s.basics[0].subject.tokens(lexicon))
        return out
    if s.mood == "order":
        voc = s.basics[0].voc
        if s.please:
            out.append("please")
        out.extend(voc_tokens(voc, form="base", lexicon=lexicon))
        return out
    if s.mood == "question":
        return _question_tokens(s, lexicon)
    if s.inverted:
        voc = s.basics[0].voc
        out.append(_aux_token(voc))
        out.extend(s.basics[0].subject.tokens(lexicon))
        out.extend(voc_tokens(voc, form="base", lexicon=lexicon))
        return out
    subject = s.basics[0].subject
    if subject is None:
        raise RealizeError("statement without subject")
    for c in s.basics[0].voc.circ("initial"):
        out.extend(c.tokens(lexicon))
    out.extend(subject.tokens(lexicon))
    for i, basic in enumerate(s.basics):
        if basic.voc is None:
            raise RealizeError("statement without voc")
        if i:
            out.append(s.connectives[i - 1] if i - 1 < len(s.connectives) else "and")
        out.extend(voc_tokens(basic.voc, lexicon=lexicon))
    return out


def _question_tokens(s: SimpleSentence, lexicon: Lexicon) -> list[str]:
    basic = s.basics[0]
    voc = basic.voc
    out: list[str] = []
    wh_circ = None
    for c in voc.circ("trailing"):
        if isinstance(c.unit, Adv) and c.unit.word in WH_ADV:
            wh_circ = c
    drop_do = False
    if voc.direct_object is not None and voc.direct_object.kind == "wh":
        out.append(voc.direct_object.word)
        drop_do = True
    elif (voc.direct_object is not None and voc.direct_object.prems
          and voc.direct_object.prems[0][1] == "which"):
        out.extend(voc.direct_object.tokens(lexicon))
        drop_do = True
    elif wh_circ is not None:
        out.append(wh_circ.unit.word)
        voc.circumstances = [c for c in voc.circumstances if c is not wh_circ]
    else:
        raise RealizeError("question without a wh constituent")
    out.append(_aux_token(voc))
    out.extend(basic.subject.tokens(lexicon))
    out.extend(voc_tokens(voc, form="base", lexicon=lexicon,
                          drop_direct_object=drop_do))
    if wh_circ is not None:
        voc.circumstances.append(wh_circ)
    return out


TERMINATORS = {"statement": ".", "order": ".", "question": "?", "exclamation": "!"}


def sentence_tokens(s: Sentence, lexicon: Lexicon | None = None) -> list[str]:
    lexicon = lexicon or _default_lexicon()
    if isinstance(s, SimpleSentence):
        toks = _simple_tokens(s, lexicon)
    elif isinstance(s, ComplexSentence):
        sub = [s.subordinator] + _simple_tokens(s.subordinate, lexicon)
        main = _simple_tokens(s.main, lexicon)
        if s.sub_first:
            toks = sub + ([","] if s.comma else []) + main
        else:
            toks = main + sub
    elif isinstance(s, CompoundSentence):
        toks = [s.pre_conj] if s.pre_conj else []
        for i, m in enumerate(s.members):
            if i:
                toks.extend(s.connectives[i - 1])
            toks.extend(_simple_tokens(m, lexicon))
    elif isinstance(s, CompoundComplexSentence):
        toks = [s.subordinator] + _simple_tokens(s.subordinate, lexicon) + [","]
        for i, m in enumerate(s.members):
            if i:
                toks.extend(s.connectives[i - 1])
            toks.extend(_simple_tokens(m, lexicon))
    else:
        raise RealizeError(f"cannot realize {type(s).__name__}")
    return toks + [TERMINATORS[s.mood]]


def realize(s: Sentence, lexicon: Lexicon | None = None) -> str:
    """Deterministic surface text: agreement applied, first word
    capitalized, mood punctuation appended."""
    toks = sentence_tokens(s, lexicon)
    words: list[str] = []
    for tok in toks:
        if tok in (".", "?", "!", ",") and words:
            words[-1] += tok
        else:
            words.append(tok)
    text = " ".join(words)
    for i, ch in enumerate(text):
        if ch.isalpha():
            return text[:i] + ch.upper() + text[i + 1:]
    return text
