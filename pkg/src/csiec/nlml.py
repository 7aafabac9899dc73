"""NLML: the XML-style tagged markup of one parsed sentence.

``to_nlml`` transduces a parse tree into a tag document; ``serialize`` and
``parse_nlml`` convert between documents and markup text (the wire format
stored in the dialog log and served over HTTP).

Element conventions beyond the single golden example are frozen here and
documented in docs/nlml-schema.md: clause lists join with ``conj``
elements (commas included, as ``<conj>,</conj>``), passives carry a
``voice`` element inside ``voc``, negation is a degree adverb inside
``voc``, and every finite ``voc`` carries two leading circumstance slots
(clause-initial and post-verb) followed by its complements and an optional
trailing circumstance slot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .features import ANY, VerbType
from .parser import ParseNode

TAGS = frozenset({
    "mood", "complexity", "subject", "voc", "noun", "type", "word",
    "numb", "pers", "case", "verb_type", "tense", "verb_word",
    "indirect_object", "direct_object", "object", "prem", "circum",
    "adv", "predicate", "clause", "conj", "voice",
})

_TEXT_OK = re.compile(r"^[\w' ,-]*$")

WH_ADV = {"why": "reason", "when": "time", "where": "place", "how": "manner"}


class NlmlError(ValueError):
    """Malformed markup or an unsupported construct."""


@dataclass
class NlmlNode:
    tag: str
    text: str | None = None
    children: list["NlmlNode"] = field(default_factory=list)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise NlmlError(f"unknown NLML tag <{self.tag}>")
        if self.text is not None and self.children:
            raise NlmlError(f"<{self.tag}> has both text and children")
        if self.text is not None and not _TEXT_OK.match(self.text):
            raise NlmlError(f"<{self.tag}> text contains forbidden characters")

    def find(self, tag: str) -> "NlmlNode | None":
        for c in self.children:
            if c.tag == tag:
                return c
        return None

    def find_all(self, tag: str) -> list["NlmlNode"]:
        return [c for c in self.children if c.tag == tag]

    def __eq__(self, other):
        return (isinstance(other, NlmlNode) and self.tag == other.tag
                and (self.text or "") == (other.text or "")
                and self.children == other.children)


@dataclass
class NlmlDoc:
    root: list[NlmlNode] = field(default_factory=list)

    def find(self, tag: str) -> NlmlNode | None:
        for c in self.root:
            if c.tag == tag:
                return c
        return None

    def find_all(self, tag: str) -> list[NlmlNode]:
        return [c for c in self.root if c.tag == tag]

    def mood(self) -> str:
        node = self.find("mood")
        return node.text if node else ""

    def __eq__(self, other):
        return isinstance(other, NlmlDoc) and self.root == other.root


def element(tag: str, text: str) -> NlmlNode:
    return NlmlNode(tag, text=text)


def container(tag: str, children: list[NlmlNode]) -> NlmlNode:
    return NlmlNode(tag, children=list(children))


def empty(tag: str) -> NlmlNode:
    return NlmlNode(tag)


# --------------------------------------------------------------------------
# serialization

def serialize(doc: NlmlDoc) -> str:
    lines: list[str] = []

    def emit(node: NlmlNode, depth: int):
        pad = "  " * depth
        if node.children:
            lines.append(f"{pad}<{node.tag}>")
            for child in node.children:
                emit(child, depth + 1)
            lines.append(f"{pad}</{node.tag}>")
        elif node.text is not None:
            lines.append(f"{pad}<{node.tag}>{node.text}</{node.tag}>")
        else:
            lines.append(f"{pad}<{node.tag}></{node.tag}>")

    for top in doc.root:
        emit(top, 0)
    return "\n".join(lines) + ("\n" if lines else "")


_TOKEN = re.compile(r"<(/?)([a-z_]+)>|([^<]+)")


def parse_nlml(text: str) -> NlmlDoc:
    """Inverse of serialize; tolerates arbitrary inter-element whitespace."""
    root: list[NlmlNode] = []
    stack: list[tuple[str, list[NlmlNode], list[str]]] = []
    pos = 0
    line = 1
    for m in _TOKEN.finditer(text):
        if m.start() != pos:
            raise NlmlError(f"line {line}: stray '<' in markup")
        pos = m.end()
        chunk = m.group(0)
        line += chunk.count("\n")
        if m.group(3) is not None:
            if m.group(3).strip():
                if not stack:
                    raise NlmlError(f"line {line}: text outside any element")
                stack[-1][2].append(m.group(3).strip())
            continue
        closing, tag = m.group(1), m.group(2)
        if tag not in TAGS:
            raise NlmlError(f"line {line}: unknown tag <{tag}>")
        if not closing:
            stack.append((tag, [], []))
        else:
            if not stack or stack[-1][0] != tag:
                raise NlmlError(f"line {line}: unbalanced </{tag}>")
            open_tag, children, texts = stack.pop()
            if texts and children:
                raise NlmlError(f"line {line}: <{tag}> mixes text and elements")
            node = NlmlNode(open_tag, text=" ".join(texts) if texts else None,
                            children=children)
            if stack:
                stack[-1][1].append(node)
            else:
                root.append(node)
    if pos != len(text) and text[pos:].strip():
        raise NlmlError("trailing junk after markup")
    if stack:
        raise NlmlError(f"unbalanced <{stack[-1][0]}>: never closed")
    return NlmlDoc(root)


def normalized(text: str) -> list[str]:
    """Whitespace-normalized line sequence for golden comparisons."""
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


# --------------------------------------------------------------------------
# parse tree -> NLML

MOOD_LABELS = {
    "statement": "statement",
    "question": "question",
    "order": "order",
    "exclamation": "exclamation",
}

COMPLEXITY_LABELS = {
    "simple statement": "simple",
    "complex statement": "complex",
    "compound statement": "compound",
    "compound complex statement": "compound_complex",
}

TYPE_NAMES = {"PERSPRON": "perspronoun", "ART": "art", "NOUN": "noun"}


def _fail(node: ParseNode, why: str):
    rid = node.rule_id if node.rule_id is not None else "-"
    raise NlmlError(f"unsupported construct at rule {rid} ({node.label}): {why}")


def _lex_leaf(node: ParseNode) -> ParseNode:
    for n in node.walk():
        if n.lex is not None:
            return n
    _fail(node, "no lexical leaf")


def _child(node: ParseNode, label: str) -> ParseNode | None:
    for c in node.children:
        if c.label == label:
            return c
    return None


def to_nlml(parse: ParseNode) -> NlmlDoc:
    """Transduce a complete parse rooted at `segment` into NLML."""
    if parse.label != "segment":
        _fail(parse, "not a segment")
    body = parse.children[0]
    mood = MOOD_LABELS.get(body.label)
    if mood is None:
        _fail(body, "unknown mood")
    if mood == "statement":
        return _statement_doc(body)
    if mood == "question":
        return _question_doc(body)
    if mood == "order":
        return _order_doc(body)
    return _exclamation_doc(body)


def _statement_doc(statement: ParseNode) -> NlmlDoc:
    level = statement.children[0]
    complexity = COMPLEXITY_LABELS.get(level.label)
    if complexity is None:
        _fail(level, "unknown complexity")
    doc = [element("mood", "statement"), element("complexity", complexity)]
    if complexity == "simple":
        unit = level.children[0]
        doc.extend(_clause_unit_elems(unit))
    else:
        doc.extend(_clause_sequence(level))
    return NlmlDoc(doc)


def _clause_sequence(level: ParseNode) -> list[NlmlNode]:
    """Clause/conj sequence for complex and compound statements, in
    surface order; commas become <conj>,</conj>."""
    out: list[NlmlNode] = []
    for child in level.children:
        if child.is_literal:
            out.append(element("conj", child.label.lower()))
        elif child.label == "subordinate clause":
            sub_conj = child.children[0].label.lower()
            unit = child.children[1]
            out.append(container("clause",
                                 [element("conj", sub_conj)] + _clause_unit_elems(unit)))
        elif child.label == "coordinator":
            out.append(element("conj", child.children[0].label.lower()))
        elif child.label == "simple complete statement without it noun clause":
            out.append(container("clause", _clause_unit_elems(child)))
        elif child.label == "inverted statement":
            out.append(container("clause", _inverted_clause_elems(child)))
        else:
            _fail(child, "unexpected clause element")
    return out


def _clause_unit_elems(unit: ParseNode) -> list[NlmlNode]:
    """<subject> and <voc> elements for one clause unit."""
    if unit.label == "simple complete statement with it noun clause":
        return _it_clause_elems(unit)
    initial = _circ_units(unit.children[0])
    svoc = unit.children[1]
    subject = svoc.children[0]
    voc_phrase = svoc.children[1]
    out = [container("subject", _subject_elems(subject))]
    first = True
    for part in voc_phrase.children:
        if part.is_literal:
            out.append(element("conj", part.label.lower()))
            continue
        out.append(_voc_elem(part, initial if first else []))
        first = False
    return out


def _subject_elems(subject: ParseNode) -> list[NlmlNode]:
    inner = subject.children[0]
    if inner.label == "free relative clause":
        return [_free_relative_clause(inner)]
    return _noun_phrase_elems(inner)


def _it_clause_elems(unit: ParseNode) -> list[NlmlNode]:
    initial = _circ_units(unit.children[0])
    svoc = unit.children[1]
    it_leaf = _lex_leaf(svoc.children[0])
    it_noun = container("noun", [
        element("type", "perspronoun"),
        element("word", it_leaf.lex.lemma),
        element("numb", "sing"),
        element("pers", "third"),
        element("case", "nom"),
    ])
    vocish = svoc.children[1]
    group = vocish.children[0]
    that = vocish.children[1]
    voc_children = _group_elems(group)
    voc_children.append(_circum_slot(initial))
    voc_children.append(empty("circum"))
    inner = container("clause", [element("conj", "that")]
                      + _clause_unit_elems(that.children[1]))
    voc_children.append(inner)
    return [container("subject", [it_noun]), container("voc", voc_children)]


def _inverted_clause_elems(node: ParseNode) -> list[NlmlNode]:
    aux, subject, base_voc = node.children
    tense = aux.affix("TENSE")
    numb = subject.affix("NUMB")
    pers = subject.affix("PERS")
    voc = _nonfinite_voc(base_voc, tense=tense, numb=numb, pers=pers)
    return [element("type", "inverted"),
            container("subject", _subject_elems(subject)), voc]


# ---- voc ------------------------------------------------------------------

def _voc_elem(simple_voc: ParseNode, initial: list[NlmlNode]) -> NlmlNode:
    all_voc = simple_voc.children[0]
    variant = all_voc.children[0]
    if variant.label == "real all VOC phrase":
        return _active_voc(variant, initial)
    if variant.label == "passive all VOC phrase":
        return _passive_voc(variant, initial)
    _fail(variant, "unknown VOC variant")


def _group_elems(group: ParseNode) -> list[NlmlNode]:
    """verb_type/voice/tense/numb/pers/negation/verb_word elements from a
    (possibly passive) verb group or be group node."""
    passive = group.label.startswith("passive")
    if group.label in ("verb group", "passive verb group"):
        vtype = VerbType.from_affix(group.affix("VTYPE")).value
        tense = group.affix("TENSE")
        numb, pers = group.affix("NUMB"), group.affix("PERS")
        main = None
        for n in group.walk():
            if n.label == "LEX_VERBI":
                main = n
        verb_word = _lex_leaf(main).lex.lemma if main else "be"
    elif group.label == "be group":
        vtype = VerbType.BE_PREDICATE.value
        tense = group.affix("TENSE")
        numb, pers = group.affix("NUMB"), group.affix("PERS")
        verb_word = "be"
    else:
        _fail(group, "not a verb group")
    neg = None
    for n in group.walk():
        if n.label in ("negation word", "neg do group"):
            neg = _lex_leaf(n)
    out = [element("verb_type", vtype)]
    if passive:
        out.append(element("voice", "passive"))
    out.append(element("tense", tense))
    out.append(element("numb", numb if numb != ANY else "NUMB"))
    out.append(element("pers", pers if pers != ANY else "PERS"))
    if neg is not None:
        out.append(container("adv", [element("type", "degree"),
                                     element("word", neg.label.lower())]))
    out.append(element("verb_word", verb_word))
    return out


def _circum_slot(units: list[NlmlNode]) -> NlmlNode:
    return container("circum", units) if units else empty("circum")


def _active_voc(node: ParseNode, initial: list[NlmlNode]) -> NlmlNode:
    children = list(node.children)
    group = children[0]
    out = _group_elems(group)
    vtype = (VerbType.BE_PREDICATE if group.label == "be group"
             else VerbType.from_affix(group.affix("VTYPE")))
    rest = children[1:]

    postverb: list[NlmlNode] = []
    trailing: list[NlmlNode] = []
    complements: list[NlmlNode] = []
    prep_words: list[str] = []
    prep_np: list[NlmlNode] | None = None
    seen_complement = False
    for part in rest:
        if part.label == "opt circumstances":
            units = _circ_units(part)
            if not seen_complement and vtype in (VerbType.VERB_IO_DO, VerbType.VERB_DO):
                postverb = units
                seen_complement = True
            else:
                trailing = units
        elif part.label == "indirect object phrase":
            complements.append(container("indirect_object",
                                         _noun_phrase_elems(part.children[0])))
        elif part.label in ("direct object phrase", "object phrase"):
            np = part
            while np.label != "noun phrase":
                np = np.children[0]
            complements.append(container("direct_object", _noun_phrase_elems(np)))
            seen_complement = True
        elif part.label == "predicate":
            complements.append(container("predicate", _predicate_elems(part)))
            seen_complement = True
        elif part.label == "PREP":
            prep_words.append(_lex_leaf(part).lex.lemma)
        elif part.label == "noun phrase":
            prep_np = _noun_phrase_elems(part)
            seen_complement = True
        elif part.label == "base VOC phrase":
            complements.append(_clause_complement("bare_infinitive", part))
            seen_complement = True
        elif part.label == "to infinitive phrase":
            complements.append(_clause_complement("to_infinitive", part.children[1]))
            seen_complement = True
        elif part.label == "participle VOC phrase":
            kind = "gerund" if vtype == VerbType.VERB_NP_GERUND else "participle"
            complements.append(_clause_complement(kind, part))
            seen_complement = True
        elif part.label == "past participle phrase":
            complements.append(_clause_complement("past_participle", part))
            seen_complement = True
        else:
            _fail(part, "unexpected VOC element")
    if prep_words:
        prep_children = [element("word", w) for w in prep_words]
        if prep_np:
            prep_children.extend(prep_np)
        complements.append(container("object", prep_children))
        seen_complement = True

    out.append(_circum_slot(initial))
    out.append(_circum_slot(postverb))
    out.extend(complements)
    if trailing:
        out.append(_circum_slot(trailing))
    return container("voc", out)


def _passive_voc(node: ParseNode, initial: list[NlmlNode]) -> NlmlNode:
    children = list(node.children)
    group = children[0]
    out = _group_elems(group)
    trailing: list[NlmlNode] = []
    complements: list[NlmlNode] = []
    prep_words: list[str] = []
    prep_np: list[NlmlNode] | None = None
    for part in children[1:]:
        if part.label == "opt circumstances":
            trailing = _circ_units(part)
        elif part.label == "PREP":
            prep_words.append(_lex_leaf(part).lex.lemma)
        elif part.label == "noun phrase":
            prep_np = _noun_phrase_elems(part)
        elif part.label == "to infinitive phrase":
            complements.append(_clause_complement("to_infinitive", part.children[1]))
        else:
            _fail(part, "unexpected passive VOC element")
    if prep_words:
        prep_children = [element("word", w) for w in prep_words]
        if prep_np:
            prep_children.extend(prep_np)
        complements.append(container("object", prep_children))
    out.append(_circum_slot(initial))
    out.append(empty("circum"))
    out.extend(complements)
    if trailing:
        out.append(_circum_slot(trailing))
    return container("voc", out)


def _nonfinite_voc(node: ParseNode, tense: str = "", numb: str = ANY,
                   pers: str = ANY, gap_ok: bool = True) -> NlmlNode:
    """voc element for base/participle/gapped VOC phrase nodes."""
    group = node.children[0]
    if group.label == "base be group":
        vtype = VerbType.BE_PREDICATE
        verb_word = "be"
    else:
        vtype = VerbType.from_affix(group.affix("VTYPE"))
        verb_word = _lex_leaf(group).lex.lemma
    out = [element("verb_type", vtype.value)]
    if tense:
        out.append(element("tense", tense))
        out.append(element("numb", numb if numb != ANY else "NUMB"))
        out.append(element("pers", pers if pers != ANY else "PERS"))
    out.append(element("verb_word", verb_word))
    out.append(empty("circum"))
    out.append(empty("circum"))
    trailing: list[NlmlNode] = []
    for part in node.children[1:]:
        if part.label == "opt circumstances":
            trailing = _circ_units(part)
        elif part.label == "indirect object phrase":
            out.append(container("indirect_object",
                                 _noun_phrase_elems(part.children[0])))
        elif part.label == "object phrase":
            out.append(container("direct_object",
                                 _noun_phrase_elems(part.children[0])))
        elif part.label == "direct object phrase":
            out.append(container("direct_object",
                                 _noun_phrase_elems(part.children[0].children[0])))
        elif part.label == "predicate":
            out.append(container("predicate", _predicate_elems(part)))
        else:
            _fail(part, "unexpected nonfinite VOC element")
    if trailing:
        out.append(_circum_slot(trailing))
    return container("voc", out)


def _clause_complement(kind: str, voc_node: ParseNode) -> NlmlNode:
    inner = _nonfinite_voc(voc_node)
    return container("clause", [element("type", kind), inner])


def _finite_gapped_voc(node: ParseNode) -> NlmlNode:
    """voc for a finite gapped VOC phrase (relative clauses)."""
    group = node.children[0]
    out = _group_elems(group)
    out.append(empty("circum"))
    out.append(empty("circum"))
    for part in node.children[1:]:
        if part.label == "indirect object phrase":
            out.append(container("indirect_object",
                                 _noun_phrase_elems(part.children[0])))
    return container("voc", out)


# ---- noun phrases -----------------------------------------------------------

def _noun_phrase_elems(np: ParseNode) -> list[NlmlNode]:
    out: list[NlmlNode] = []
    for child in np.children:
        if child.is_literal:
            out.append(element("conj", child.label.lower()))
        elif child.label == "noun part":
            out.extend(_noun_part_elems(child))
        else:
            _fail(child, "unexpected noun phrase element")
    return out


def _noun_part_elems(part: ParseNode) -> list[NlmlNode]:
    inner = part.children[0]
    out: list[NlmlNode] = []
    if inner.label == "personal pronoun":
        leaf = _lex_leaf(inner)
        numb = inner.affix("NUMB")
        pers = inner.affix("PERS")
        case = inner.affix("CASE")
        out.append(container("noun", [
            element("type", "perspronoun"),
            element("word", leaf.lex.lemma),
            element("numb", numb if numb != ANY else "NUMB"),
            element("pers", pers if pers != ANY else "PERS"),
            element("case", case if case != ANY else "CASE"),
        ]))
    elif inner.label == "normal noun part":
        out.extend(_normal_noun_elems(inner))
    else:
        _fail(inner, "unexpected noun part")
    if len(part.children) > 1 and part.children[1].label == "relative clause":
        out.append(_relative_clause(part.children[1]))
    return out


def _normal_noun_elems(node: ParseNode) -> list[NlmlNode]:
    out: list[NlmlNode] = []
    prem, rest, real = node.children
    art = _lex_leaf(prem)
    out.append(container("prem", [element("type", "art"),
                                  element("word", art.lex.lemma)]))
    for adj in rest.find_all("LEX_ADJ"):
        out.append(container("prem", [element("type", "adj"),
                                      element("word", _lex_leaf(adj).lex.lemma)]))
    out.append(_real_noun_elem(real))
    return out


def _real_noun_elem(real: ParseNode) -> NlmlNode:
    leaf = _lex_leaf(real)
    numb = real.affix("NUMB")
    return container("noun", [
        element("word", leaf.lex.lemma),
        element("numb", numb if numb != ANY else "NUMB"),
        element("type", "noun"),
    ])


def _relative_clause(node: ParseNode) -> NlmlNode:
    children: list[NlmlNode] = []
    idx = 0
    if node.children[0].is_literal:
        children.append(element("conj", "that"))
        idx = 1
    np = node.children[idx]
    gapped = node.children[idx + 1]
    children.append(container("subject", _noun_phrase_elems(np)))
    children.append(_finite_gapped_voc(gapped))
    return container("clause", children)


def _free_relative_clause(node: ParseNode) -> NlmlNode:
    _, np, gapped = node.children
    return container("clause", [
        element("conj", "what"),
        container("subject", _noun_phrase_elems(np)),
        _finite_gapped_voc(gapped),
    ])


# ---- circumstances and predicates -------------------------------------------

def _circ_units(opt_circ: ParseNode) -> list[NlmlNode]:
    units: list[NlmlNode] = []
    for circ in opt_circ.find_all("circumstance"):
        inner = circ.children[0]
        if inner.label == "adverb":
            leaf = _lex_leaf(inner)
            units.append(container("adv", [
                element("type", leaf.lex.features.adv_type),
                element("word", leaf.lex.lemma),
            ]))
        elif inner.label == "prep phrase":
            units.append(_prep_phrase_elem(inner))
        else:
            _fail(inner, "unexpected circumstance")
    return units


def _prep_phrase_elem(node: ParseNode) -> NlmlNode:
    prep_leaf = _lex_leaf(node.children[0])
    children = [element("word", prep_leaf.lex.lemma)]
    obj = node.children[1]
    if obj.label == "noun phrase":
        children.extend(_noun_phrase_elems(obj))
    else:
        children.append(_real_noun_elem(obj))
    return container("object", children)


def _predicate_elems(node: ParseNode) -> list[NlmlNode]:
    inner = node.children[0]
    if inner.label == "noun phrase":
        return _noun_phrase_elems(inner)
    if inner.label == "adjective phrase":
        out: list[NlmlNode] = []
        for part in inner.children:
            if part.label == "degree adverb":
                leaf = _lex_leaf(part)
                out.append(container("adv", [element("type", "degree"),
                                             element("word", leaf.lex.lemma)]))
            elif part.label == "LEX_ADJ":
                out.append(container("prem", [element("type", "adj"),
                                              element("word", _lex_leaf(part).lex.lemma)]))
            elif part.label == "prep phrase":
                out.append(_prep_phrase_elem(part))
            else:
                _fail(part, "unexpected adjective phrase element")
        return out
    if inner.label == "prep phrase":
        return [_prep_phrase_elem(inner)]
    if inner.label == "wh to clause":
        to_inf = inner.children[1]
        voc = _nonfinite_voc(to_inf.children[1])
        return [container("clause", [element("type", "wh_infinitive"),
                                     element("conj", "how"), voc])]
    _fail(inner, "unexpected predicate")


# ---- questions, orders, exclamations ----------------------------------------

def _question_doc(question: ParseNode) -> NlmlDoc:
    q = question.children[0]
    doc = [element("mood", "question")]
    sub_clause = None
    if q.label == "wh adjunct question":
        wh_word = q.children[0].children[0].label.lower()
        aux, np, base = q.children[1], q.children[2], q.children[3]
        voc = _nonfinite_voc(base, tense=aux.affix("TENSE"),
                             numb=np.affix("NUMB"), pers=np.affix("PERS"))
        wh_adv = container("adv", [element("type", WH_ADV[wh_word]),
                                   element("word", wh_word)])
        voc.children.append(container("circum", [wh_adv]))
    elif q.label in ("wh object question", "which object question"):
        idx = 1
        which_noun = None
        if q.label == "which object question":
            which_noun = q.children[1]
            idx = 2
        aux, np, gapped = q.children[idx], q.children[idx + 1], q.children[idx + 2]
        voc = _nonfinite_voc(gapped, tense=aux.affix("TENSE"),
                             numb=np.affix("NUMB"), pers=np.affix("PERS"))
        if which_noun is not None:
            do = container("direct_object", [
                container("prem", [element("type", "art"), element("word", "which")]),
                _real_noun_elem(which_noun),
            ])
        else:
            do = container("direct_object", [
                container("noun", [element("type", "whpronoun"),
                                   element("word", "what")]),
            ])
        # the wh object fills the gap: insert before any trailing circum
        insert_at = len(voc.children)
        voc.children.insert(insert_at, do)
        opt_sub = q.children[idx + 3]
        if opt_sub.children:
            sub_clause = opt_sub.children[0]
    else:
        _fail(q, "unknown question form")
    complexity = "complex" if sub_clause is not None else "simple"
    doc.append(element("complexity", complexity))
    doc.append(container("subject", _subject_elems_from_np(q)))
    doc.append(voc)
    if sub_clause is not None:
        conj = sub_clause.children[0].label.lower()
        doc.append(container("clause", [element("conj", conj)]
                             + _clause_unit_elems(sub_clause.children[1])))
    return NlmlDoc(doc)


def _subject_elems_from_np(q: ParseNode) -> list[NlmlNode]:
    for child in q.children:
        if child.label == "noun phrase":
            return _noun_phrase_elems(child)
    _fail(q, "question without subject")


def _order_doc(order: ParseNode) -> NlmlDoc:
    doc = [element("mood", "order")]
    idx = 0
    please = False
    if order.children[0].is_literal:
        please = True
        idx = 1
    base = order.children[idx]
    opt_sub = order.children[idx + 1]
    sub_clause = opt_sub.children[0] if opt_sub.children else None
    doc.append(element("complexity", "complex" if sub_clause is not None else "simple"))
    if please:
        doc.append(element("word", "please"))
    doc.append(_nonfinite_voc(base, tense="present", numb=ANY, pers="secnd"))
    if sub_clause is not None:
        conj = sub_clause.children[0].label.lower()
        doc.append(container("clause", [element("conj", conj)]
                             + _clause_unit_elems(sub_clause.children[1])))
    return NlmlDoc(doc)


def _exclamation_doc(excl: ParseNode) -> NlmlDoc:
    doc = [element("mood", "exclamation"), element("complexity", "simple")]
    children = excl.children
    if children[0].is_literal:
        doc.append(element("word", "what"))
        doc.append(container("subject", _noun_phrase_elems(children[1])))
    elif children[0].label == "LEX_ADJ":
        doc.append(container("subject", [
            container("prem", [element("type", "adj"),
                               element("word", _lex_leaf(children[0]).lex.lemma)]),
            _real_noun_elem(children[1]),
        ]))
    else:
        doc.append(container("subject", [_real_noun_elem(children[0])]))
    return NlmlDoc(doc)
