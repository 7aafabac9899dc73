"""Bundled semantic network: glosses and lexical relations.

File format, one item per line::

    lemma|pos|gloss                                   (concept)
    rel|hypernym|from_lemma|from_pos|to_lemma|to_pos  (relation)

Relation types are hypernym, synonym, and antonym.  Hypernym edges must be
acyclic and each concept has at most one hypernym parent; synonymy is
stored symmetrically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

POS_TAGS = ("noun", "verb", "adj", "adv")
REL_TYPES = ("hypernym", "synonym", "antonym")


class NetError(ValueError):
    pass


@dataclass(frozen=True)
class Concept:
    lemma: str
    pos: str
    gloss: str


@dataclass
class SemanticNet:
    concepts: dict[tuple[str, str], Concept] = field(default_factory=dict)
    hypernym: dict[tuple[str, str], tuple[str, str]] = field(default_factory=dict)
    synonyms: dict[tuple[str, str], set] = field(default_factory=dict)
    antonyms: dict[tuple[str, str], set] = field(default_factory=dict)

    def gloss(self, lemma: str, pos: str) -> str | None:
        c = self.concepts.get((lemma.lower(), pos))
        return c.gloss if c else None

    def hypernyms(self, lemma: str, pos: str) -> list[Concept]:
        """Transitive hypernym chain, nearest first; [] when none."""
        out = []
        key = (lemma.lower(), pos)
        while key in self.hypernym:
            key = self.hypernym[key]
            out.append(self.concepts[key])
        return out

    def synonyms_of(self, lemma: str, pos: str) -> list[Concept]:
        return [self.concepts[k] for k in sorted(self.synonyms.get((lemma.lower(), pos), ()))]

    def antonyms_of(self, lemma: str, pos: str) -> list[Concept]:
        return [self.concepts[k] for k in sorted(self.antonyms.get((lemma.lower(), pos), ()))]


def load_net(path) -> SemanticNet:
    net = SemanticNet()
    relations = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("|")
            if parts[0] == "rel":
                if len(parts) != 6:
                    raise NetError(f"line {lineno}: relation needs 6 fields")
                _, rtype, fl, fp, tl, tp = parts
                if rtype not in REL_TYPES:
                    raise NetError(f"line {lineno}: unknown relation '{rtype}'")
                relations.append((lineno, rtype, (fl.lower(), fp), (tl.lower(), tp)))
            else:
                if len(parts) != 3:
                    raise NetError(f"line {lineno}: concept needs 3 fields")
                lemma, pos, gloss = (p.strip() for p in parts)
                if pos not in POS_TAGS:
                    raise NetError(f"line {lineno}: unknown pos '{pos}'")
                if not gloss:
                    raise NetError(f"line {lineno}: empty gloss for '{lemma}'")
                key = (lemma.lower(), pos)
                if key in net.concepts:
                    raise NetError(f"line {lineno}: duplicate concept {key}")
                net.concepts[key] = Concept(lemma.lower(), pos, gloss)

    for lineno, rtype, src, dst in relations:
        for key in (src, dst):
            if key not in net.concepts:
                raise NetError(f"line {lineno}: relation names unknown concept {key}")
        if rtype == "hypernym":
            if src in net.hypernym:
                raise NetError(f"line {lineno}: {src} already has a hypernym")
            net.hypernym[src] = dst
        elif rtype == "synonym":
            net.synonyms.setdefault(src, set()).add(dst)
            net.synonyms.setdefault(dst, set()).add(src)
        else:
            net.antonyms.setdefault(src, set()).add(dst)
            net.antonyms.setdefault(dst, set()).add(src)

    _check_acyclic(net)
    return net


def _check_acyclic(net: SemanticNet):
    for start in net.hypernym:
        seen = [start]
        key = start
        while key in net.hypernym:
            key = net.hypernym[key]
            if key in seen:
                cycle = " -> ".join(f"{l}/{p}" for l, p in seen + [key])
                raise NetError(f"hypernym cycle: {cycle}")
            seen.append(key)


def gloss(net: SemanticNet, lemma: str, pos: str) -> str | None:
    return net.gloss(lemma, pos)


def hypernyms(net: SemanticNet, lemma: str, pos: str) -> list[Concept]:
    return net.hypernyms(lemma, pos)
