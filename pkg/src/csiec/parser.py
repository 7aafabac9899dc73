"""Chart parser over the affix grammar, plus tokenizer and trace printer.

Earley-style prediction/scan/completion with feature bindings carried on
each item and checked at completion.  Handles epsilon rules and recursion;
ambiguity is packed in the chart and unpacked into a ranked list of trees
(fewer nodes first, then lower maximum rule id, then leftmost rule order).

After a tree is unpacked, affix values are resolved top-down so that
context (e.g. the dative case a grammatical slot imposes on a pronoun)
shows up on every node of the trace.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .features import ANY, FeatureBundle, unify_value
from .grammar import (
    CATEGORY_SIGNATURES,
    CatRef,
    Const,
    FIELD_DOMAINS,
    Grammar,
    GrammarRule,
    Lit,
    NtRef,
    Term,
    Var,
)
from .lexicon import LexEntry, Lexicon

PUNCT = ".?!,"

LITERAL_CATEGORY = "LIT"


def tokenize(text: str) -> list[str]:
    """Whitespace split; terminal punctuation and commas become tokens."""
    tokens: list[str] = []
    for chunk in text.split():
        lead: list[str] = []
        trail: list[str] = []
        while chunk and chunk[0] in PUNCT:
            lead.append(chunk[0])
            chunk = chunk[1:]
        while chunk and chunk[-1] in PUNCT:
            trail.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(lead)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(trail))
    return tokens


@dataclass(frozen=True)
class ParseNode:
    """One constituent.  Leaves that consume a token carry their lexical
    entry; epsilon-derived nodes have an empty span and no children."""

    label: str
    affixes: tuple[tuple[str, str], ...]
    children: tuple["ParseNode", ...]
    span: tuple[int, int]
    lex: LexEntry | None = None
    rule_id: int | None = None
    is_literal: bool = False

    @property
    def features(self) -> FeatureBundle:
        if self.lex is not None:
            return self.lex.features
        kw = {}
        for domain, value in self.affixes:
            if domain == "NUMB":
                kw["numb"] = value
            elif domain == "PERS":
                kw["pers"] = value
            elif domain == "CASE":
                kw["case"] = value
            elif domain == "PARTPREP":
                kw["partprep"] = value
        return FeatureBundle(**kw)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def find_all(self, label: str):
        return [n for n in self.walk() if n.label == label]

    def affix(self, domain: str, default: str = ANY) -> str:
        for dom, value in self.affixes:
            if dom == domain:
                return value
        return default

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)

    def leaf_tokens(self) -> list[str]:
        return [n.label for n in self.walk() if n.lex is not None]


def _entry_field(entry: LexEntry, key: str) -> str:
    f = entry.features
    if key == "numb":
        return f.numb
    if key == "pers":
        return f.pers
    if key == "case":
        return f.case
    if key == "form":
        return f.tense_form
    if key == "advtype":
        return f.adv_type
    if key == "partprep":
        return f.partprep
    if key == "vtype":
        return f.verb_type.affix if f.verb_type is not None else ANY
    raise KeyError(key)


def _resolve(term: Term, env: dict[str, str]) -> str:
    if isinstance(term, Const):
        return term.value
    return env.get(term.name, ANY)


def _unify_term(term: Term, value: str, env: dict[str, str]) -> dict[str, str] | None:
    """Unify one affix term against a value, threading variable bindings."""
    if isinstance(term, Const):
        return env if unify_value(term.value, value) is not None else None
    merged = unify_value(env.get(term.name, ANY), value)
    if merged is None:
        return None
    out = dict(env)
    out[term.name] = merged
    return out


def _match_entry(ref: CatRef, entry: LexEntry, env: dict[str, str]) -> dict[str, str] | None:
    if entry.category != ref.cat:
        return None
    for key, term in ref.constraints:
        if key == "word":
            if not isinstance(term, Const) or entry.lemma.lower() != term.value.lower():
                return None
        elif key == "surface":
            if not isinstance(term, Const) or entry.surface != term.value.lower():
                return None
        else:
            env2 = _unify_term(term, _entry_field(entry, key), env)
            if env2 is None:
                return None
            env = env2
    for fieldname, term in zip(CATEGORY_SIGNATURES[ref.cat], ref.args):
        env2 = _unify_term(term, _entry_field(entry, fieldname), env)
        if env2 is None:
            return None
        env = env2
    return env


def _env_key(env: dict[str, str]):
    return tuple(sorted(env.items()))


class _Item:
    __slots__ = ("rule", "dot", "origin", "env", "backs", "pos")

    def __init__(self, rule: GrammarRule, dot: int, origin: int, env: dict, pos: int):
        self.rule = rule
        self.dot = dot
        self.origin = origin
        self.env = env
        self.pos = pos
        # (prev_item, cause); cause is ("scan", index, entry|None, literal)
        # or ("child", completed _Item)
        self.backs: list[tuple] = []

    def next_symbol(self):
        if self.dot < len(self.rule.rhs):
            return self.rule.rhs[self.dot]
        return None

    def lhs_values(self) -> tuple[str, ...]:
        return tuple(_resolve(p, self.env) for p in self.rule.params)


class _Chart:
    def __init__(self, grammar: Grammar, lexicon: Lexicon, tokens: list[str]):
        self.grammar = grammar
        self.lexicon = lexicon
        self.tokens = tokens
        n = len(tokens)
        self.items: list[dict] = [{} for _ in range(n + 1)]
        self.waiting: list[dict[str, list[_Item]]] = [{} for _ in range(n + 1)]
        self.empty_done: list[dict[str, list[_Item]]] = [{} for _ in range(n + 1)]
        self.queues: list[deque] = [deque() for _ in range(n + 1)]
        self.predicted: list[set[str]] = [set() for _ in range(n + 1)]

    def add(self, pos, rule, dot, origin, env, back) -> _Item:
        key = (rule.rule_id, dot, origin, _env_key(env))
        item = self.items[pos].get(key)
        fresh = item is None
        if fresh:
            item = _Item(rule, dot, origin, env, pos)
            self.items[pos][key] = item
            self.queues[pos].append(item)
        if back is not None and back not in item.backs:
            item.backs.append(back)
        if fresh:
            sym = item.next_symbol()
            if isinstance(sym, NtRef):
                self.waiting[pos].setdefault(sym.name, []).append(item)
                # A zero-width completion of this symbol may already exist.
                for done in list(self.empty_done[pos].get(sym.name, ())):
                    self._advance(item, done)
        return item

    def _advance(self, parent: _Item, child: _Item):
        sym = parent.rule.rhs[parent.dot]
        env = dict(parent.env)
        for term, value in zip(sym.args, child.lhs_values()):
            env2 = _unify_term(term, value, env)
            if env2 is None:
                return
            env = env2
        self.add(child.pos, parent.rule, parent.dot + 1, parent.origin, env,
                 (parent, ("child", child)))

    def run(self):
        for rule in self.grammar.by_name[self.grammar.start_symbol]:
            self.add(0, rule, 0, 0, {}, None)
        for pos in range(len(self.tokens) + 1):
            queue = self.queues[pos]
            while queue:
                item = queue.popleft()
                sym = item.next_symbol()
                if sym is None:
                    self._complete(item)
                elif isinstance(sym, NtRef):
                    self._predict(sym, pos)
                else:
                    self._scan(item, sym, pos)

    def _predict(self, sym: NtRef, pos: int):
        if sym.name in self.predicted[pos]:
            return
        self.predicted[pos].add(sym.name)
        for rule in self.grammar.by_name[sym.name]:
            self.add(pos, rule, 0, pos, {}, None)

    def _scan(self, item: _Item, sym, pos: int):
        if pos >= len(self.tokens):
            return
        token = self.tokens[pos]
        if isinstance(sym, Lit):
            if token.lower() == sym.text.lower():
                self.add(pos + 1, item.rule, item.dot + 1, item.origin,
                         item.env, (item, ("scan", pos, None, sym.text)))
            return
        for entry in self.lexicon.lookup(token):
            env = _match_entry(sym, entry, item.env)
            if env is not None:
                self.add(pos + 1, item.rule, item.dot + 1, item.origin,
                         env, (item, ("scan", pos, entry, None)))

    def _complete(self, item: _Item):
        pos = item.pos
        name = item.rule.lhs
        if item.origin == pos:
            self.empty_done[pos].setdefault(name, []).append(item)
        for parent in list(self.waiting[item.origin].get(name, ())):
            self._advance(parent, item)

    def goal_items(self) -> list[_Item]:
        final = []
        n = len(self.tokens)
        for item in self.items[n].values():
            if (item.rule.lhs == self.grammar.start_symbol and item.origin == 0
                    and item.next_symbol() is None):
                final.append(item)
        return final


def _cause_seqs(item: _Item, memo: dict, stack: set, limit: int) -> list[tuple]:
    """All ways an item consumed its first `dot` symbols, as cause tuples."""
    if item.dot == 0:
        return [()]
    key = id(item)
    if key in memo:
        return memo[key]
    if key in stack:
        return []
    stack.add(key)
    seqs = []
    for prev, cause in item.backs:
        for seq in _cause_seqs(prev, memo, stack, limit):
            seqs.append(seq + (cause,))
            if len(seqs) >= limit:
                break
        if len(seqs) >= limit:
            break
    stack.discard(key)
    memo[key] = seqs
    return seqs


def _visible_affixes(rule: GrammarRule, env: dict,
                     grammar: Grammar) -> tuple[tuple[str, str], ...]:
    out = []
    domains = grammar.param_domains(rule.lhs)
    for i, param in enumerate(rule.params):
        domain = domains[i] if i < len(domains) else "AFFIX"
        if domain.startswith("_"):
            continue
        out.append((domain, _resolve(param, env)))
    return tuple(out)


def _build_tree(item: _Item, imposed: tuple[str, ...], tokens: list[str],
                grammar: Grammar, memo: dict, limit: int) -> list[ParseNode]:
    rule = item.rule
    env = dict(item.env)
    for param, value in zip(rule.params, imposed):
        refined = _unify_term(param, value, env)
        if refined is not None:
            env = refined
    results: list[ParseNode] = []
    for seq in _cause_seqs(item, memo, set(), limit):
        child_lists: list[list[ParseNode]] = [[]]
        ok = True
        for sym, cause in zip(rule.rhs, seq):
            kind = cause[0]
            if kind == "scan":
                _, tok_idx, entry, literal = cause
                if literal is not None:
                    node = ParseNode(tokens[tok_idx], (), (), (tok_idx, tok_idx + 1),
                                     lex=None, is_literal=True)
                    options = [node]
                else:
                    vals = []
                    for fieldname, term in zip(CATEGORY_SIGNATURES[sym.cat], sym.args):
                        merged = unify_value(_resolve(term, env),
                                             _entry_field(entry, fieldname))
                        vals.append((FIELD_DOMAINS[fieldname], merged or ANY))
                    leaf = ParseNode(tokens[tok_idx], (), (), (tok_idx, tok_idx + 1),
                                     lex=entry)
                    options = [ParseNode(sym.cat, tuple(vals), (leaf,),
                                         (tok_idx, tok_idx + 1))]
            else:
                child_item: _Item = cause[1]
                child_imposed = tuple(_resolve(t, env) for t in sym.args)
                options = _build_tree(child_item, child_imposed, tokens, grammar,
                                      memo, limit)
                if not options:
                    ok = False
                    break
            child_lists = [cl + [opt] for cl in child_lists for opt in options]
            if len(child_lists) > limit:
                child_lists = child_lists[:limit]
        if not ok:
            continue
        for children in child_lists:
            span = (item.origin, item.pos)
            results.append(ParseNode(rule.lhs,
                                     _visible_affixes(rule, env, grammar),
                                     tuple(children), span, rule_id=rule.rule_id))
            if len(results) >= limit:
                return results
    return results


def _rank_key(node: ParseNode):
    ids = [n.rule_id for n in node.walk() if n.rule_id is not None]
    return (node.node_count(), max(ids, default=0), tuple(ids),
            "\n".join(derivation_trace(node)))


def parse(tokens: list[str], grammar: Grammar, lexicon: Lexicon,
          max_parses: int = 200) -> list[ParseNode]:
    """All complete parses of the token span, ranked; [] when uncovered."""
    if not tokens:
        return []
    chart = _Chart(grammar, lexicon, tokens)
    chart.run()
    trees: list[ParseNode] = []
    seen = set()
    for goal in chart.goal_items():
        imposed = goal.lhs_values()
        for tree in _build_tree(goal, imposed, tokens, grammar, {}, max_parses):
            key = "\n".join(derivation_trace(tree))
            if key not in seen:
                seen.add(key)
                trees.append(tree)
    trees.sort(key=_rank_key)
    return trees[:max_parses]


def parse_text(text: str, grammar: Grammar, lexicon: Lexicon,
               max_parses: int = 200) -> list[ParseNode]:
    return parse(tokenize(text), grammar, lexicon, max_parses)


def derivation_trace(node: ParseNode) -> list[str]:
    """Pre-order trace, one line per node; literal tokens are silent.

    The first line's label is capitalized, matching the display style of
    the golden fixture.
    """
    lines: list[str] = []

    def visit(n: ParseNode, depth: int):
        if n.is_literal:
            return
        if n.lex is not None:
            lines.append(f'{"  " * depth}"{n.label}"')
            return
        shown = n.label
        if not lines and shown:
            shown = shown[0].upper() + shown[1:]
        if n.affixes:
            shown += "(" + ", ".join(v if v != ANY else d for d, v in n.affixes) + ")"
        lines.append("  " * depth + shown)
        for child in n.children:
            visit(child, depth + 1)

    visit(node, 0)
    return lines


def unknown_tokens(tokens: list[str], grammar: Grammar, lexicon: Lexicon) -> list[str]:
    """Tokens neither in the lexicon nor matched by any grammar literal."""
    literals = {lit.lower() for lit in grammar.literals}
    out = []
    for tok in tokens:
        if tok in PUNCT or tok.lower() in literals:
            continue
        if not lexicon.lookup(tok):
            out.append(tok)
    return out
