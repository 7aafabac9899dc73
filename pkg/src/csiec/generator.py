"""Random depth-bounded derivation from the grammar.

Used as a test oracle: every generated sentence must parse, the
originating derivation must appear in the parse forest, and the
parse -> markup -> objects -> realize pipeline must reproduce the
token sequence.
"""

from __future__ import annotations

import random

from .features import ANY, unify_value
from .grammar import CatRef, Const, Grammar, Lit, NtRef, Var, CATEGORY_SIGNATURES
from .lexicon import Lexicon
from .parser import ParseNode, _entry_field, _match_entry, _resolve, _unify_term


class GenerationFailure(Exception):
    pass


Skeleton = tuple


def parse_skeleton(node: ParseNode) -> Skeleton:
    """Shape of a parse tree for derivation-containment comparison."""
    if node.is_literal:
        return ("lit", node.label.lower())
    if node.lex is not None:
        return ("tok", node.label.lower())
    if node.label in CATEGORY_SIGNATURES:
        return ("tok", node.children[0].label.lower())
    return (node.label, tuple(parse_skeleton(c) for c in node.children))


class Generator:
    def __init__(self, grammar: Grammar, lexicon: Lexicon, seed: int = 0):
        self.grammar = grammar
        self.lexicon = lexicon
        self.rng = random.Random(seed)
        self._min_depth = self._compute_min_depths()
        self._entries_by_cat: dict[str, list] = {}
        for e in lexicon.entries:
            self._entries_by_cat.setdefault(e.category, []).append(e)

    def _compute_min_depths(self) -> dict[str, int]:
        depth = {name: 10 ** 6 for name in self.grammar.by_name}
        changed = True
        while changed:
            changed = False
            for name, rules in self.grammar.by_name.items():
                for rule in rules:
                    worst = 0
                    for sym in rule.rhs:
                        if isinstance(sym, NtRef):
                            worst = max(worst, depth[sym.name])
                    if 1 + worst < depth[name]:
                        depth[name] = 1 + worst
                        changed = True
        return depth

    def _rule_min_depth(self, rule) -> int:
        worst = 0
        for sym in rule.rhs:
            if isinstance(sym, NtRef):
                worst = max(worst, self._min_depth[sym.name])
        return 1 + worst

    def _expand(self, name: str, imposed: tuple[str, ...], depth: int,
                tokens: list[str]) -> tuple[Skeleton, tuple[str, ...]]:
        candidates = []
        for rule in self.grammar.by_name[name]:
            if self._rule_min_depth(rule) > depth:
                continue
            env: dict[str, str] | None = {}
            for param, value in zip(rule.params, imposed):
                env = _unify_term(param, value, env)
                if env is None:
                    break
            if env is not None:
                candidates.append((rule, env))
        if not candidates:
            raise GenerationFailure(f"no viable rule for {name}{imposed}")
        rule, env = self.rng.choice(candidates)
        children: list[Skeleton] = []
        for sym in rule.rhs:
            if isinstance(sym, Lit):
                tokens.append(sym.text)
                children.append(("lit", sym.text.lower()))
            elif isinstance(sym, CatRef):
                entries = [e for e in self._entries_by_cat.get(sym.cat, ())]
                self.rng.shuffle(entries)
                for entry in entries:
                    env2 = _match_entry(sym, entry, env)
                    if env2 is not None:
                        env = env2
                        tokens.append(entry.surface)
                        children.append(("tok", entry.surface))
                        break
                else:
                    raise GenerationFailure(f"no entry for {sym.cat} under {env}")
            else:
                child_imposed = tuple(_resolve(t, env) for t in sym.args)
                child, child_values = self._expand(sym.name, child_imposed,
                                                   depth - 1, tokens)
                children.append(child)
                # agreement: bindings the child fixed flow back into this rule
                for term, value in zip(sym.args, child_values):
                    env2 = _unify_term(term, value, env)
                    if env2 is None:
                        raise GenerationFailure("child binding conflict")
                    env = env2
        resolved = tuple(_resolve(p, env) for p in rule.params)
        return (name, tuple(children)), resolved

    def sentence(self, max_depth: int = 16, max_tokens: int = 14,
                 attempts: int = 80) -> tuple[list[str], Skeleton]:
        """One random sentence: (tokens, derivation skeleton)."""
        for _ in range(attempts):
            tokens: list[str] = []
            try:
                skel, _ = self._expand(self.grammar.start_symbol, (), max_depth, tokens)
            except GenerationFailure:
                continue
            if len(tokens) <= max_tokens:
                return tokens, skel
        raise GenerationFailure("could not generate a sentence within bounds")

    def corpus(self, n: int, max_depth: int = 16, max_tokens: int = 14):
        return [self.sentence(max_depth, max_tokens) for _ in range(n)]
