"""Feature-constrained context-free grammar: file format and validation.

Grammar files are UTF-8 text.  A header block declares affix domains::

    affix NUMB = sing | plur .
    affix PARTPREP = none none | none to | up with .

Rules follow, one per ``;``, with ``|`` separating alternatives, ``[]`` for
an empty right-hand side, ``$CATEGORY(args | key=value, ...)`` for lexical
categories, and ``"text"`` for literal tokens::

    noun phrase(NUMB, PERS, CASE) : noun part(NUMB, PERS, CASE) ;
    opt adverbs : [] ;
    segment : statement, "." ;

Nonterminal names may contain spaces.  Affix arguments are either
variables (uppercase, named after their domain, optional digit suffix:
``NUMB``, ``NUMB2``) or constant values from a declared domain.  A
variable prefixed with ``_`` is a hidden parameter: it takes part in
unification but is omitted from derivation traces.  The first rule's
left-hand side is the start symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

# Positional affix signature of each lexical category (entry feature fields),
# and the domain name shown when a slot is unresolved.
CATEGORY_SIGNATURES: dict[str, tuple[str, ...]] = {
    "NOUN": ("numb",),
    "VERBI": ("partprep", "vtype"),
    "PERSPRON": ("numb", "pers", "case"),
    "ART": ("numb",),
    "ADVB": (),
    "ADJ": (),
    "PREP": (),
    "CONJ": (),
    "MODAL": (),
    "TIMEADV": (),
}

FIELD_DOMAINS = {
    "numb": "NUMB",
    "pers": "PERS",
    "case": "CASE",
    "partprep": "PARTPREP",
    "vtype": "VTYPE",
    "form": "FORM",
    "advtype": "ADVTYPE",
}

CONSTRAINT_KEYS = ("numb", "pers", "case", "form", "vtype", "advtype", "partprep", "word", "surface")


class GrammarError(ValueError):
    """Grammar file syntax or closure error; message carries a line number."""


@dataclass(frozen=True)
class Var:
    name: str

    @property
    def hidden(self) -> bool:
        return self.name.startswith("_")

    @property
    def domain(self) -> str:
        return self.name.lstrip("_").rstrip("0123456789")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: str

    def __str__(self):
        return self.value


Term = Var | Const


@dataclass(frozen=True)
class NtRef:
    name: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class CatRef:
    cat: str
    args: tuple[Term, ...] = ()
    constraints: tuple[tuple[str, Term], ...] = ()


@dataclass(frozen=True)
class Lit:
    text: str


Symbol = NtRef | CatRef | Lit


@dataclass(frozen=True)
class GrammarRule:
    rule_id: int
    lhs: str
    params: tuple[Term, ...]
    rhs: tuple[Symbol, ...]
    line: int

    def __str__(self):
        params = f"({', '.join(map(str, self.params))})" if self.params else ""
        return f"[{self.rule_id}] {self.lhs}{params}"


@dataclass
class Grammar:
    affixes: dict[str, tuple[str, ...]]
    rules: list[GrammarRule]
    start_symbol: str
    by_name: dict[str, list[GrammarRule]] = field(default_factory=dict)
    literals: set[str] = field(default_factory=set)
    signatures: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for rule in self.rules:
            self.by_name.setdefault(rule.lhs, []).append(rule)
            for sym in rule.rhs:
                if isinstance(sym, Lit):
                    self.literals.add(sym.text)

    def param_domains(self, name: str) -> tuple[str, ...]:
        """Display domain for each visible param slot of a nonterminal."""
        return self.signatures.get(name, ())


_WORD = re.compile(r"[A-Za-z_][A-Za-z_0-9']*")


class _Scanner:
    """Token scanner for the rule section."""

    def __init__(self, text: str, line_offsets: list[int]):
        self.text = text
        self.pos = 0
        self.line_offsets = line_offsets

    def line_at(self, pos: int) -> int:
        line = 1
        for off in self.line_offsets:
            if pos >= off:
                line += 1
            else:
                break
        return line

    def skip_ws(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self.pos += 1
            elif ch.isspace():
                self.pos += 1
            else:
                break

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str):
        self.skip_ws()
        if not self.text.startswith(ch, self.pos):
            raise GrammarError(
                f"line {self.line_at(self.pos)}: expected '{ch}', found "
                f"'{self.text[self.pos:self.pos + 10]}'"
            )
        self.pos += len(ch)

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def word(self) -> str | None:
        self.skip_ws()
        m = _WORD.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def word_seq(self) -> str | None:
        """One or more words, joined by single spaces ("noun phrase")."""
        words = []
        while True:
            save = self.pos
            w = self.word()
            if w is None:
                break
            words.append(w)
            save = self.pos
            self.skip_ws()
            nxt = self.text[self.pos : self.pos + 1]
            self.pos = save
            if not nxt or not (nxt.isalpha() or nxt == "_"):
                break
        return " ".join(words) if words else None

    def quoted(self) -> str:
        self.eat('"')
        end = self.text.index('"', self.pos)
        text = self.text[self.pos : end]
        self.pos = end + 1
        return text


def _is_var(word: str) -> bool:
    stripped = word.lstrip("_").rstrip("0123456789")
    return bool(stripped) and stripped.isupper()


def _parse_term(sc: _Scanner) -> Term:
    w = sc.word_seq()
    if w is None:
        raise GrammarError(f"line {sc.line_at(sc.pos)}: expected affix term")
    if " " not in w and _is_var(w):
        return Var(w)
    return Const(w)


def _parse_args(sc: _Scanner) -> tuple[Term, ...]:
    args = [_parse_term(sc)]
    while sc.peek() == ",":
        sc.eat(",")
        args.append(_parse_term(sc))
    return tuple(args)


def _parse_catref(sc: _Scanner) -> CatRef:
    sc.eat("$")
    cat = sc.word()
    if cat is None or cat not in CATEGORY_SIGNATURES:
        raise GrammarError(f"line {sc.line_at(sc.pos)}: unknown category after '$'")
    args: tuple[Term, ...] = ()
    constraints: list[tuple[str, Term]] = []
    if sc.peek() == "(":
        sc.eat("(")
        if sc.peek() not in ")|":
            args = _parse_args(sc)
        if sc.peek() == "|":
            sc.eat("|")
            while True:
                key = sc.word()
                if key not in CONSTRAINT_KEYS:
                    raise GrammarError(
                        f"line {sc.line_at(sc.pos)}: unknown constraint key '{key}'"
                    )
                sc.eat("=")
                constraints.append((key, _parse_term(sc)))
                if sc.peek() != ",":
                    break
                sc.eat(",")
        sc.eat(")")
    sig = CATEGORY_SIGNATURES[cat]
    if len(args) != len(sig):
        raise GrammarError(
            f"line {sc.line_at(sc.pos)}: ${cat} takes {len(sig)} affix args, got {len(args)}"
        )
    return CatRef(cat, args, tuple(constraints))


def _parse_symbol(sc: _Scanner) -> Symbol:
    ch = sc.peek()
    if ch == "$":
        return _parse_catref(sc)
    if ch == '"':
        return Lit(sc.quoted())
    name = sc.word_seq()
    if name is None:
        raise GrammarError(f"line {sc.line_at(sc.pos)}: expected symbol")
    args: tuple[Term, ...] = ()
    if sc.peek() == "(":
        sc.eat("(")
        args = _parse_args(sc)
        sc.eat(")")
    return NtRef(name, args)


def _parse_alternative(sc: _Scanner) -> tuple[Symbol, ...]:
    if sc.peek() == "[":
        sc.eat("[")
        sc.eat("]")
        return ()
    syms = [_parse_symbol(sc)]
    while sc.peek() == ",":
        sc.eat(",")
        syms.append(_parse_symbol(sc))
    return tuple(syms)


def parse_grammar(text: str) -> Grammar:
    line_offsets = [m.end() for m in re.finditer("\n", text)]
    affixes: dict[str, tuple[str, ...]] = {}

    # Header: affix declarations are line-based.
    body_parts = []
    for lineno, raw in enumerate(text.splitlines(keepends=True), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if stripped.startswith("affix "):
            m = re.match(r"affix\s+([A-Z][A-Z0-9]*)\s*=\s*(.*?)\s*\.\s*$", stripped)
            if not m:
                raise GrammarError(f"line {lineno}: malformed affix declaration")
            name, values = m.group(1), m.group(2)
            domain = tuple(v.strip() for v in values.split("|") if v.strip())
            if not domain:
                raise GrammarError(f"line {lineno}: affix {name} has no values")
            affixes[name] = domain
            body_parts.append("\n")
        else:
            body_parts.append(raw)
    body = "".join(body_parts)

    sc = _Scanner(body, line_offsets)
    rules: list[GrammarRule] = []
    while not sc.at_end():
        start = sc.pos
        sc.skip_ws()
        line = sc.line_at(sc.pos)
        lhs = sc.word_seq()
        if lhs is None:
            raise GrammarError(f"line {sc.line_at(sc.pos)}: expected rule")
        params: tuple[Term, ...] = ()
        if sc.peek() == "(":
            sc.eat("(")
            params = _parse_args(sc)
            sc.eat(")")
        sc.eat(":")
        alts = [_parse_alternative(sc)]
        while sc.peek() == "|":
            sc.eat("|")
            alts.append(_parse_alternative(sc))
        sc.eat(";")
        for alt in alts:
            rules.append(GrammarRule(len(rules), lhs, params, alt, line))
        if sc.pos == start:
            raise GrammarError(f"line {line}: parser made no progress")

    if not rules:
        raise GrammarError("empty grammar: no rules, no start symbol")

    grammar = Grammar(affixes, rules, rules[0].lhs)
    _validate(grammar)
    return grammar


def _validate(grammar: Grammar):
    arities: dict[str, tuple[int, int]] = {}
    for rule in grammar.rules:
        sig = (len(rule.params), rule.line)
        prev = arities.setdefault(rule.lhs, sig)
        if prev[0] != sig[0]:
            raise GrammarError(
                f"line {rule.line}: '{rule.lhs}' declared with {sig[0]} params, "
                f"but line {prev[1]} uses {prev[0]}"
            )

    # Visible-slot display domains, taken from the first rule whose param is
    # a variable; constant-only slots infer the domain holding their values.
    for name, nrules in grammar.by_name.items():
        slots = []
        arity = len(nrules[0].params)
        for i in range(arity):
            domain = ""
            hidden = False
            for rule in nrules:
                p = rule.params[i]
                if isinstance(p, Var):
                    domain = p.domain
                    hidden = hidden or p.hidden
                    break
            else:
                values = {r.params[i].value for r in nrules}
                for dom_name, dom_values in grammar.affixes.items():
                    if values <= set(dom_values):
                        domain = dom_name
                        break
                else:
                    domain = "AFFIX"
            if not hidden:
                slots.append(domain)
            else:
                slots.append("_" + domain)
        grammar.signatures[name] = tuple(slots)

    undefined = set()
    for rule in grammar.rules:
        for sym in rule.rhs:
            if isinstance(sym, NtRef):
                if sym.name not in grammar.by_name:
                    undefined.add(sym.name)
                elif len(sym.args) != len(grammar.by_name[sym.name][0].params):
                    raise GrammarError(
                        f"line {rule.line}: reference to '{sym.name}' with "
                        f"{len(sym.args)} args, expected "
                        f"{len(grammar.by_name[sym.name][0].params)}"
                    )
    if undefined:
        names = ", ".join(sorted(undefined))
        raise GrammarError(f"undefined nonterminals: {names}")

    declared = {v for dom in grammar.affixes.values() for v in dom}
    for rule in grammar.rules:
        terms = list(rule.params)
        for sym in rule.rhs:
            if isinstance(sym, (NtRef, CatRef)):
                terms.extend(sym.args)
            if isinstance(sym, CatRef):
                terms.extend(t for k, t in sym.constraints if k not in ("word", "surface"))
        for t in terms:
            if isinstance(t, Var) and t.domain not in grammar.affixes:
                raise GrammarError(
                    f"line {rule.line}: variable {t.name} names no declared affix"
                )
            if isinstance(t, Const) and t.value not in declared:
                raise GrammarError(
                    f"line {rule.line}: affix value '{t.value}' not declared"
                )


def load_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())
