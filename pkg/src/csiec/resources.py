"""Default packaged data files and a loaded-engine bundle."""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .grammar import Grammar, load_grammar
from .lexicon import Lexicon, load_lexicon


def data_path(name: str):
    return files("csiec").joinpath("data").joinpath(name)


DEFAULTS = {
    "lexicon": "lexicon.txt",
    "grammar": "grammar.cfg",
    "net": "semantic_net.txt",
    "idioms": "idioms.txt",
    "personas": "personas.txt",
    "corpus": "corpus.tsv",
}


@dataclass
class Engine:
    """Shared immutable linguistic resources."""

    grammar: Grammar
    lexicon: Lexicon

    @classmethod
    def default(cls) -> "Engine":
        return cls(
            grammar=load_grammar(data_path(DEFAULTS["grammar"])),
            lexicon=load_lexicon(data_path(DEFAULTS["lexicon"])),
        )
