"""csiec: a conversational English-grammar engine.

Parses utterances with a feature-constrained chart grammar, serializes
parses as NLML markup, builds a grammatical object model, keeps per-session
dialog history, and generates persona-conditioned replies over HTTP and a
CLI.
"""

from .features import ANY, FeatureBundle, VerbType, unify
from .lexicon import LexEntry, Lexicon, load_lexicon, lookup, save_lexicon
from .grammar import Grammar, GrammarRule, load_grammar, parse_grammar
from .parser import ParseNode, derivation_trace, parse, parse_text, tokenize
from .nlml import NlmlDoc, NlmlNode, parse_nlml, serialize, to_nlml
from .nlom import (
    Sentence,
    SimpleSentence,
    classify_complexity,
    classify_mood,
    classify_voice,
    from_nlml,
    realize,
    unit_text,
)
from .nldb import DialogStore, UtteranceRecord
from .worldmodel import SemanticNet, gloss, hypernyms, load_net
from .cr import Persona, ResponsePlan, invert_person, match_idiom, plan_response, respond

__version__ = "0.1.0"

__all__ = [
    "ANY", "FeatureBundle", "VerbType", "unify",
    "LexEntry", "Lexicon", "load_lexicon", "lookup", "save_lexicon",
    "Grammar", "GrammarRule", "load_grammar", "parse_grammar",
    "ParseNode", "derivation_trace", "parse", "parse_text", "tokenize",
    "NlmlDoc", "NlmlNode", "parse_nlml", "serialize", "to_nlml",
    "Sentence", "SimpleSentence", "classify_complexity", "classify_mood",
    "classify_voice", "from_nlml", "realize", "unit_text",
    "DialogStore", "UtteranceRecord",
    "SemanticNet", "gloss", "hypernyms", "load_net",
    "Persona", "ResponsePlan", "invert_person", "match_idiom",
    "plan_response", "respond",
    "__version__",
]
