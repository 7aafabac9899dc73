"""Command line interface: chat, parse, corpus, serve."""

from __future__ import annotations

import argparse
import sys
import tempfile

from .resources import data_path


def _add_config_args(sub):
    sub.add_argument("--config", help="server config file (key=value lines)")
    sub.add_argument("--lexicon", help="lexicon file path")
    sub.add_argument("--grammar", help="grammar file path")
    sub.add_argument("--net", help="semantic net file path")
    sub.add_argument("--idioms", help="idiom table path")
    sub.add_argument("--personas", help="persona file path")
    sub.add_argument("--store", help="dialog log path")


def _config_from(args):
    from .service import ServerConfig
    return ServerConfig.load(
        args.config,
        lexicon_path=args.lexicon,
        grammar_path=args.grammar,
        net_path=args.net,
        idioms_path=args.idioms,
        personas_path=args.personas,
        store_path=args.store,
        host=getattr(args, "host", None),
        port=getattr(args, "port", None),
    )


def cmd_parse(args) -> int:
    from .grammar import load_grammar
    from .lexicon import load_lexicon
    from .nlml import serialize, to_nlml
    from .parser import derivation_trace, parse_text, tokenize, unknown_tokens

    grammar = load_grammar(args.grammar or data_path("grammar.cfg"))
    lexicon = load_lexicon(args.lexicon or data_path("lexicon.txt"))
    unknown = unknown_tokens(tokenize(args.text), grammar, lexicon)
    if unknown:
        print(f"no parse: unknown words: {' '.join(unknown)}")
        return 1
    trees = parse_text(args.text, grammar, lexicon)
    if not trees:
        print("no parse: outside grammar coverage")
        return 1
    top = trees[0]
    print("--- derivation " + "-" * 40)
    for line in derivation_trace(top):
        print(line)
    print("--- NLML " + "-" * 46)
    sys.stdout.write(serialize(to_nlml(top)))
    if len(trees) > 1:
        print(f"({len(trees)} parses; showing the top-ranked one)")
    return 0


def cmd_corpus(args) -> int:
    from .grammar import load_grammar
    from .lexicon import load_lexicon
    from .report import run_and_report

    grammar = load_grammar(args.grammar or data_path("grammar.cfg"))
    lexicon = load_lexicon(args.lexicon or data_path("lexicon.txt"))
    corpus = args.corpus or data_path("corpus.tsv")
    results = run_and_report(corpus, grammar, lexicon, args.report_dir)
    return 0 if all(r.passed for r in results) else 1


def cmd_chat(args) -> int:
    from .service import ChatService, ServiceError

    config = _config_from(args)
    if args.store is None and not config.store_path:
        config.store_path = tempfile.mktemp(suffix=".log", prefix="csiec-chat-")
    service = ChatService(config)
    try:
        session_id = service.create_session(args.persona)
    except ServiceError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    print(f"session {session_id} with persona '{args.persona}' "
          "(empty line or Ctrl-D quits)")
    while True:
        try:
            line = input("you> ").strip()
        except EOFError:
            print()
            break
        if not line:
            break
        out = service.post_message(session_id, line)
        print(f"bot> {out['reply']}")
        if args.show_nlml and "nlml" in out:
            sys.stdout.write(out["nlml"])
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(_config_from(args))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="csiec",
        description="conversational English-grammar engine")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("parse", help="print derivation trace and NLML")
    p.add_argument("text")
    p.add_argument("--grammar")
    p.add_argument("--lexicon")
    p.set_defaults(func=cmd_parse)

    p = subs.add_parser("corpus", help="run a TSV regression corpus")
    p.add_argument("corpus", nargs="?",
                   help="TSV: sentence, complexity, mood, voice "
                        "(default: bundled corpus)")
    p.add_argument("--grammar")
    p.add_argument("--lexicon")
    p.add_argument("--report-dir",
                   help="write results.tsv and summary.png here")
    p.set_defaults(func=cmd_corpus)

    p = subs.add_parser("chat", help="interactive chat loop")
    p.add_argument("--persona", default="curious")
    p.add_argument("--show-nlml", action="store_true",
                   help="print the stored NLML after each parsed turn")
    _add_config_args(p)
    p.set_defaults(func=cmd_chat)

    p = subs.add_parser("serve", help="run the HTTP chat server")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    _add_config_args(p)
    p.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
