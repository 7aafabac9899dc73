"""Corpus regression runner: per-line pass/fail, TSV results, and a
summary figure rendered alongside the delimited output."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .grammar import Grammar
from .lexicon import Lexicon
from .nlml import to_nlml
from .nlom import classify_complexity, classify_mood, classify_voice, from_nlml
from .parser import parse_text

DIMENSIONS = ("complexity", "mood", "voice")


@dataclass
class CorpusRow:
    line: int
    text: str
    expected: dict[str, str]


@dataclass
class CorpusResult:
    row: CorpusRow
    got: dict[str, str]
    error: str = ""

    @property
    def passed(self) -> bool:
        return not self.error and self.got == self.row.expected

    def describe(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        detail = ""
        if self.error:
            detail = f"  [{self.error}]"
        elif not self.passed:
            diffs = [f"{d}={self.got[d]}(want {self.row.expected[d]})"
                     for d in DIMENSIONS if self.got[d] != self.row.expected[d]]
            detail = "  [" + ", ".join(diffs) + "]"
        return f"{status}  {self.row.text}{detail}"


def load_corpus(path) -> list[CorpusRow]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"corpus line {lineno}: expected 4 tab-separated "
                                 f"columns, got {len(parts)}")
            text, complexity, mood, voice = parts
            rows.append(CorpusRow(lineno, text.strip(), {
                "complexity": complexity.strip(),
                "mood": mood.strip(),
                "voice": voice.strip(),
            }))
    return rows


def run_corpus(rows: list[CorpusRow], grammar: Grammar,
               lexicon: Lexicon) -> list[CorpusResult]:
    results = []
    for row in rows:
        got = {d: "" for d in DIMENSIONS}
        error = ""
        try:
            trees = parse_text(row.text, grammar, lexicon)
            if not trees:
                error = "no parse"
            else:
                sentence = from_nlml(to_nlml(trees[0]))
                got = {
                    "complexity": classify_complexity(sentence),
                    "mood": classify_mood(sentence),
                    "voice": classify_voice(sentence),
                }
        except Exception as exc:  # noqa: BLE001 - report, don't crash the run
            error = f"{type(exc).__name__}: {exc}"
        results.append(CorpusResult(row, got, error))
    return results


def write_results_tsv(results: list[CorpusResult], path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("status\ttext\texpected_complexity\tgot_complexity"
                 "\texpected_mood\tgot_mood\texpected_voice\tgot_voice\terror\n")
        for r in results:
            fh.write("\t".join([
                "PASS" if r.passed else "FAIL",
                r.row.text,
                r.row.expected["complexity"], r.got["complexity"],
                r.row.expected["mood"], r.got["mood"],
                r.row.expected["voice"], r.got["voice"],
                r.error,
            ]) + "\n")


def render_summary_figure(results: list[CorpusResult], path: str):
    """Stacked pass/fail bars per classification dimension plus overall."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = list(DIMENSIONS) + ["overall"]
    passes, fails = [], []
    for dim in DIMENSIONS:
        ok = sum(1 for r in results
                 if not r.error and r.got[dim] == r.row.expected[dim])
        passes.append(ok)
        fails.append(len(results) - ok)
    overall_ok = sum(1 for r in results if r.passed)
    passes.append(overall_ok)
    fails.append(len(results) - overall_ok)

    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    xs = range(len(labels))
    ax.bar(xs, passes, color="#3a7d44", label="pass")
    ax.bar(xs, fails, bottom=passes, color="#b33a3a", label="fail")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels)
    ax.set_ylabel("sentences")
    ax.set_title(f"corpus regression: {overall_ok}/{len(results)} pass")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def run_and_report(corpus_path, grammar: Grammar, lexicon: Lexicon,
                   report_dir: str | None = None,
                   out=print) -> list[CorpusResult]:
    rows = load_corpus(corpus_path)
    results = run_corpus(rows, grammar, lexicon)
    for r in results:
        out(r.describe())
    ok = sum(1 for r in results if r.passed)
    out(f"{ok}/{len(results)} pass")
    if report_dir:
        os.makedirs(report_dir, exist_ok=True)
        write_results_tsv(results, os.path.join(report_dir, "results.tsv"))
        render_summary_figure(results, os.path.join(report_dir, "summary.png"))
        out(f"report written to {report_dir}/results.tsv and {report_dir}/summary.png")
    return results
