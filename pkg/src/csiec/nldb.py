"""Persistent per-session dialog history: an append-only log file.

One record per line, tab-separated::

    session_id <TAB> turn <TAB> speaker <TAB> timestamp_ms <TAB> raw <TAB> nlml

Tabs, newlines and backslashes inside text fields are escaped (``\\t``,
``\\n``, ``\\\\``); a missing NLML (idiom path, parse failure) is an empty
final field.  Reopening a store replays the file into an identical
in-memory index; every append is flushed and fsynced before returning.
"""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass, replace


class StoreError(ValueError):
    pass


NEXT_TURN = -1


@dataclass(frozen=True)
class UtteranceRecord:
    session_id: str
    turn: int
    speaker: str  # "user" | "system"
    raw: str
    nlml: str | None = None
    timestamp: int = 0

    def __post_init__(self):
        if self.speaker not in ("user", "system"):
            raise StoreError(f"bad speaker {self.speaker!r}")


def _escape(text: str) -> str:
    return (text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n"))


def _unescape(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _format(rec: UtteranceRecord) -> str:
    return "\t".join([
        _escape(rec.session_id),
        str(rec.turn),
        rec.speaker,
        str(rec.timestamp),
        _escape(rec.raw),
        _escape(rec.nlml) if rec.nlml is not None else "",
    ]) + "\n"


def _parse_line(line: str, lineno: int) -> UtteranceRecord:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 6:
        raise StoreError(f"log line {lineno}: expected 6 fields, got {len(parts)}")
    sid, turn, speaker, ts, raw, nlml = parts
    return UtteranceRecord(
        session_id=_unescape(sid),
        turn=int(turn),
        speaker=speaker,
        raw=_unescape(raw),
        nlml=_unescape(nlml) if nlml else None,
        timestamp=int(ts),
    )


class DialogStore:
    """Crash-safe append log with an in-memory per-session index.

    Writes to one session are serialized; writes to different sessions may
    interleave.  Readers get consistent snapshots (list copies under the
    same lock that guards appends)."""

    def __init__(self, path):
        self.path = os.fspath(path)
        self._lock = threading.Lock()
        self._sessions: dict[str, list[UtteranceRecord]] = {}
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    rec = _parse_line(line, lineno)
                    self._sessions.setdefault(rec.session_id, []).append(rec)
        for recs in self._sessions.values():
            recs.sort(key=lambda r: r.turn)

    def store_turn(self, rec: UtteranceRecord) -> int:
        """Durably append one record; returns the assigned turn number."""
        with self._lock:
            session = self._sessions.setdefault(rec.session_id, [])
            next_turn = len(session)
            if rec.turn == NEXT_TURN:
                rec = replace(rec, turn=next_turn)
            elif rec.turn != next_turn:
                raise StoreError(
                    f"session {rec.session_id}: turn {rec.turn} out of order "
                    f"(next is {next_turn})")
            if rec.timestamp == 0:
                rec = replace(rec, timestamp=int(time.time() * 1000))
            line = _format(rec)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
            session.append(rec)
            return rec.turn

    def history(self, session_id: str, last_n: int) -> list[UtteranceRecord]:
        """The session's most recent last_n records, in turn order."""
        if last_n <= 0:
            return []
        with self._lock:
            session = self._sessions.get(session_id, [])
            return list(session[-last_n:])

    def session_length(self, session_id: str) -> int:
        with self._lock:
            return len(self._sessions.get(session_id, []))

    def find_mentions(self, session_id: str, lemma: str) -> list[UtteranceRecord]:
        """Records whose NLML mentions the lemma in a word element,
        newest first."""
        from .nlml import parse_nlml

        want = lemma.lower()
        out = []
        with self._lock:
            session = list(self._sessions.get(session_id, []))
        for rec in reversed(session):
            if rec.nlml is None:
                continue
            try:
                doc = parse_nlml(rec.nlml)
            except ValueError:
                continue
            if want in {w.lower() for w in _word_texts(doc)}:
                out.append(rec)
        return out


def _word_texts(doc) -> list[str]:
    words = []

    def visit(node):
        if node.tag == "word" and node.text:
            words.append(node.text)
        for child in node.children:
            visit(child)

    for top in doc.root:
        visit(top)
    return words
