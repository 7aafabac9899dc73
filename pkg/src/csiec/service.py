"""Multi-session chat service and its HTTP front.

The wire format is structured text (documented field by field in
docs/api.md): request and response bodies are UTF-8 ``key=value`` lines
with backslash escaping for newlines, tabs and backslashes inside values.
Shared linguistic resources are loaded once at startup (the server refuses
to start on any malformed data file); the dialog store and per-session
locks are the only shared mutable state, so posts to one session are
processed strictly in arrival order while sessions proceed in parallel.
"""

from __future__ import annotations

import os
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .cr import CrDeps, Persona, load_idioms, load_personas, respond
from .grammar import load_grammar
from .lexicon import load_lexicon
from .nldb import DialogStore, UtteranceRecord, _format as format_record
from .nlml import serialize, to_nlml
from .parser import derivation_trace, parse, tokenize, unknown_tokens
from .resources import data_path
from .worldmodel import load_net


class ServiceError(ValueError):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


@dataclass
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8040
    lexicon_path: str = ""
    grammar_path: str = ""
    net_path: str = ""
    idioms_path: str = ""
    personas_path: str = ""
    store_path: str = "dialog.log"

    PATH_KEYS = ("lexicon_path", "grammar_path", "net_path", "idioms_path",
                 "personas_path", "store_path")

    @classmethod
    def load(cls, config_file: str | None = None, **overrides) -> "ServerConfig":
        """Defaults <- config file <- CSIEC_* environment <- explicit args."""
        cfg = cls()
        if config_file:
            with open(config_file, encoding="utf-8") as fh:
                for lineno, raw in enumerate(fh, 1):
                    line = raw.strip()
                    if not line or line.startswith("#"):
                        continue
                    if "=" not in line:
                        raise ServiceError(400, f"config line {lineno}: not key=value")
                    key, value = (p.strip() for p in line.split("=", 1))
                    if not hasattr(cfg, key):
                        raise ServiceError(400, f"config line {lineno}: unknown key {key}")
                    setattr(cfg, key, int(value) if key == "port" else value)
        for key in ("host", "port", *cls.PATH_KEYS):
            env = os.environ.get(f"CSIEC_{key.upper()}")
            if env is not None:
                setattr(cfg, key, int(env) if key == "port" else env)
        for key, value in overrides.items():
            if value is not None:
                setattr(cfg, key, value)
        return cfg


@dataclass
class Session:
    session_id: str
    persona: Persona
    created: int
    lock: threading.Lock = field(default_factory=threading.Lock)


class ChatService:
    """Loads every resource eagerly and owns the session table."""

    def __init__(self, config: ServerConfig):
        self.config = config
        self.grammar = load_grammar(config.grammar_path or data_path("grammar.cfg"))
        self.lexicon = load_lexicon(config.lexicon_path or data_path("lexicon.txt"))
        self.net = load_net(config.net_path or data_path("semantic_net.txt"))
        self.idioms = load_idioms(config.idioms_path or data_path("idioms.txt"))
        self.personas = load_personas(config.personas_path or data_path("personas.txt"))
        self.store = DialogStore(config.store_path)
        self.deps = CrDeps(self.grammar, self.lexicon, self.net,
                           self.idioms, self.store)
        self._sessions: dict[str, Session] = {}
        self._sessions_lock = threading.Lock()

    # -- operations ---------------------------------------------------------

    def create_session(self, persona_name: str) -> str:
        persona = self.personas.get(persona_name)
        if persona is None:
            names = ", ".join(sorted(self.personas))
            raise ServiceError(400, f"unknown persona '{persona_name}'; "
                                    f"available: {names}")
        session_id = uuid.uuid4().hex
        import time
        session = Session(session_id, persona, int(time.time() * 1000))
        with self._sessions_lock:
            self._sessions[session_id] = session
        return session_id

    def set_persona(self, session_id: str, persona_name: str):
        session = self._session(session_id)
        persona = self.personas.get(persona_name)
        if persona is None:
            raise ServiceError(400, f"unknown persona '{persona_name}'")
        session.persona = persona

    def _session(self, session_id: str) -> Session:
        with self._sessions_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ServiceError(404, f"unknown session '{session_id}'")
        return session

    def post_message(self, session_id: str, text: str) -> dict:
        if not text.strip():
            raise ServiceError(400, "empty message")
        session = self._session(session_id)
        with session.lock:
            reply = respond(text, session_id, session.persona, self.deps)
            records = self.store.history(session_id, 2)
        user, system = records
        out = {"reply": reply,
               "user_turn": str(user.turn),
               "system_turn": str(system.turn)}
        if user.nlml is not None:
            out["nlml"] = user.nlml
        return out

    def get_history(self, session_id: str, last_n: int) -> list[UtteranceRecord]:
        self._session(session_id)
        return self.store.history(session_id, last_n)

    def parse_text(self, text: str) -> dict:
        """NLML plus derivation trace, or a no-parse report."""
        if not text.strip():
            raise ServiceError(400, "empty text")
        tokens = tokenize(text)
        unknown = unknown_tokens(tokens, self.grammar, self.lexicon)
        if unknown:
            return {"error": "no_parse", "unknown": " ".join(unknown)}
        trees = parse(tokens, self.grammar, self.lexicon)
        if not trees:
            return {"error": "no_parse", "unknown": ""}
        top = trees[0]
        return {"nlml": serialize(to_nlml(top)),
                "trace": "\n".join(derivation_trace(top)),
                "parses": str(len(trees))}


# --------------------------------------------------------------------------
# wire format helpers

def encode_fields(fields: list[tuple[str, str]]) -> str:
    lines = []
    for key, value in fields:
        value = (value.replace("\\", "\\\\").replace("\n", "\\n")
                 .replace("\t", "\\t"))
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


def decode_fields(body: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for line in body.splitlines():
        if not line.strip():
            continue
        if "=" not in line:
            raise ServiceError(400, f"malformed body line: {line[:40]!r}")
        key, value = line.split("=", 1)
        chars = []
        i = 0
        while i < len(value):
            if value[i] == "\\" and i + 1 < len(value):
                chars.append({"n": "\n", "t": "\t", "\\": "\\"}.get(
                    value[i + 1], value[i + 1]))
                i += 2
            else:
                chars.append(value[i])
                i += 1
        out[key.strip()] = "".join(chars)
    return out


class _Handler(BaseHTTPRequestHandler):
    service: ChatService

    def log_message(self, *args):
        pass

    def _send(self, status: int, fields: list[tuple[str, str]]):
        body = encode_fields(fields).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "text/plain; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _body_fields(self) -> dict[str, str]:
        length = int(self.headers.get("Content-Length", "0"))
        body = self.rfile.read(length).decode("utf-8")
        return decode_fields(body)

    def do_OPTIONS(self):
        self._send(200, [])

    def do_POST(self):
        try:
            path = urlparse(self.path).path
            fields = self._body_fields()
            if path == "/session":
                sid = self.service.create_session(fields.get("persona", ""))
                self._send(200, [("session_id", sid)])
            elif path == "/message":
                out = self.service.post_message(fields.get("session_id", ""),
                                                fields.get("text", ""))
                self._send(200, list(out.items()))
            elif path == "/parse":
                out = self.service.parse_text(fields.get("text", ""))
                self._send(200, list(out.items()))
            elif path == "/persona":
                self.service.set_persona(fields.get("session_id", ""),
                                         fields.get("persona", ""))
                self._send(200, [("ok", "1")])
            else:
                self._send(404, [("error", f"no such endpoint {path}")])
        except ServiceError as exc:
            self._send(exc.status, [("error", str(exc))])
        except Exception as exc:  # noqa: BLE001 - surface as a 500 report
            self._send(500, [("error", f"{type(exc).__name__}: {exc}")])

    def do_GET(self):
        try:
            url = urlparse(self.path)
            query = {k: v[0] for k, v in parse_qs(url.query).items()}
            if url.path == "/personas":
                fields = [("persona",
                           f"{p.name}|{p.curiosity}|{p.narrativity}|{p.quietness}")
                          for p in self.service.personas.values()]
                self._send(200, fields)
            elif url.path == "/history":
                records = self.service.get_history(
                    query.get("session_id", ""),
                    int(query.get("last_n", "50")))
                fields = [("record", format_record(r).rstrip("\n"))
                          for r in records]
                self._send(200, fields)
            elif url.path == "/health":
                self._send(200, [("ok", "1")])
            else:
                self._send(404, [("error", f"no such endpoint {url.path}")])
        except ServiceError as exc:
            self._send(exc.status, [("error", str(exc))])
        except Exception as exc:  # noqa: BLE001
            self._send(500, [("error", f"{type(exc).__name__}: {exc}")])


def make_server(config: ServerConfig) -> tuple[ThreadingHTTPServer, ChatService]:
    service = ChatService(config)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    httpd = ThreadingHTTPServer((config.host, config.port), handler)
    return httpd, service


def serve(config: ServerConfig):
    httpd, _ = make_server(config)
    host, port = httpd.server_address[:2]
    print(f"csiec server listening on http://{host}:{port}", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
